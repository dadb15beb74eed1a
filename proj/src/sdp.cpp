#include "flagram/sdp.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <tuple>

#include "flagram/error.hpp"

namespace flagram {

int SdpProblem::total_dimension() const {
  int total = 0;
  for (int d : block_dims) total += d;
  return total;
}

SdpProblem assemble(const FlagAlgebra& algebra) {
  if (algebra.tables.empty()) {
    throw validation_error("no usable types: the problem needs at least one type size between 1 and flag_order - 2");
  }
  SdpProblem sdp;
  const std::size_t m = algebra.basis().size();
  sdp.objective = algebra.objective;
  sdp.constraints.assign(m, {});
  for (std::size_t t = 0; t < algebra.tables.size(); ++t) {
    const ProductTable& table = algebra.tables[t];
    sdp.block_dims.push_back(static_cast<int>(table.dimension()));
    sdp.block_labels.push_back(table.sigma->key.hex());
    for (const auto& [pair, vec] : table.coeffs) {
      for (const auto& [h, value] : vec) {
        sdp.constraints[static_cast<std::size_t>(h)].push_back({static_cast<int>(t), pair.first, pair.second, value});
      }
    }
  }
  for (std::size_t h = 0; h < m; ++h) {
    auto& row = sdp.constraints[h];
    std::sort(row.begin(), row.end(), [](const BlockEntry& a, const BlockEntry& b) {
      return std::tie(a.block, a.i, a.j) < std::tie(b.block, b.i, b.j);
    });
    Integer scale = sdp.objective[h].get_den();
    for (const BlockEntry& e : row) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), e.value.get_den().get_mpz_t());
    sdp.row_scales.push_back(scale);
  }
  return sdp;
}

namespace {

std::string integer_text(const Rational& value) {
  if (value.get_den() != 1) throw validation_error("row scale leaves a fractional SDPA entry");
  return value.get_num().get_str();
}

std::string double_text(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string export_sdpa(const SdpProblem& sdp) {
  const int m = sdp.constraint_count();
  const int blocks = static_cast<int>(sdp.block_dims.size());
  const int slack_block = blocks + 1;
  std::ostringstream out;
  out << "* flagram semidefinite program: " << m << " graphs, " << blocks << " types\n";
  for (int b = 0; b < blocks; ++b) out << "* block " << b + 1 << " type " << sdp.block_labels[static_cast<std::size_t>(b)] << "\n";
  for (int i = 0; i < m; ++i) out << "* row_scale " << i + 1 << " " << sdp.row_scales[static_cast<std::size_t>(i)].get_str() << "\n";
  out << m << "\n" << blocks + 1 << "\n";
  for (int d : sdp.block_dims) out << d << " ";
  out << -(m + 1) << "\n";
  for (int i = 0; i < m; ++i) {
    const Rational scaled = sdp.objective[static_cast<std::size_t>(i)] * sdp.row_scales[static_cast<std::size_t>(i)];
    out << (i ? " " : "") << integer_text(scaled);
  }
  out << "\n";
  out << "0 " << slack_block << " " << m + 1 << " " << m + 1 << " 1\n";
  for (int i = 0; i < m; ++i) {
    const Integer& d = sdp.row_scales[static_cast<std::size_t>(i)];
    for (const BlockEntry& e : sdp.constraints[static_cast<std::size_t>(i)]) {
      out << i + 1 << " " << e.block + 1 << " " << e.i + 1 << " " << e.j + 1 << " " << integer_text(e.value * d) << "\n";
    }
    out << i + 1 << " " << slack_block << " " << i + 1 << " " << i + 1 << " " << d.get_str() << "\n";
    out << i + 1 << " " << slack_block << " " << m + 1 << " " << m + 1 << " " << d.get_str() << "\n";
  }
  return out.str();
}

namespace {

struct TextLine {
  int number;
  std::vector<std::string> tokens;
};

std::vector<std::string> split_tokens(std::string text) {
  for (char& c : text) {
    if (c == ',' || c == '{' || c == '}' || c == '(' || c == ')') c = ' ';
  }
  std::istringstream in(text);
  std::vector<std::string> tokens;
  std::string t;
  while (in >> t) tokens.push_back(t);
  return tokens;
}

Rational exact_number(const std::string& token, int line) {
  std::string s = token;
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.erase(0, 1);
  }
  auto dot = s.find('.');
  std::string whole = s.substr(0, dot);
  std::string frac = dot == std::string::npos ? "" : s.substr(dot + 1);
  auto digits = [](const std::string& d) { return std::all_of(d.begin(), d.end(), [](char c) { return c >= '0' && c <= '9'; }); };
  if ((whole.empty() && frac.empty()) || !digits(whole) || !digits(frac)) {
    throw format_error(line, "expected a number, got '" + token + "'");
  }
  Integer num(whole.empty() ? "0" : whole);
  Integer den = 1;
  for (char c : frac) {
    num = num * 10 + (c - '0');
    den *= 10;
  }
  Rational r(negative ? Integer(-num) : num, den);
  r.canonicalize();
  return r;
}

int exact_int(const std::string& token, int line) {
  Rational r = exact_number(token, line);
  if (r.get_den() != 1 || !r.get_num().fits_sint_p()) throw format_error(line, "expected an integer, got '" + token + "'");
  return static_cast<int>(r.get_num().get_si());
}

}  // namespace

SdpProblem parse_sdpa(std::string_view text) {
  SdpProblem sdp;
  std::vector<std::pair<int, std::string>> labels;
  std::vector<std::pair<int, Integer>> scales;
  std::vector<TextLine> lines;
  {
    std::istringstream in{std::string(text)};
    std::string raw;
    int number = 0;
    bool header = true;
    while (std::getline(in, raw)) {
      ++number;
      if (header && !raw.empty() && (raw[0] == '*' || raw[0] == '"')) {
        std::istringstream c(raw.substr(1));
        std::string word;
        c >> word;
        if (word == "block") {
          int b;
          std::string kw, label;
          if (c >> b >> kw >> label) labels.emplace_back(b, label);
        } else if (word == "row_scale") {
          int i;
          std::string d;
          if (c >> i >> d) scales.emplace_back(i, Integer(d));
        }
        continue;
      }
      header = false;
      auto tokens = split_tokens(raw);
      if (!tokens.empty()) lines.push_back({number, std::move(tokens)});
    }
  }
  if (lines.size() < 4) throw format_error(lines.empty() ? 1 : lines.back().number, "truncated SDPA header");
  const int m = exact_int(lines[0].tokens.at(0), lines[0].number);
  const int nblocks = exact_int(lines[1].tokens.at(0), lines[1].number);
  if (m < 1 || nblocks < 2) throw format_error(lines[0].number, "expected at least one constraint and two blocks");
  if (static_cast<int>(lines[2].tokens.size()) != nblocks) throw format_error(lines[2].number, "block size count mismatch");
  for (int b = 0; b < nblocks - 1; ++b) {
    int d = exact_int(lines[2].tokens[static_cast<std::size_t>(b)], lines[2].number);
    if (d <= 0) throw format_error(lines[2].number, "matrix blocks must have positive size");
    sdp.block_dims.push_back(d);
  }
  if (exact_int(lines[2].tokens.back(), lines[2].number) != -(m + 1)) {
    throw dimension_error("slack block must be diagonal of size " + std::to_string(m + 1));
  }
  if (static_cast<int>(lines[3].tokens.size()) != m) throw format_error(lines[3].number, "expected " + std::to_string(m) + " right-hand sides");

  sdp.row_scales.assign(static_cast<std::size_t>(m), Integer(1));
  for (auto& [i, d] : scales) {
    if (i < 1 || i > m || d <= 0) throw format_error(0, "bad row_scale comment");
    sdp.row_scales[static_cast<std::size_t>(i - 1)] = d;
  }
  sdp.block_labels.assign(sdp.block_dims.size(), "");
  for (auto& [b, label] : labels) {
    if (b >= 1 && b <= static_cast<int>(sdp.block_dims.size())) sdp.block_labels[static_cast<std::size_t>(b - 1)] = label;
  }
  for (int i = 0; i < m; ++i) {
    sdp.objective.push_back(exact_number(lines[3].tokens[static_cast<std::size_t>(i)], lines[3].number) /
                            sdp.row_scales[static_cast<std::size_t>(i)]);
  }
  sdp.constraints.assign(static_cast<std::size_t>(m), {});
  const int slack_block = nblocks;
  for (std::size_t k = 4; k < lines.size(); ++k) {
    const TextLine& line = lines[k];
    if (line.tokens.size() != 5) throw format_error(line.number, "expected 'matno block i j value'");
    const int matno = exact_int(line.tokens[0], line.number);
    const int block = exact_int(line.tokens[1], line.number);
    int i = exact_int(line.tokens[2], line.number);
    int j = exact_int(line.tokens[3], line.number);
    const Rational value = exact_number(line.tokens[4], line.number);
    if (matno < 0 || matno > m || block < 1 || block > nblocks) throw format_error(line.number, "entry index out of range");
    if (i > j) std::swap(i, j);
    if (block == slack_block) {
      if (i != j || i < 1 || i > m + 1) throw format_error(line.number, "slack block entries must be diagonal");
      if (matno == 0) {
        if (i != m + 1 || value != 1) throw format_error(line.number, "only lambda may appear in the objective");
      } else {
        const Integer& d = sdp.row_scales[static_cast<std::size_t>(matno - 1)];
        if ((i != matno && i != m + 1) || value != d) throw format_error(line.number, "unexpected slack coefficient");
      }
      continue;
    }
    if (matno == 0) throw format_error(line.number, "matrix blocks may not appear in the objective");
    const int dim = sdp.block_dims[static_cast<std::size_t>(block - 1)];
    if (i < 1 || j > dim) throw dimension_error("line " + std::to_string(line.number) + ": entry outside block " + std::to_string(block));
    sdp.constraints[static_cast<std::size_t>(matno - 1)].push_back(
        {block - 1, i - 1, j - 1, value / sdp.row_scales[static_cast<std::size_t>(matno - 1)]});
  }
  for (auto& row : sdp.constraints) {
    std::sort(row.begin(), row.end(), [](const BlockEntry& a, const BlockEntry& b) {
      return std::tie(a.block, a.i, a.j) < std::tie(b.block, b.i, b.j);
    });
  }
  return sdp;
}

std::vector<double> float_slack(const SdpProblem& sdp, const std::vector<Eigen::MatrixXd>& matrices) {
  std::vector<double> slack;
  for (int h = 0; h < sdp.constraint_count(); ++h) {
    double v = sdp.objective[static_cast<std::size_t>(h)].get_d();
    for (const BlockEntry& e : sdp.constraints[static_cast<std::size_t>(h)]) {
      const auto& M = matrices[static_cast<std::size_t>(e.block)];
      const double c = e.value.get_d();
      v -= e.i == e.j ? c * M(e.i, e.i) : c * (M(e.i, e.j) + M(e.j, e.i));
    }
    slack.push_back(v);
  }
  return slack;
}

std::string write_solution(const SdpProblem& sdp, const FloatSolution& sol) {
  const int m = sdp.constraint_count();
  const int blocks = static_cast<int>(sdp.block_dims.size());
  std::ostringstream out;
  for (int i = 0; i < m; ++i) out << (i ? " " : "") << double_text(sol.y[static_cast<std::size_t>(i)]);
  out << "\n";
  // Dual slack Z = sum_i y_i A_i - C.
  std::vector<Eigen::MatrixXd> z;
  for (int d : sdp.block_dims) z.push_back(Eigen::MatrixXd::Zero(d, d));
  double y_sum = 0;
  for (int h = 0; h < m; ++h) {
    const double y = sol.y[static_cast<std::size_t>(h)];
    y_sum += y;
    for (const BlockEntry& e : sdp.constraints[static_cast<std::size_t>(h)]) {
      z[static_cast<std::size_t>(e.block)](e.i, e.j) += y * e.value.get_d();
      if (e.i != e.j) z[static_cast<std::size_t>(e.block)](e.j, e.i) += y * e.value.get_d();
    }
  }
  for (int b = 0; b < blocks; ++b) {
    for (int i = 0; i < sdp.block_dims[static_cast<std::size_t>(b)]; ++i) {
      for (int j = i; j < sdp.block_dims[static_cast<std::size_t>(b)]; ++j) {
        if (z[static_cast<std::size_t>(b)](i, j) != 0) {
          out << "1 " << b + 1 << " " << i + 1 << " " << j + 1 << " " << double_text(z[static_cast<std::size_t>(b)](i, j)) << "\n";
        }
      }
    }
  }
  for (int i = 0; i < m; ++i) out << "1 " << blocks + 1 << " " << i + 1 << " " << i + 1 << " " << double_text(sol.y[static_cast<std::size_t>(i)]) << "\n";
  out << "1 " << blocks + 1 << " " << m + 1 << " " << m + 1 << " " << double_text(y_sum - 1) << "\n";
  for (int b = 0; b < blocks; ++b) {
    const auto& M = sol.matrices[static_cast<std::size_t>(b)];
    for (int i = 0; i < M.rows(); ++i) {
      for (int j = i; j < M.cols(); ++j) {
        if (M(i, j) != 0) out << "2 " << b + 1 << " " << i + 1 << " " << j + 1 << " " << double_text(M(i, j)) << "\n";
      }
    }
  }
  for (int i = 0; i < m; ++i) out << "2 " << blocks + 1 << " " << i + 1 << " " << i + 1 << " " << double_text(sol.slack[static_cast<std::size_t>(i)]) << "\n";
  out << "2 " << blocks + 1 << " " << m + 1 << " " << m + 1 << " " << double_text(sol.lambda) << "\n";
  return out.str();
}

namespace {

double float_token(const std::string& token, int line) {
  const char* begin = token.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') throw format_error(line, "expected a number, got '" + token + "'");
  return v;
}

int int_token(const std::string& token, int line) {
  char* end = nullptr;
  long v = std::strtol(token.c_str(), &end, 10);
  if (end == token.c_str() || *end != '\0') throw format_error(line, "expected an integer, got '" + token + "'");
  return static_cast<int>(v);
}

}  // namespace

FloatSolution parse_solution(std::string_view text, const SdpProblem& sdp) {
  const int m = sdp.constraint_count();
  const int blocks = static_cast<int>(sdp.block_dims.size());
  FloatSolution sol;
  for (int d : sdp.block_dims) sol.matrices.push_back(Eigen::MatrixXd::Zero(d, d));
  sol.slack.assign(static_cast<std::size_t>(m), 0.0);
  std::istringstream in{std::string(text)};
  std::string raw;
  int number = 0;
  bool have_y = false;
  while (std::getline(in, raw)) {
    ++number;
    auto tokens = split_tokens(raw);
    if (tokens.empty()) continue;
    if (!have_y) {
      if (static_cast<int>(tokens.size()) != m) {
        throw format_error(number, "expected " + std::to_string(m) + " dual values, found " + std::to_string(tokens.size()));
      }
      for (const auto& t : tokens) sol.y.push_back(float_token(t, number));
      have_y = true;
      continue;
    }
    if (tokens.size() != 5) throw format_error(number, "expected 'matno block i j value'");
    const int matno = int_token(tokens[0], number);
    const int block = int_token(tokens[1], number);
    int i = int_token(tokens[2], number);
    int j = int_token(tokens[3], number);
    const double value = float_token(tokens[4], number);
    if (matno != 1 && matno != 2) throw format_error(number, "matno must be 1 or 2");
    if (block < 1 || block > blocks + 1) {
      throw dimension_error("line " + std::to_string(number) + ": block " + std::to_string(block) + " does not exist (problem has " +
                            std::to_string(blocks + 1) + ")");
    }
    if (i > j) std::swap(i, j);
    const int dim = block == blocks + 1 ? m + 1 : sdp.block_dims[static_cast<std::size_t>(block - 1)];
    if (i < 1 || j > dim) {
      throw dimension_error("line " + std::to_string(number) + ": entry (" + std::to_string(i) + "," + std::to_string(j) +
                            ") outside block " + std::to_string(block) + " of size " + std::to_string(dim));
    }
    if (matno == 1) continue;
    if (block == blocks + 1) {
      if (i != j) throw format_error(number, "off-diagonal entry in the diagonal block");
      if (i == m + 1) {
        sol.lambda = value;
      } else {
        sol.slack[static_cast<std::size_t>(i - 1)] = value;
      }
    } else {
      auto& M = sol.matrices[static_cast<std::size_t>(block - 1)];
      M(i - 1, j - 1) = value;
      M(j - 1, i - 1) = value;
    }
  }
  if (!have_y) throw format_error(number + 1, "missing dual vector");
  sol.status = "imported";
  return sol;
}

}  // namespace flagram
