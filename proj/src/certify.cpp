#include "flagram/certify.hpp"

#include <cstdint>
#include <cstdio>
#include <sstream>

#include "flagram/error.hpp"

namespace flagram {

RationalMatrix round_matrix(const Eigen::MatrixXd& m, const Integer& denom) {
  const auto n = static_cast<std::size_t>(m.rows());
  RationalMatrix out(n, std::vector<Rational>(n));
  const Rational half(1, 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Rational scaled = exact_rational(m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) * denom + half;
      Integer nearest;
      mpz_fdiv_q(nearest.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
      Rational r(nearest, denom);
      r.canonicalize();
      out[i][j] = r;
      out[j][i] = r;
    }
  }
  return out;
}

std::vector<RationalMatrix> round_to_rational(const FloatSolution& solution, const Integer& denom) {
  if (denom < 1) throw validation_error("rounding denominator must be positive");
  std::vector<RationalMatrix> out;
  for (const auto& m : solution.matrices) out.push_back(round_matrix(m, denom));
  return out;
}

bool verify_psd_exact(const RationalMatrix& m) {
  const std::size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) throw validation_error("matrix is not square");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m[i][j] != m[j][i]) throw validation_error("matrix is not symmetric");
    }
  }
  // Clear denominators; a positive multiple has the same inertia.
  Integer scale = 1;
  for (const auto& row : m) {
    for (const Rational& v : row) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), v.get_den_mpz_t());
  }
  std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Rational v = m[i][j] * scale;
      a[i][j] = v.get_num();
    }
  }
  std::vector<char> active(n, 1);
  Integer previous = 1;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pivot = n;
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k]) continue;
      if (a[k][k] < 0) return false;
      if (pivot == n && a[k][k] > 0) pivot = k;
    }
    if (pivot == n) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (active[i] && active[j] && a[i][j] != 0) return false;
        }
      }
      return true;
    }
    active[pivot] = 0;
    const Integer p = a[pivot][pivot];
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i; j < n; ++j) {
        if (!active[j]) continue;
        Integer v = p * a[i][j] - a[i][pivot] * a[pivot][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), previous.get_mpz_t());
        a[i][j] = v;
        a[j][i] = v;
      }
    }
    previous = p;
  }
  return true;
}

DeltaResult certified_delta(const SdpProblem& problem, const std::vector<RationalMatrix>& matrices) {
  if (matrices.size() != problem.block_dims.size()) {
    throw dimension_error("expected " + std::to_string(problem.block_dims.size()) + " matrices, got " +
                          std::to_string(matrices.size()));
  }
  for (std::size_t t = 0; t < matrices.size(); ++t) {
    if (static_cast<int>(matrices[t].size()) != problem.block_dims[t]) {
      throw dimension_error("matrix " + std::to_string(t + 1) + " has dimension " + std::to_string(matrices[t].size()) +
                            ", expected " + std::to_string(problem.block_dims[t]));
    }
    if (!verify_psd_exact(matrices[t])) {
      throw certification_error("matrix for type " + std::to_string(t + 1) + " (" + problem.block_labels[t] +
                                ") is not positive semidefinite");
    }
  }
  DeltaResult result;
  for (int h = 0; h < problem.constraint_count(); ++h) {
    Rational s = problem.objective[static_cast<std::size_t>(h)];
    for (const BlockEntry& e : problem.constraints[static_cast<std::size_t>(h)]) {
      const Rational& v = matrices[static_cast<std::size_t>(e.block)][static_cast<std::size_t>(e.i)][static_cast<std::size_t>(e.j)];
      s -= e.i == e.j ? Rational(e.value * v) : Rational(2 * e.value * v);
    }
    if (h == 0 || s < result.delta) result.delta = s;
    result.slack.push_back(s);
  }
  return result;
}

Integer ramsey_bound(const Rational& delta, int ell) {
  if (delta <= 0) throw certification_error("delta must be positive to derive a Ramsey bound");
  if (ell < 2) throw validation_error("ell must be at least 2");
  const auto exponent = static_cast<unsigned long>(ell - 1);
  auto fits = [&](const Integer& m) {
    Integer power;
    mpz_pow_ui(power.get_mpz_t(), m.get_mpz_t(), exponent);
    return Rational(power) * delta <= 1;
  };
  if (!fits(1)) return 1;
  Integer lo = 1, hi = 2;
  while (fits(hi)) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    Integer mid = (lo + hi) / 2;
    if (fits(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo + 1;
}

std::string fingerprint(const FlagAlgebra& algebra) {
  std::uint64_t h = 1469598103934665603ull;
  auto feed = [&](std::string_view bytes) {
    for (char c : bytes) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  };
  feed(serialize_problem(algebra.problem));
  for (const CanonicalKey& k : algebra.basis().keys) feed(k.bytes);
  for (const ProductTable& t : algebra.tables) {
    feed(t.sigma->key.bytes);
    for (const Flag& f : t.flags) feed(f.key.bytes);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Certificate certify(const FlagAlgebra& algebra, const SdpProblem& problem, const FloatSolution& solution) {
  if (solution.matrices.size() != problem.block_dims.size()) {
    throw dimension_error("solution has " + std::to_string(solution.matrices.size()) + " blocks, problem has " +
                          std::to_string(problem.block_dims.size()));
  }
  const Rational target = exact_rational(solution.lambda) - Rational(1, 10000);
  std::string failure = "no rounding attempted";
  bool have_best = false;
  Rational best;
  for (unsigned exponent = 20; exponent <= 64; exponent += 4) {
    const Integer denom = pow2(exponent);
    const auto matrices = round_to_rational(solution, denom);
    std::size_t bad = matrices.size();
    for (std::size_t t = 0; t < matrices.size() && bad == matrices.size(); ++t) {
      if (!verify_psd_exact(matrices[t])) bad = t;
    }
    if (bad != matrices.size()) {
      failure = "type " + std::to_string(bad + 1) + " (" + problem.block_labels[bad] + ") not PSD at denominator 2^" +
                std::to_string(exponent);
      continue;
    }
    DeltaResult d = certified_delta(problem, matrices);
    if (!have_best || d.delta > best) best = d.delta;
    have_best = true;
    if (d.delta < target) {
      failure = "delta " + to_fraction_string(d.delta) + " below solver lambda - 1e-4 at denominator 2^" + std::to_string(exponent);
      continue;
    }
    if (d.delta <= 0) {
      throw certification_error("certified delta " + to_fraction_string(d.delta) + " is not positive; no bound follows");
    }
    Certificate c;
    c.fingerprint = fingerprint(algebra);
    c.denominator = denom;
    c.matrices = matrices;
    c.delta = d.delta;
    c.slack = std::move(d.slack);
    c.bound = ramsey_bound(c.delta, algebra.problem.ell);
    return c;
  }
  throw certification_error("rounding failed: " + failure +
                            (have_best ? "; best delta " + to_fraction_string(best) + " (" + std::to_string(best.get_d()) + ")"
                                       : std::string("; no denominator gave PSD blocks")));
}

std::string write_certificate(const Certificate& c) {
  std::ostringstream out;
  out << "flagram-certificate 1\n";
  out << "fingerprint " << c.fingerprint << "\n";
  out << "denominator " << c.denominator.get_str() << "\n";
  out << "blocks " << c.matrices.size() << "\n";
  for (std::size_t t = 0; t < c.matrices.size(); ++t) {
    out << "block " << t + 1 << " " << c.matrices[t].size() << "\n";
    for (const auto& row : c.matrices[t]) {
      for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << to_fraction_string(row[j]);
      out << "\n";
    }
  }
  out << "delta " << to_fraction_string(c.delta) << "\n";
  out << "bound " << c.bound.get_str() << "\n";
  out << "slack " << c.slack.size() << "\n";
  for (const Rational& s : c.slack) out << to_fraction_string(s) << "\n";
  return out.str();
}

Certificate parse_certificate(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  auto next = [&]() -> std::istringstream {
    while (std::getline(in, line)) {
      ++number;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return std::istringstream(line);
    }
    throw format_error(number + 1, "unexpected end of certificate");
  };
  auto expect = [&](std::istringstream& s, const std::string& word) {
    std::string w;
    if (!(s >> w) || w != word) throw format_error(number, "expected '" + word + "'");
  };
  auto rational = [&](const std::string& token) {
    try {
      return parse_rational(token);
    } catch (const std::invalid_argument& e) {
      throw format_error(number, e.what());
    }
  };
  Certificate c;
  {
    auto s = next();
    expect(s, "flagram-certificate");
  }
  {
    auto s = next();
    expect(s, "fingerprint");
    s >> c.fingerprint;
  }
  {
    auto s = next();
    expect(s, "denominator");
    std::string d;
    s >> d;
    c.denominator = rational(d).get_num();
  }
  std::size_t blocks = 0;
  {
    auto s = next();
    expect(s, "blocks");
    if (!(s >> blocks)) throw format_error(number, "expected block count");
  }
  for (std::size_t t = 0; t < blocks; ++t) {
    auto s = next();
    expect(s, "block");
    std::size_t index = 0, dim = 0;
    if (!(s >> index >> dim) || index != t + 1) throw format_error(number, "expected 'block index dimension'");
    RationalMatrix m;
    for (std::size_t i = 0; i < dim; ++i) {
      auto row = next();
      std::vector<Rational> values;
      std::string token;
      while (row >> token) values.push_back(rational(token));
      if (values.size() != dim) throw format_error(number, "expected " + std::to_string(dim) + " entries");
      m.push_back(std::move(values));
    }
    c.matrices.push_back(std::move(m));
  }
  {
    auto s = next();
    expect(s, "delta");
    std::string d;
    s >> d;
    c.delta = rational(d);
  }
  {
    auto s = next();
    expect(s, "bound");
    std::string b;
    s >> b;
    c.bound = rational(b).get_num();
  }
  std::size_t count = 0;
  {
    auto s = next();
    expect(s, "slack");
    if (!(s >> count)) throw format_error(number, "expected slack count");
  }
  for (std::size_t i = 0; i < count; ++i) {
    auto s = next();
    std::string v;
    s >> v;
    c.slack.push_back(rational(v));
  }
  return c;
}

VerifyResult verify_certificate(const Certificate& c, const FlagAlgebra& algebra, const SdpProblem& problem) {
  if (c.fingerprint != fingerprint(algebra)) return {false, "fingerprint does not match the problem"};
  DeltaResult d;
  try {
    d = certified_delta(problem, c.matrices);
  } catch (const Error& e) {
    return {false, e.what()};
  }
  if (d.delta != c.delta) return {false, "recorded delta differs from the recomputed " + to_fraction_string(d.delta)};
  if (d.slack != c.slack) return {false, "recorded slack vector differs from the recomputed one"};
  if (d.delta <= 0) return {false, "delta is not positive"};
  const Integer bound = ramsey_bound(d.delta, algebra.problem.ell);
  if (bound != c.bound) return {false, "recorded bound differs from the recomputed " + bound.get_str()};
  return {true, "certificate verified: R <= " + bound.get_str()};
}

}  // namespace flagram
