#include "flagram/model.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "flagram/error.hpp"

namespace flagram {

// ---------------------------------------------------------------------------
// ColoredGraph

ColoredGraph::ColoredGraph(int order, Color fill)
    : order_(order), colors_(static_cast<std::size_t>(order * order), fill) {
  for (int v = 0; v < order; ++v) colors_[static_cast<std::size_t>(v * order + v)] = kNonEdge;
}

void ColoredGraph::set_color(int u, int v, Color c) {
  colors_[static_cast<std::size_t>(u * order_ + v)] = c;
  colors_[static_cast<std::size_t>(v * order_ + u)] = c;
}

ColoredGraph ColoredGraph::induced(std::span<const int> vertices) const {
  const int n = static_cast<int>(vertices.size());
  ColoredGraph h(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) h.set_color(i, j, color(vertices[i], vertices[j]));
  }
  return h;
}

ColoredGraph ColoredGraph::recolored(std::span<const Color> color_map) const {
  ColoredGraph h(order_);
  for (int i = 0; i < order_; ++i) {
    for (int j = i + 1; j < order_; ++j) h.set_color(i, j, color_map[color(i, j)]);
  }
  return h;
}

ColoredGraph ColoredGraph::extended(std::span<const Color> colors) const {
  ColoredGraph h(order_ + 1);
  for (int i = 0; i < order_; ++i) {
    for (int j = i + 1; j < order_; ++j) h.set_color(i, j, color(i, j));
    h.set_color(i, order_, colors[static_cast<std::size_t>(i)]);
  }
  return h;
}

ColoredGraph ColoredGraph::cloned(int v) const {
  std::vector<Color> row(static_cast<std::size_t>(order_));
  for (int u = 0; u < order_; ++u) row[static_cast<std::size_t>(u)] = u == v ? kNonEdge : color(u, v);
  return extended(row);
}

bool ColoredGraph::has_non_edge() const {
  for (int i = 0; i < order_; ++i) {
    for (int j = i + 1; j < order_; ++j) {
      if (color(i, j) == kNonEdge) return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Admissibility

bool is_blowup_consistent(const ColoredGraph& g) {
  const int n = g.order();
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (g.color(u, v) != kNonEdge) continue;
      for (int w = 0; w < n; ++w) {
        if (w != u && w != v && g.color(u, w) != g.color(v, w)) return false;
      }
    }
  }
  return true;
}

namespace {

// Pattern vertices ordered so that each one (after the first of its
// component) is adjacent to an earlier one whenever possible.
std::vector<int> search_order(const PlainGraph& pattern, const std::vector<std::vector<int>>& adj) {
  const int n = pattern.order;
  std::vector<int> order;
  std::vector<char> placed(static_cast<std::size_t>(n), 0);
  while (static_cast<int>(order.size()) < n) {
    int best = -1;
    std::pair<int, int> best_score{-1, -1};
    for (int v = 0; v < n; ++v) {
      if (placed[static_cast<std::size_t>(v)]) continue;
      int links = 0;
      for (int w : adj[static_cast<std::size_t>(v)]) links += placed[static_cast<std::size_t>(w)];
      std::pair<int, int> score{links, static_cast<int>(adj[static_cast<std::size_t>(v)].size())};
      if (score > best_score) {
        best_score = score;
        best = v;
      }
    }
    placed[static_cast<std::size_t>(best)] = 1;
    order.push_back(best);
  }
  return order;
}

}  // namespace

std::optional<std::vector<int>> find_mono_copy(const ColoredGraph& g, const PlainGraph& pattern,
                                               Color color) {
  const int n = g.order();
  const int p = pattern.order;

  std::vector<std::vector<int>> adj(static_cast<std::size_t>(p));
  for (auto [u, v] : pattern.edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  // Isolated pattern vertices are placeholders and stay unmapped (-1).
  const auto active = std::count_if(adj.begin(), adj.end(), [](const auto& a) { return !a.empty(); });
  if (active > n) return std::nullopt;
  std::vector<int> degree_in_g(static_cast<std::size_t>(n), 0);
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u != v && g.color(u, v) == color) ++degree_in_g[static_cast<std::size_t>(u)];
    }
  }

  const std::vector<int> order = search_order(pattern, adj);
  std::vector<int> image(static_cast<std::size_t>(p), -1);
  std::vector<char> used(static_cast<std::size_t>(n), 0);

  auto extend = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == order.size()) return true;
    const int pv = order[depth];
    const auto& nbrs = adj[static_cast<std::size_t>(pv)];
    if (nbrs.empty()) return self(self, depth + 1);
    for (int gv = 0; gv < n; ++gv) {
      if (used[static_cast<std::size_t>(gv)]) continue;
      if (degree_in_g[static_cast<std::size_t>(gv)] < static_cast<int>(nbrs.size())) continue;
      bool fits = true;
      for (int pw : nbrs) {
        int gw = image[static_cast<std::size_t>(pw)];
        if (gw >= 0 && g.color(gv, gw) != color) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;
      image[static_cast<std::size_t>(pv)] = gv;
      used[static_cast<std::size_t>(gv)] = 1;
      if (self(self, depth + 1)) return true;
      used[static_cast<std::size_t>(gv)] = 0;
      image[static_cast<std::size_t>(pv)] = -1;
    }
    return false;
  };
  if (extend(extend, 0)) return image;
  return std::nullopt;
}

bool contains_mono_copy(const ColoredGraph& g, const PlainGraph& pattern, Color color) {
  return find_mono_copy(g, pattern, color).has_value();
}

std::vector<int> class_representatives(const ColoredGraph& g) {
  std::vector<int> reps;
  for (int v = 0; v < g.order(); ++v) {
    bool fresh = std::none_of(reps.begin(), reps.end(),
                              [&](int r) { return g.color(r, v) == kNonEdge; });
    if (fresh) reps.push_back(v);
  }
  return reps;
}

bool is_admissible(const ColoredGraph& g, const RamseyProblem& problem) {
  if (!is_blowup_consistent(g)) return false;
  // A monochromatic copy inside the blow-up is harmless when two of its
  // vertices share a class, so only copies in the quotient count.
  const auto reps = class_representatives(g);
  const ColoredGraph q = g.induced(reps);
  for (int i = 0; i < problem.colors; ++i) {
    if (contains_mono_copy(q, problem.forbidden[static_cast<std::size_t>(i)],
                           static_cast<Color>(i + 1))) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Canonical labeling

namespace {

// Iterated neighborhood-color refinement. Cells are numbered by rank of
// their signature, so numbering is isomorphism-invariant; labeled vertices
// keep singleton cells 0..labeled-1.
std::vector<int> refine(const ColoredGraph& g, int labeled) {
  const int n = g.order();
  std::vector<int> cell(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) cell[static_cast<std::size_t>(v)] = std::min(v, labeled);
  int cells = std::min(n, labeled + (n > labeled ? 1 : 0));
  std::vector<std::vector<int>> signature(static_cast<std::size_t>(n));
  while (true) {
    for (int v = 0; v < n; ++v) {
      auto& sig = signature[static_cast<std::size_t>(v)];
      sig.clear();
      for (int w = 0; w < n; ++w) {
        if (w != v) sig.push_back(cell[static_cast<std::size_t>(w)] * 256 + g.color(v, w));
      }
      std::sort(sig.begin(), sig.end());
      sig.insert(sig.begin(), cell[static_cast<std::size_t>(v)]);
    }
    std::vector<std::vector<int>> distinct = signature;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (static_cast<int>(distinct.size()) == cells) break;
    cells = static_cast<int>(distinct.size());
    for (int v = 0; v < n; ++v) {
      cell[static_cast<std::size_t>(v)] = static_cast<int>(
          std::lower_bound(distinct.begin(), distinct.end(), signature[static_cast<std::size_t>(v)]) -
          distinct.begin());
    }
  }
  return cell;
}

// Twin classes: u and w are twins when they see every other vertex in the
// same color. Swapping twins is an automorphism.
std::vector<int> twin_classes(const ColoredGraph& g) {
  const int n = g.order();
  std::vector<int> twin(static_cast<std::size_t>(n));
  std::iota(twin.begin(), twin.end(), 0);
  for (int u = 0; u < n; ++u) {
    if (twin[static_cast<std::size_t>(u)] != u) continue;
    for (int w = u + 1; w < n; ++w) {
      bool same = true;
      for (int x = 0; x < n && same; ++x) {
        if (x != u && x != w && g.color(u, x) != g.color(w, x)) same = false;
      }
      if (same) twin[static_cast<std::size_t>(w)] = u;
    }
  }
  return twin;
}

struct LabelingSearch {
  const ColoredGraph& g;
  int n;
  int labeled;
  std::vector<int> cell;
  std::vector<int> position_cell;
  std::vector<int> twin;
  std::string best;
  std::vector<int> best_order;
  bool have_best = false;
  std::vector<int> order;
  std::vector<char> used;
  std::string current;

  LabelingSearch(const ColoredGraph& graph, int fixed)
      : g(graph), n(graph.order()), labeled(fixed), cell(refine(graph, fixed)), twin(twin_classes(graph)) {
    std::vector<int> sorted = cell;
    std::sort(sorted.begin(), sorted.end());
    position_cell = sorted;
    used.assign(static_cast<std::size_t>(n), 0);
  }

  void run() { search(0, false); }

  void search(int p, bool less) {
    if (p == n) {
      if (!have_best || less) {
        best = current;
        best_order = order;
        have_best = true;
      }
      return;
    }
    const std::size_t block = static_cast<std::size_t>(p) * static_cast<std::size_t>(p - 1 < 0 ? 0 : p - 1) / 2;
    std::vector<int> tried_twins;
    for (int v = 0; v < n; ++v) {
      if (used[static_cast<std::size_t>(v)] || cell[static_cast<std::size_t>(v)] != position_cell[static_cast<std::size_t>(p)]) {
        continue;
      }
      const int t = twin[static_cast<std::size_t>(v)];
      if (std::find(tried_twins.begin(), tried_twins.end(), t) != tried_twins.end()) continue;
      tried_twins.push_back(t);

      for (int i = 0; i < p; ++i) current.push_back(static_cast<char>(g.color(order[static_cast<std::size_t>(i)], v)));
      bool child_less = less;
      bool prune = false;
      if (have_best && !less) {
        int cmp = current.compare(block, static_cast<std::size_t>(p), best, block, static_cast<std::size_t>(p));
        if (cmp > 0) prune = true;
        if (cmp < 0) child_less = true;
      }
      if (!prune) {
        order.push_back(v);
        used[static_cast<std::size_t>(v)] = 1;
        search(p + 1, child_less);
        used[static_cast<std::size_t>(v)] = 0;
        order.pop_back();
      }
      current.resize(block);
    }
  }
};

struct CanonicalResult {
  std::string pairs;
  std::vector<int> order;
  std::size_t permutation = 0;
};

CanonicalResult canonicalize(const ColoredGraph& g, std::span<const ColorPermutation> permutations,
                             int labeled) {
  CanonicalResult result;
  bool first = true;
  for (std::size_t k = 0; k < permutations.size(); ++k) {
    const ColoredGraph h = g.recolored(permutations[k]);
    LabelingSearch search(h, labeled);
    search.run();
    if (first || search.best < result.pairs) {
      result.pairs = search.best;
      result.order = search.best_order;
      result.permutation = k;
      first = false;
    }
  }
  return result;
}

std::vector<ColorPermutation> identity_only(const ColoredGraph& g) {
  int max_color = 0;
  for (int i = 0; i < g.order(); ++i) {
    for (int j = i + 1; j < g.order(); ++j) max_color = std::max<int>(max_color, g.color(i, j));
  }
  ColorPermutation id(static_cast<std::size_t>(max_color + 1));
  std::iota(id.begin(), id.end(), Color{0});
  return {id};
}

}  // namespace

CanonicalKey canonical_key(const ColoredGraph& g, std::span<const ColorPermutation> permutations,
                           int labeled) {
  labeled = std::min(labeled, g.order());
  std::vector<ColorPermutation> fallback;
  if (permutations.empty()) {
    fallback = identity_only(g);
    permutations = fallback;
  }
  CanonicalResult r = canonicalize(g, permutations, labeled);
  CanonicalKey key;
  key.bytes.reserve(r.pairs.size() + 2);
  key.bytes.push_back(static_cast<char>(g.order()));
  key.bytes.push_back(static_cast<char>(labeled));
  key.bytes += r.pairs;
  return key;
}

ColoredGraph canonical_form(const ColoredGraph& g, std::span<const ColorPermutation> permutations,
                            int labeled) {
  return graph_from_key(canonical_key(g, permutations, labeled));
}

ColoredGraph graph_from_key(const CanonicalKey& key) {
  if (key.bytes.size() < 2) throw std::invalid_argument("canonical key too short");
  const int n = static_cast<unsigned char>(key.bytes[0]);
  const std::size_t expected = 2 + static_cast<std::size_t>(n * (n - 1) / 2);
  if (key.bytes.size() != expected) throw std::invalid_argument("canonical key has wrong length");
  ColoredGraph g(n);
  std::size_t pos = 2;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) g.set_color(i, j, static_cast<Color>(key.bytes[pos++]));
  }
  return g;
}

std::string CanonicalKey::hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (char c : bytes) {
    auto b = static_cast<unsigned char>(c);
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 15]);
  }
  return out;
}

CanonicalKey CanonicalKey::from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw std::invalid_argument("odd-length hex key");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("bad hex digit");
  };
  CanonicalKey key;
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    key.bytes.push_back(static_cast<char>(nibble(hex[i]) * 16 + nibble(hex[i + 1])));
  }
  return key;
}

Rational quotient_density_bound(const ColoredGraph& g, int ell) {
  if (g.has_non_edge()) {
    throw validation_error("quotient coloring must not contain non-edges (color 0 pairs)");
  }
  if (g.order() < 1) throw validation_error("quotient coloring must have at least one vertex");
  if (ell < 2) throw validation_error("ell must be at least 2");
  Integer denom;
  mpz_ui_pow_ui(denom.get_mpz_t(), static_cast<unsigned long>(g.order()),
                static_cast<unsigned long>(ell - 1));
  return Rational(Integer(1), denom);
}

// ---------------------------------------------------------------------------
// RamseyProblem

namespace {

CanonicalKey pattern_key(const PlainGraph& p) {
  ColoredGraph g(p.order);
  for (auto [u, v] : p.edges) g.set_color(u, v, 1);
  return canonical_key(g, {});
}

}  // namespace

void RamseyProblem::validate() const {
  if (colors < 1) throw validation_error("at least one color is required");
  if (colors > 200) throw validation_error("too many colors");
  if (static_cast<int>(forbidden.size()) != colors) {
    throw validation_error("expected one forbidden graph per color (" + std::to_string(colors) +
                           "), got " + std::to_string(forbidden.size()));
  }
  for (int i = 0; i < colors; ++i) {
    const auto& f = forbidden[static_cast<std::size_t>(i)];
    if (f.edges.empty()) {
      throw validation_error("forbidden graph for color " + std::to_string(i + 1) + " has no edges");
    }
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : f.edges) {
      if (u < 0 || v < 0 || u >= f.order || v >= f.order || u == v) {
        throw validation_error("invalid edge in forbidden graph for color " + std::to_string(i + 1));
      }
      if (!seen.insert(std::minmax(u, v)).second) {
        throw validation_error("duplicate edge in forbidden graph for color " + std::to_string(i + 1));
      }
    }
  }
  std::vector<int> owner(static_cast<std::size_t>(colors + 1), -1);
  for (std::size_t c = 0; c < colorblind_classes.size(); ++c) {
    const auto& cls = colorblind_classes[c];
    if (cls.empty()) throw validation_error("empty color-blind class");
    for (int col : cls) {
      if (col < 1 || col > colors) {
        throw validation_error("color-blind class mentions unknown color " + std::to_string(col));
      }
      if (owner[static_cast<std::size_t>(col)] >= 0) {
        throw validation_error("color " + std::to_string(col) + " appears in two color-blind classes");
      }
      owner[static_cast<std::size_t>(col)] = static_cast<int>(c);
    }
    const CanonicalKey first = pattern_key(forbidden[static_cast<std::size_t>(cls.front() - 1)]);
    for (int col : cls) {
      if (pattern_key(forbidden[static_cast<std::size_t>(col - 1)]) != first) {
        throw validation_error("colors in a color-blind class must forbid isomorphic graphs (color " +
                               std::to_string(col) + ")");
      }
    }
  }
  if (flag_order < 1) throw validation_error("flag_order must be positive");
  if (flag_order > 12) throw validation_error("flag_order above 12 is not supported");
  if (ell < 2 || ell > flag_order) throw validation_error("ell must satisfy 2 <= ell <= flag_order");
  for (int s : type_sizes) {
    if (s < 0 || s > flag_order - 2 || (flag_order - s) % 2 != 0) {
      throw validation_error("type size " + std::to_string(s) +
                             " must satisfy 0 <= s <= flag_order - 2 and s = flag_order (mod 2)");
    }
  }
}

std::vector<int> RamseyProblem::effective_type_sizes() const {
  if (!type_sizes.empty()) {
    std::vector<int> sizes = type_sizes;
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
    return sizes;
  }
  std::vector<int> sizes;
  for (int s = flag_order - 2; s >= 1; s -= 2) sizes.push_back(s);
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

std::vector<ColorPermutation> RamseyProblem::color_permutations() const {
  ColorPermutation id(static_cast<std::size_t>(colors + 1));
  std::iota(id.begin(), id.end(), Color{0});
  std::vector<ColorPermutation> result{id};
  for (const auto& cls : colorblind_classes) {
    if (cls.size() < 2) continue;
    std::vector<int> sorted = cls;
    std::sort(sorted.begin(), sorted.end());
    std::vector<ColorPermutation> next;
    std::vector<int> image = sorted;
    do {
      for (const auto& base : result) {
        ColorPermutation p = base;
        for (std::size_t i = 0; i < sorted.size(); ++i) {
          p[static_cast<std::size_t>(sorted[i])] = static_cast<Color>(image[i]);
        }
        next.push_back(std::move(p));
      }
    } while (std::next_permutation(image.begin(), image.end()));
    result = std::move(next);
  }
  std::sort(result.begin(), result.end());
  return result;
}

// ---------------------------------------------------------------------------
// Text formats

namespace {

struct Line {
  int number;
  std::string keyword;
  std::string value;  // whitespace removed
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::istringstream in{std::string(text)};
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::string compact;
    for (char c : raw) {
      if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
    }
    if (compact.empty()) continue;
    std::size_t k = 0;
    while (k < compact.size() && (std::isalpha(static_cast<unsigned char>(compact[k])) || compact[k] == '_')) ++k;
    if (k == 0) throw format_error(number, "expected a keyword");
    lines.push_back({number, compact.substr(0, k), compact.substr(k)});
  }
  return lines;
}

int parse_int(const Line& line, const std::string& text) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
      text.size() > 6) {
    throw format_error(line.number, "expected a non-negative integer, got '" + text + "'");
  }
  return std::stoi(text);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

std::vector<std::pair<int, int>> parse_edges(const Line& line, const std::string& text) {
  std::vector<std::pair<int, int>> edges;
  if (text.empty()) return edges;
  for (const auto& item : split(text, ',')) {
    auto dash = item.find('-');
    if (dash == std::string::npos) throw format_error(line.number, "expected u-v, got '" + item + "'");
    int u = parse_int(line, item.substr(0, dash));
    int v = parse_int(line, item.substr(dash + 1));
    if (u < 1 || v < 1) throw format_error(line.number, "vertices are 1-indexed");
    edges.emplace_back(u - 1, v - 1);
  }
  return edges;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

RamseyProblem parse_problem(std::string_view text) {
  RamseyProblem p;
  std::map<int, PlainGraph> forbid;
  bool have_colors = false, have_order = false, have_ell = false;
  for (const Line& line : tokenize(text)) {
    if (line.keyword == "colors") {
      p.colors = parse_int(line, line.value);
      have_colors = true;
    } else if (line.keyword == "colorblind") {
      std::vector<int> cls;
      for (const auto& item : split(line.value, ',')) cls.push_back(parse_int(line, item));
      p.colorblind_classes.push_back(cls);
    } else if (line.keyword == "forbid") {
      auto colon = line.value.find(':');
      if (colon == std::string::npos) throw format_error(line.number, "expected 'forbid i: u-v,...'");
      int color = parse_int(line, line.value.substr(0, colon));
      if (forbid.count(color)) throw format_error(line.number, "color " + std::to_string(color) + " forbidden twice");
      PlainGraph g;
      g.edges = parse_edges(line, line.value.substr(colon + 1));
      for (auto [u, v] : g.edges) g.order = std::max({g.order, u + 1, v + 1});
      forbid[color] = g;
    } else if (line.keyword == "flag_order") {
      p.flag_order = parse_int(line, line.value);
      have_order = true;
    } else if (line.keyword == "ell") {
      p.ell = parse_int(line, line.value);
      have_ell = true;
    } else if (line.keyword == "types") {
      for (const auto& item : split(line.value, ',')) p.type_sizes.push_back(parse_int(line, item));
    } else {
      throw format_error(line.number, "unknown keyword '" + line.keyword + "'");
    }
  }
  if (!have_colors) throw validation_error("problem file lacks a 'colors' line");
  if (!have_order) throw validation_error("problem file lacks a 'flag_order' line");
  if (!have_ell) throw validation_error("problem file lacks an 'ell' line");
  for (int c = 1; c <= p.colors; ++c) {
    auto it = forbid.find(c);
    if (it == forbid.end()) throw validation_error("no forbidden graph given for color " + std::to_string(c));
    p.forbidden.push_back(it->second);
  }
  if (static_cast<int>(forbid.size()) != p.colors) {
    throw validation_error("forbidden graph given for a color outside 1.." + std::to_string(p.colors));
  }
  // Normalize classes: sorted members, implicit singletons added, sorted by first member.
  std::vector<char> covered(static_cast<std::size_t>(p.colors + 1), 0);
  for (auto& cls : p.colorblind_classes) {
    std::sort(cls.begin(), cls.end());
    for (int c : cls) {
      if (c >= 1 && c <= p.colors) covered[static_cast<std::size_t>(c)] = 1;
    }
  }
  for (int c = 1; c <= p.colors; ++c) {
    if (!covered[static_cast<std::size_t>(c)]) p.colorblind_classes.push_back({c});
  }
  std::sort(p.colorblind_classes.begin(), p.colorblind_classes.end());
  p.validate();
  return p;
}

RamseyProblem load_problem(const std::string& path) { return parse_problem(read_file(path)); }

std::string serialize_problem(const RamseyProblem& p) {
  std::ostringstream out;
  out << "colors " << p.colors << "\n";
  for (const auto& cls : p.colorblind_classes) {
    if (cls.size() < 2) continue;
    out << "colorblind ";
    for (std::size_t i = 0; i < cls.size(); ++i) out << (i ? "," : "") << cls[i];
    out << "\n";
  }
  for (int c = 0; c < p.colors; ++c) {
    out << "forbid " << c + 1 << ": ";
    const auto& edges = p.forbidden[static_cast<std::size_t>(c)].edges;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      out << (i ? "," : "") << edges[i].first + 1 << "-" << edges[i].second + 1;
    }
    out << "\n";
  }
  out << "flag_order " << p.flag_order << "\n";
  out << "ell " << p.ell << "\n";
  if (!p.type_sizes.empty()) {
    out << "types ";
    for (std::size_t i = 0; i < p.type_sizes.size(); ++i) out << (i ? "," : "") << p.type_sizes[i];
    out << "\n";
  }
  return out.str();
}

ColoredGraph parse_coloring(std::string_view text, int colors) {
  int order = -1;
  ColoredGraph g;
  std::set<std::pair<int, int>> assigned;
  for (const Line& line : tokenize(text)) {
    if (line.keyword == "vertices") {
      if (order >= 0) throw format_error(line.number, "'vertices' given twice");
      order = parse_int(line, line.value);
      g = ColoredGraph(order);
    } else if (line.keyword == "color") {
      if (order < 0) throw format_error(line.number, "'vertices' must precede 'color' lines");
      auto colon = line.value.find(':');
      if (colon == std::string::npos) throw format_error(line.number, "expected 'color c: u-v,...'");
      int c = parse_int(line, line.value.substr(0, colon));
      if (c < 1 || c > colors) throw format_error(line.number, "color " + std::to_string(c) + " out of range");
      for (auto [u, v] : parse_edges(line, line.value.substr(colon + 1))) {
        if (u >= order || v >= order || u == v) throw format_error(line.number, "invalid pair");
        if (!assigned.insert(std::minmax(u, v)).second) {
          throw format_error(line.number, "pair " + std::to_string(u + 1) + "-" + std::to_string(v + 1) +
                                              " colored twice");
        }
        g.set_color(u, v, static_cast<Color>(c));
      }
    } else {
      throw format_error(line.number, "unknown keyword '" + line.keyword + "'");
    }
  }
  if (order < 0) throw validation_error("coloring file lacks a 'vertices' line");
  return g;
}

ColoredGraph load_coloring(const std::string& path, int colors) {
  return parse_coloring(read_file(path), colors);
}

}  // namespace flagram
