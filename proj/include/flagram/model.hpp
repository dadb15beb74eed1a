#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flagram/rational.hpp"

namespace flagram {

using Color = std::uint8_t;

// Color 0 joins two vertices of the same blow-up class.
inline constexpr Color kNonEdge = 0;

/// A complete graph whose pairs carry a color in {0, 1, ..., k}.
///
/// This is the blow-up graph representation: color 0 marks two vertices of
/// the same independent set, every other color is an edge color.
class ColoredGraph {
 public:
  ColoredGraph() = default;
  explicit ColoredGraph(int order, Color fill = kNonEdge);

  int order() const noexcept { return order_; }
  Color color(int u, int v) const { return colors_[static_cast<std::size_t>(u * order_ + v)]; }
  void set_color(int u, int v, Color c);

  // Vertex i of the result is vertices[i] of this graph.
  ColoredGraph induced(std::span<const int> vertices) const;
  // color_map[c] replaces color c.
  ColoredGraph recolored(std::span<const Color> color_map) const;
  // Appends one vertex joined to vertex i by colors[i].
  ColoredGraph extended(std::span<const Color> colors) const;
  // Appends a twin of v in v's blow-up class.
  ColoredGraph cloned(int v) const;

  bool has_non_edge() const;

  friend bool operator==(const ColoredGraph&, const ColoredGraph&) = default;

 private:
  int order_ = 0;
  std::vector<Color> colors_;
};

/// An uncolored pattern graph with 0-based vertices.
struct PlainGraph {
  int order = 0;
  std::vector<std::pair<int, int>> edges;
};

using ColorPermutation = std::vector<Color>;  // image of each color; [0] == 0

/// Forbidden family plus the flag-algebra parameters of one run.
struct RamseyProblem {
  int colors = 0;
  std::vector<PlainGraph> forbidden;                 // forbidden[i] applies to color i + 1
  std::vector<std::vector<int>> colorblind_classes;  // partition of 1..colors
  int ell = 2;
  int flag_order = 0;
  std::vector<int> type_sizes;  // empty selects every matching-parity size >= 1

  // Throws a validation error describing the first violated invariant.
  void validate() const;

  std::vector<int> effective_type_sizes() const;
  std::vector<ColorPermutation> color_permutations() const;
};

// Problem file format: see README.
RamseyProblem parse_problem(std::string_view text);
RamseyProblem load_problem(const std::string& path);
// Normalized text form; parse_problem(serialize_problem(p)) == p.
std::string serialize_problem(const RamseyProblem& problem);

// Coloring file format: `vertices m`, then `color c: u-v,...` (1-indexed).
ColoredGraph parse_coloring(std::string_view text, int colors);
ColoredGraph load_coloring(const std::string& path, int colors);

struct CanonicalKey {
  std::string bytes;

  std::string hex() const;
  static CanonicalKey from_hex(std::string_view hex);

  auto operator<=>(const CanonicalKey&) const = default;
};

bool is_blowup_consistent(const ColoredGraph& g);

// Injection of pattern vertices into g (indexed by pattern vertex) sending
// every pattern edge to a pair of the given color, if one exists. Isolated
// pattern vertices impose nothing and map to -1.
std::optional<std::vector<int>> find_mono_copy(const ColoredGraph& g, const PlainGraph& pattern,
                                               Color color);
bool contains_mono_copy(const ColoredGraph& g, const PlainGraph& pattern, Color color);

// One representative vertex per blow-up class, in order of first occurrence.
std::vector<int> class_representatives(const ColoredGraph& g);

bool is_admissible(const ColoredGraph& g, const RamseyProblem& problem);

/// Canonical serialization under vertex relabeling and the given color
/// permutations. The first `labeled` vertices stay fixed, in order.
///
/// Byte layout: order, labeled, then the pair colors in column order
/// (0,1), (0,2), (1,2), (0,3), ... of the lexicographically minimal labeling.
CanonicalKey canonical_key(const ColoredGraph& g, std::span<const ColorPermutation> permutations,
                           int labeled = 0);

// The graph whose identity labeling realizes canonical_key(g, ...).
ColoredGraph canonical_form(const ColoredGraph& g, std::span<const ColorPermutation> permutations,
                            int labeled = 0);

ColoredGraph graph_from_key(const CanonicalKey& key);

// Density of independent ell-sets in the balanced blow-up of a complete
// coloring on m vertices: (1/m)^(ell-1).
Rational quotient_density_bound(const ColoredGraph& g, int ell);

}  // namespace flagram
