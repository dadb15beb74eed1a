#pragma once

// Brute-force oracles and fixtures shared by the test binaries. Nothing here
// uses canonical keys: isomorphism is decided by trying every vertex
// permutation together with every allowed color permutation.

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "flagram/certify.hpp"
#include "flagram/error.hpp"
#include "flagram/pipeline.hpp"

namespace oracle {

using namespace flagram;

inline const char* kR33 =
    "colors 2\ncolorblind 1,2\nforbid 1: 1-2, 1-3, 2-3\nforbid 2: 1-2, 1-3, 2-3\nflag_order 4\nell 2\n";
inline const char* kR34 =
    "colors 2\nforbid 1: 1-2, 1-3, 2-3\nforbid 2: 1-2, 1-3, 1-4, 2-3, 2-4, 3-4\nflag_order 5\nell 2\n";
inline const char* kC5 =
    "vertices 5\ncolor 1: 1-2, 2-3, 3-4, 4-5, 5-1\ncolor 2: 1-3, 1-4, 2-4, 2-5, 3-5\n";
inline const char* kCirculant8 =
    "vertices 8\n"
    "color 1: 1-2, 1-5, 1-8, 2-3, 2-6, 3-4, 3-7, 4-5, 4-8, 5-6, 6-7, 7-8\n"
    "color 2: 1-3, 1-4, 1-6, 1-7, 2-4, 2-5, 2-7, 2-8, 3-5, 3-6, 3-8, 4-6, 4-7, 5-7, 5-8, 6-8\n";

inline RamseyProblem r33(int flag_order = 4) {
  RamseyProblem p = parse_problem(kR33);
  p.flag_order = flag_order;
  return p;
}

inline RamseyProblem r34(int flag_order = 5) {
  RamseyProblem p = parse_problem(kR34);
  p.flag_order = flag_order;
  return p;
}

// Builds a graph from (u, v, color) triples; unlisted pairs are non-edges.
inline ColoredGraph graph(int n, const std::vector<std::array<int, 3>>& pairs) {
  ColoredGraph g(n);
  for (const auto& [u, v, c] : pairs) g.set_color(u, v, static_cast<Color>(c));
  return g;
}

// Every admissible 4-vertex class for R(K3,K3) in the order used by the
// worked example. The doubled quotient vertex of Z is mixed, that of Y is
// the apex of a monochromatic path.
inline std::vector<ColoredGraph> r33_named_graphs() {
  return {
      graph(4, {{0, 1, 1}, {0, 2, 1}, {1, 2, 2}, {0, 3, 1}, {1, 3, 2}}),                        // Z
      graph(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 3, 1}, {0, 2, 2}, {1, 3, 2}}),             // C4 + matching
      graph(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 2, 2}, {1, 3, 2}, {0, 3, 2}}),             // P4 + complement
      graph(4, {{0, 1, 1}, {0, 2, 1}, {1, 2, 2}, {3, 1, 1}, {3, 2, 1}}),                        // Y
      graph(4, {{0, 3, 1}, {1, 3, 1}, {2, 3, 1}}),                                              // K_{1,3}
      graph(4, {{0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}}),                                   // K_{2,2}
      graph(4, {}),                                                                             // empty
  };
}

// Flags of order 3 on the non-edge type: third vertex in the root class, or
// joined to both roots in one color.
inline std::vector<ColoredGraph> r33_sigma0_flags() {
  return {graph(3, {}), graph(3, {{0, 2, 1}, {1, 2, 1}})};
}

// Flags of order 3 on the edge type, the four of the worked example followed
// by the one it leaves out.
inline std::vector<ColoredGraph> r33_sigma1_flags() {
  return {
      graph(3, {{0, 1, 1}, {0, 2, 1}, {1, 2, 2}}),  // c
      graph(3, {{0, 1, 1}, {0, 2, 2}, {1, 2, 1}}),  // d
      graph(3, {{0, 1, 1}, {0, 2, 1}}),             // b: third vertex in the class of root 2
      graph(3, {{0, 1, 1}, {1, 2, 1}}),             // a: third vertex in the class of root 1
      graph(3, {{0, 1, 1}, {0, 2, 2}, {1, 2, 2}}),  // e
  };
}

inline Rational frac(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> s(static_cast<std::size_t>(k));
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == k) {
      fn(s);
      return;
    }
    for (int v = start; v < n; ++v) {
      s[static_cast<std::size_t>(depth)] = v;
      rec(v + 1, depth + 1);
    }
  };
  rec(0, 0);
}

inline void for_each_tuple(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> s;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::function<void()> rec = [&] {
    if (static_cast<int>(s.size()) == k) {
      fn(s);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      used[static_cast<std::size_t>(v)] = true;
      s.push_back(v);
      rec();
      s.pop_back();
      used[static_cast<std::size_t>(v)] = false;
    }
  };
  rec();
}

// All bijections of the color set fixing 0 that map each color-blind class to itself.
inline std::vector<std::vector<Color>> color_maps(const RamseyProblem& p) {
  std::vector<int> colors(static_cast<std::size_t>(p.colors));
  std::iota(colors.begin(), colors.end(), 1);
  std::vector<std::vector<Color>> out;
  std::vector<int> image = colors;
  do {
    bool ok = true;
    for (int c = 1; c <= p.colors && ok; ++c) {
      for (const auto& cls : p.colorblind_classes) {
        const bool in_c = std::find(cls.begin(), cls.end(), c) != cls.end();
        const bool in_img = std::find(cls.begin(), cls.end(), image[static_cast<std::size_t>(c - 1)]) != cls.end();
        if (in_c != in_img) ok = false;
      }
    }
    if (!ok) continue;
    std::vector<Color> m(static_cast<std::size_t>(p.colors + 1), 0);
    for (int c = 1; c <= p.colors; ++c) m[static_cast<std::size_t>(c)] = static_cast<Color>(image[static_cast<std::size_t>(c - 1)]);
    out.push_back(m);
  } while (std::next_permutation(image.begin(), image.end()));
  return out;
}

// Isomorphism fixing the first `labeled` vertices pointwise.
inline bool isomorphic(const ColoredGraph& a, const ColoredGraph& b, const RamseyProblem& p, int labeled = 0) {
  if (a.order() != b.order()) return false;
  const int n = a.order();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  const auto maps = color_maps(p);
  do {
    bool fixed = true;
    for (int i = 0; i < labeled; ++i) fixed = fixed && perm[static_cast<std::size_t>(i)] == i;
    if (!fixed) continue;
    for (const auto& m : maps) {
      bool same = true;
      for (int u = 0; u < n && same; ++u) {
        for (int v = u + 1; v < n && same; ++v) {
          same = m[a.color(u, v)] == b.color(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
        }
      }
      if (same) return true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// Admissibility from first principles: every triple is a blow-up triple and
// no injection of a forbidden pattern into pairwise distinct classes is
// monochromatic in its color.
inline bool admissible(const ColoredGraph& g, const RamseyProblem& p) {
  const int n = g.order();
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      for (int w = 0; w < n; ++w) {
        if (u == v || v == w || u == w) continue;
        if (g.color(u, v) == 0 && g.color(u, w) != g.color(v, w)) return false;
      }
    }
  }
  for (int c = 1; c <= p.colors; ++c) {
    const PlainGraph& pat = p.forbidden[static_cast<std::size_t>(c - 1)];
    // Only vertices that carry an edge need an image.
    std::vector<int> active;
    for (int v = 0; v < pat.order; ++v) {
      for (const auto& [a, b] : pat.edges) {
        if ((a == v || b == v) && std::find(active.begin(), active.end(), v) == active.end()) active.push_back(v);
      }
    }
    const int k = static_cast<int>(active.size());
    if (k > n) continue;
    bool hit = false;
    for_each_tuple(n, k, [&](const std::vector<int>& t) {
      if (hit) return;
      std::vector<int> image(static_cast<std::size_t>(pat.order), -1);
      for (int i = 0; i < k; ++i) image[static_cast<std::size_t>(active[static_cast<std::size_t>(i)])] = t[static_cast<std::size_t>(i)];
      for (const auto& [a, b] : pat.edges) {
        if (g.color(image[static_cast<std::size_t>(a)], image[static_cast<std::size_t>(b)]) != c) return;
      }
      hit = true;
    });
    if (hit) return false;
  }
  return true;
}

// Enumerates all colorings of the pairs not fixed by `base`, i.e. of every
// pair touching a vertex >= base.order().
inline void for_each_extension(const ColoredGraph& base, int n, int colors,
                               const std::function<void(const ColoredGraph&)>& fn) {
  std::vector<std::pair<int, int>> free_pairs;
  for (int v = base.order(); v < n; ++v) {
    for (int u = 0; u < v; ++u) free_pairs.emplace_back(u, v);
  }
  ColoredGraph g(n);
  for (int u = 0; u < base.order(); ++u) {
    for (int v = u + 1; v < base.order(); ++v) g.set_color(u, v, base.color(u, v));
  }
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == free_pairs.size()) {
      fn(g);
      return;
    }
    for (int c = 0; c <= colors; ++c) {
      g.set_color(free_pairs[i].first, free_pairs[i].second, static_cast<Color>(c));
      rec(i + 1);
    }
  };
  rec(0);
}

// Isomorphism classes of admissible graphs of order n, one representative each.
inline std::vector<ColoredGraph> classes(const RamseyProblem& p, int n) {
  std::vector<ColoredGraph> reps;
  for_each_extension(ColoredGraph(0), n, p.colors, [&](const ColoredGraph& g) {
    if (!admissible(g, p)) return;
    for (const auto& r : reps) {
      if (isomorphic(g, r, p)) return;
    }
    reps.push_back(g);
  });
  return reps;
}

// Admissible flags of order f over the labeled graph sigma, up to
// label-preserving isomorphism.
inline std::vector<ColoredGraph> flag_classes(const RamseyProblem& p, const ColoredGraph& sigma, int f) {
  std::vector<ColoredGraph> reps;
  for_each_extension(sigma, f, p.colors, [&](const ColoredGraph& g) {
    if (!admissible(g, p)) return;
    for (const auto& r : reps) {
      if (isomorphic(g, r, p, sigma.order())) return;
    }
    reps.push_back(g);
  });
  return reps;
}

inline Rational density(const ColoredGraph& h, const ColoredGraph& g, const RamseyProblem& p) {
  long hits = 0;
  for_each_subset(g.order(), h.order(), [&](const std::vector<int>& s) {
    if (isomorphic(g.induced(s), h, p)) ++hits;
  });
  return frac(hits, binom(g.order(), h.order()));
}

// Probability that a uniformly random ell-set is a single blow-up class.
inline Rational independent_density(const ColoredGraph& g, int ell) {
  long hits = 0;
  for_each_subset(g.order(), ell, [&](const std::vector<int>& s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        if (g.color(s[i], s[j]) != 0) return;
      }
    }
    ++hits;
  });
  return frac(hits, binom(g.order(), ell));
}

// Averaged product of two sigma-flags evaluated on h: random root embedding
// and random disjoint supports for the two flags.
inline Rational averaged_product(const ColoredGraph& f1, const ColoredGraph& f2, int s, const ColoredGraph& h,
                                 const RamseyProblem& p) {
  const int n = h.order();
  const int k = f1.order() - s;
  long hits = 0;
  long total = 0;
  for_each_tuple(n, s, [&](const std::vector<int>& theta) {
    std::vector<int> rest;
    for (int v = 0; v < n; ++v) {
      if (std::find(theta.begin(), theta.end(), v) == theta.end()) rest.push_back(v);
    }
    for_each_subset(static_cast<int>(rest.size()), k, [&](const std::vector<int>& ia) {
      std::vector<int> a = theta, others;
      for (int i : ia) a.push_back(rest[static_cast<std::size_t>(i)]);
      for (std::size_t i = 0; i < rest.size(); ++i) {
        if (std::find(ia.begin(), ia.end(), static_cast<int>(i)) == ia.end()) others.push_back(rest[i]);
      }
      for_each_subset(static_cast<int>(others.size()), k, [&](const std::vector<int>& ib) {
        std::vector<int> b = theta;
        for (int i : ib) b.push_back(others[static_cast<std::size_t>(i)]);
        ++total;
        if (isomorphic(h.induced(a), f1, p, s) && isomorphic(h.induced(b), f2, p, s)) ++hits;
      });
    });
  });
  return frac(hits, total);
}

inline int index_of(const Basis& basis, const ColoredGraph& g, const RamseyProblem& p) {
  return basis.find(canonical_key(g, p.color_permutations()));
}

inline int flag_index(const std::vector<Flag>& flags, const ColoredGraph& g, const RamseyProblem& p) {
  if (flags.empty()) return -1;
  const CanonicalKey k = canonical_key(g, p.color_permutations(), flags.front().sigma->size());
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (flags[i].key == k) return static_cast<int>(i);
  }
  return -1;
}

// The worked example's integer matrices M0 over (g, h) and M1 over (c, d, b, a),
// placed on this library's flag order with zero rows for unlisted flags and
// rescaled to the averaged-product normalization used by the SDP.
inline std::vector<RationalMatrix> worked_example_matrices(const FlagAlgebra& a) {
  const std::vector<std::vector<int>> m0{{16, -4}, {-4, 1}};
  const std::vector<std::vector<int>> m1{{126, -48, -73, -5}, {-48, 126, -5, -73}, {-73, -5, 64, 14}, {-5, -73, 14, 64}};
  const auto f0 = r33_sigma0_flags();
  const auto f1 = r33_sigma1_flags();
  std::vector<RationalMatrix> out;
  for (const ProductTable& t : a.tables) {
    const std::size_t d = t.dimension();
    RationalMatrix m(d, std::vector<Rational>(d, Rational(0)));
    const bool edge = t.sigma->graph.color(0, 1) != 0;
    const auto& src = edge ? m1 : m0;
    const auto& named = edge ? f1 : f0;
    const Rational scale = edge ? frac(1, 80) : frac(1, 20);
    for (std::size_t i = 0; i < src.size(); ++i) {
      for (std::size_t j = 0; j < src.size(); ++j) {
        const int fi = flag_index(t.flags, named[i], a.problem);
        const int fj = flag_index(t.flags, named[j], a.problem);
        m[static_cast<std::size_t>(fi)][static_cast<std::size_t>(fj)] = src[i][j] * scale;
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace oracle
