#include "flagram/enumerate.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>

#include "flagram/error.hpp"
#include "flagram/parallel.hpp"

namespace flagram {

std::size_t default_max_basis() {
  if (const char* env = std::getenv("FLAGRAM_MAX_BASIS")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 2'000'000;
}

const CanonicalKey& KeyCache::key(const ColoredGraph& g, int labeled) {
  std::string raw;
  raw.reserve(static_cast<std::size_t>(g.order() * g.order()) + 2);
  raw.push_back(static_cast<char>(g.order()));
  raw.push_back(static_cast<char>(labeled));
  for (int j = 1; j < g.order(); ++j) {
    for (int i = 0; i < j; ++i) raw.push_back(static_cast<char>(g.color(i, j)));
  }
  auto it = memo_.find(raw);
  if (it != memo_.end()) return it->second;
  return memo_.emplace(std::move(raw), canonical_key(g, permutations_, labeled)).first->second;
}

int Basis::find(const CanonicalKey& key) const {
  auto it = index.find(key);
  return it == index.end() ? -1 : it->second;
}

CanonicalKey labeled_key(const ColoredGraph& g, std::span<const ColorPermutation> permutations) {
  return canonical_key(g, permutations, g.order());
}

namespace {

// Calls fn(colors) for every vector in {0..k}^length, in lexicographic order.
template <class Fn>
void for_each_color_vector(int length, int k, Fn&& fn) {
  std::vector<Color> colors(static_cast<std::size_t>(length), 0);
  while (true) {
    fn(std::span<const Color>(colors));
    int pos = length - 1;
    while (pos >= 0 && colors[static_cast<std::size_t>(pos)] == k) {
      colors[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) return;
    ++colors[static_cast<std::size_t>(pos)];
  }
}

Basis make_basis(int level, std::map<CanonicalKey, ColoredGraph>&& found) {
  Basis b;
  b.level = level;
  for (auto& [key, g] : found) {
    b.index.emplace(key, static_cast<int>(b.graphs.size()));
    b.keys.push_back(key);
    b.graphs.push_back(std::move(g));
  }
  return b;
}

Basis single_vertex() {
  std::map<CanonicalKey, ColoredGraph> one;
  ColoredGraph g(1);
  one.emplace(canonical_key(g, {}), g);
  return make_basis(1, std::move(one));
}

Basis extend_level(const RamseyProblem& problem, const Basis& prev, const EnumerationOptions& options) {
  using Candidates = std::vector<std::pair<CanonicalKey, ColoredGraph>>;
  const auto perms = problem.color_permutations();
  const int level = prev.level + 1;
  std::vector<Candidates> per_parent(prev.size());

  parallel_chunks(prev.size(), options.threads, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t p = begin; p < end; ++p) {
      const ColoredGraph& parent = prev.graphs[p];
      std::map<CanonicalKey, ColoredGraph> local;
      for_each_color_vector(parent.order(), problem.colors, [&](std::span<const Color> colors) {
        ColoredGraph child = parent.extended(colors);
        if (!is_admissible(child, problem)) return;
        CanonicalKey key = canonical_key(child, perms);
        local.try_emplace(std::move(key), std::move(child));
      });
      per_parent[p].assign(std::make_move_iterator(local.begin()), std::make_move_iterator(local.end()));
    }
  });

  std::map<CanonicalKey, ColoredGraph> found;
  for (std::size_t p = 0; p < per_parent.size(); ++p) {
    for (auto& [key, g] : per_parent[p]) found.try_emplace(std::move(key), std::move(g));
    if (found.size() > options.max_basis) {
      const double estimate =
          static_cast<double>(found.size()) * static_cast<double>(prev.size()) / static_cast<double>(p + 1);
      throw resource_error("basis of order " + std::to_string(level) + " exceeds the cap of " +
                           std::to_string(options.max_basis) + " graphs (estimated " +
                           std::to_string(static_cast<long long>(estimate)) +
                           "); raise FLAGRAM_MAX_BASIS or lower flag_order");
    }
  }
  return make_basis(level, std::move(found));
}

}  // namespace

std::vector<Basis> enumerate_levels(const RamseyProblem& problem, int n, const EnumerationOptions& options) {
  if (n < 1) throw validation_error("basis order must be at least 1");
  std::vector<Basis> levels;
  levels.push_back(single_vertex());
  while (levels.back().level < n) levels.push_back(extend_level(problem, levels.back(), options));
  return levels;
}

Basis enumerate_graphs(const RamseyProblem& problem, int n, const EnumerationOptions& options) {
  return std::move(enumerate_levels(problem, n, options).back());
}

void for_each_injection(int n, int s, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> tuple;
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(tuple.size()) == s) {
      fn(tuple);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      used[static_cast<std::size_t>(v)] = 1;
      tuple.push_back(v);
      self(self);
      tuple.pop_back();
      used[static_cast<std::size_t>(v)] = 0;
    }
  };
  rec(rec);
}

std::vector<TypeSigma> enumerate_types(const RamseyProblem& problem, int s, const Basis& top) {
  if (s < 0 || s > top.level) throw validation_error("type order out of range");
  const auto perms = problem.color_permutations();
  std::map<CanonicalKey, ColoredGraph> found;
  for (const ColoredGraph& h : top.graphs) {
    for_each_injection(h.order(), s, [&](const std::vector<int>& theta) {
      CanonicalKey key = labeled_key(h.induced(theta), perms);
      if (!found.count(key)) found.emplace(key, graph_from_key(key));
    });
  }
  std::vector<TypeSigma> types;
  for (auto& [key, g] : found) types.push_back(TypeSigma{std::move(g), key});
  return types;
}

std::vector<TypeSigma> enumerate_types(const RamseyProblem& problem, int s, const EnumerationOptions& options) {
  if (s < 0 || s > problem.flag_order - 2 || (problem.flag_order - s) % 2 != 0) {
    throw validation_error("type order " + std::to_string(s) + " must satisfy 0 <= s <= flag_order - 2 " +
                           "and s = flag_order (mod 2)");
  }
  return enumerate_types(problem, s, enumerate_graphs(problem, problem.flag_order, options));
}

std::vector<Flag> enumerate_flags(const RamseyProblem& problem, std::shared_ptr<const TypeSigma> sigma, int f) {
  const int s = sigma->size();
  if (f < s) throw validation_error("flag order below type order");
  const auto perms = problem.color_permutations();
  std::map<CanonicalKey, ColoredGraph> current;
  current.emplace(canonical_key(sigma->graph, perms, s), sigma->graph);
  for (int order = s + 1; order <= f; ++order) {
    std::map<CanonicalKey, ColoredGraph> next;
    for (const auto& [key, g] : current) {
      for_each_color_vector(g.order(), problem.colors, [&](std::span<const Color> colors) {
        ColoredGraph child = g.extended(colors);
        if (!is_admissible(child, problem)) return;
        CanonicalKey child_key = canonical_key(child, perms, s);
        next.try_emplace(std::move(child_key), std::move(child));
      });
    }
    current = std::move(next);
  }
  std::vector<int> root(static_cast<std::size_t>(s));
  std::iota(root.begin(), root.end(), 0);
  std::vector<Flag> flags;
  for (auto& [key, g] : current) flags.push_back(Flag{std::move(g), root, sigma, key});
  return flags;
}

}  // namespace flagram
