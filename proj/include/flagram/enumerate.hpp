#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "flagram/model.hpp"

namespace flagram {

// Reads FLAGRAM_MAX_BASIS, falling back to two million graphs.
std::size_t default_max_basis();

struct EnumerationOptions {
  std::size_t max_basis = default_max_basis();
  int threads = 1;
};

/// Memoized canonical keys for one fixed set of color permutations.
/// Not thread-safe; give each worker its own.
class KeyCache {
 public:
  explicit KeyCache(std::vector<ColorPermutation> permutations) : permutations_(std::move(permutations)) {}

  const CanonicalKey& key(const ColoredGraph& g, int labeled = 0);
  const std::vector<ColorPermutation>& permutations() const noexcept { return permutations_; }

 private:
  std::vector<ColorPermutation> permutations_;
  std::unordered_map<std::string, CanonicalKey> memo_;
};

/// Isomorphism classes of admissible graphs of one order, sorted by key.
struct Basis {
  int level = 0;
  std::vector<ColoredGraph> graphs;
  std::vector<CanonicalKey> keys;
  std::map<CanonicalKey, int> index;

  std::size_t size() const noexcept { return graphs.size(); }
  // -1 when absent.
  int find(const CanonicalKey& key) const;
};

struct TypeSigma {
  ColoredGraph graph;  // vertices are the labels 1..s in order
  CanonicalKey key;

  int size() const noexcept { return graph.order(); }
};

struct Flag {
  ColoredGraph graph;          // the root occupies vertices 0..s-1 and equals sigma->graph
  std::vector<int> embedding;  // always 0..s-1 for stored representatives
  std::shared_ptr<const TypeSigma> sigma;
  CanonicalKey key;

  int order() const noexcept { return graph.order(); }
};

Basis enumerate_graphs(const RamseyProblem& problem, int n, const EnumerationOptions& options = {});
// Bases of orders 1..n; element i has level i + 1.
std::vector<Basis> enumerate_levels(const RamseyProblem& problem, int n,
                                    const EnumerationOptions& options = {});

// Types of order s that occur inside some graph of `top`.
std::vector<TypeSigma> enumerate_types(const RamseyProblem& problem, int s, const Basis& top);
std::vector<TypeSigma> enumerate_types(const RamseyProblem& problem, int s,
                                       const EnumerationOptions& options = {});

std::vector<Flag> enumerate_flags(const RamseyProblem& problem, std::shared_ptr<const TypeSigma> sigma,
                                  int f);

// Calls fn on every ordered tuple of s distinct vertices out of n.
void for_each_injection(int n, int s, const std::function<void(const std::vector<int>&)>& fn);

// Key of a labeled graph under the problem's label-preserving equivalence.
CanonicalKey labeled_key(const ColoredGraph& g, std::span<const ColorPermutation> permutations);

}  // namespace flagram
