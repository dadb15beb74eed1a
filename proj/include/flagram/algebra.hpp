#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "flagram/enumerate.hpp"
#include "flagram/rational.hpp"

namespace flagram {

using SparseVector = std::map<int, Rational>;

// Fraction of v(h)-subsets of hp inducing a copy of h.
Rational density(const ColoredGraph& h, const ColoredGraph& hp, std::span<const ColorPermutation> permutations);

struct DensityTable {
  int from_level = 0;
  int to_level = 0;
  std::vector<std::vector<Rational>> entries;  // entries[i][j] = p(from[i], to[j])
};

DensityTable density_table(const Basis& from, const Basis& to, std::span<const ColorPermutation> permutations,
                           int threads = 1);

// p(F1, F2; T) for every T in target, the sigma-flags of order v(F1) + v(F2) - v(sigma).
SparseVector product_expand(const RamseyProblem& problem, const Flag& f1, const Flag& f2,
                            const std::vector<Flag>& target);

// Downward operator: flags[i] contributes v[i] * p_F to the unlabeled class of F.
SparseVector average(const RamseyProblem& problem, const SparseVector& v, const std::vector<Flag>& flags,
                     const Basis& basis);

// Density of the independent ell-set in each graph of the basis.
std::vector<Rational> objective_vector(const RamseyProblem& problem, const Basis& basis);

/// Averaged products of all flag pairs of one type, expanded over a basis.
struct ProductTable {
  std::shared_ptr<const TypeSigma> sigma;
  int flag_order = 0;
  std::vector<Flag> flags;
  std::map<std::pair<int, int>, SparseVector> coeffs;  // keys (i, j) with i <= j; zero pairs absent

  std::size_t dimension() const noexcept { return flags.size(); }
  // Empty vector for pairs whose product vanishes.
  const SparseVector& at(int i, int j) const;
};

// Direct evaluation: for every graph H, every root embedding and every
// split of the remaining vertices into the two flag supports.
ProductTable product_table(const RamseyProblem& problem, std::shared_ptr<const TypeSigma> sigma,
                           std::vector<Flag> flags, const Basis& basis, int threads = 1);

// Drops flags whose row is identically zero.
ProductTable without_unused_flags(const ProductTable& table);

/// Everything the SDP needs for one problem.
struct FlagAlgebra {
  RamseyProblem problem;
  std::vector<ColorPermutation> permutations;
  std::vector<Basis> levels;  // orders 1..flag_order
  std::vector<Rational> objective;
  std::vector<ProductTable> tables;  // by type size, then key

  const Basis& basis() const { return levels.back(); }
};

FlagAlgebra build_algebra(const RamseyProblem& problem, const EnumerationOptions& options = {});

// One line per nonzero coefficient: `sigma_index flag_i flag_j graph_index p/q`,
// preceded by the objective as `objective graph_index p/q` lines.
std::string format_tables(const FlagAlgebra& algebra);

}  // namespace flagram
