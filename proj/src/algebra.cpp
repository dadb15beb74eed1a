#include "flagram/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "flagram/error.hpp"
#include "flagram/parallel.hpp"

namespace flagram {

namespace {

template <class Fn>
void for_each_combination(const std::vector<int>& items, int k, Fn&& fn) {
  const int n = static_cast<int>(items.size());
  if (k < 0 || k > n) return;
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<int> chosen(static_cast<std::size_t>(k));
  while (true) {
    for (int i = 0; i < k; ++i) chosen[static_cast<std::size_t>(i)] = items[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
    fn(chosen);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

std::vector<int> range(int begin, int end) {
  std::vector<int> v(static_cast<std::size_t>(std::max(0, end - begin)));
  std::iota(v.begin(), v.end(), begin);
  return v;
}

Integer binomial(int n, int k) {
  Integer r;
  if (k < 0 || k > n) return 0;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Integer falling(int n, int k) {
  Integer r = 1;
  for (int i = 0; i < k; ++i) r *= n - i;
  return r;
}

Rational ratio(long count, const Integer& total) {
  Rational r(Integer(count), total);
  r.canonicalize();
  return r;
}

std::vector<int> concat(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::vector<int> complement(const std::vector<int>& rest, const std::vector<int>& chosen) {
  std::vector<int> out;
  for (int v : rest) {
    if (std::find(chosen.begin(), chosen.end(), v) == chosen.end()) out.push_back(v);
  }
  return out;
}

}  // namespace

Rational density(const ColoredGraph& h, const ColoredGraph& hp, std::span<const ColorPermutation> permutations) {
  if (h.order() > hp.order()) return 0;
  const CanonicalKey target = canonical_key(h, permutations);
  long hits = 0;
  for_each_combination(range(0, hp.order()), h.order(), [&](const std::vector<int>& subset) {
    if (canonical_key(hp.induced(subset), permutations) == target) ++hits;
  });
  return ratio(hits, binomial(hp.order(), h.order()));
}

DensityTable density_table(const Basis& from, const Basis& to, std::span<const ColorPermutation> permutations,
                           int threads) {
  DensityTable table;
  table.from_level = from.level;
  table.to_level = to.level;
  table.entries.assign(from.size(), std::vector<Rational>(to.size(), Rational(0)));
  const Integer total = binomial(to.level, from.level);
  std::vector<ColorPermutation> perms(permutations.begin(), permutations.end());
  parallel_chunks(to.size(), threads, [&](std::size_t begin, std::size_t end, std::size_t) {
    KeyCache cache(perms);
    for (std::size_t j = begin; j < end; ++j) {
      const ColoredGraph& hp = to.graphs[j];
      std::vector<long> hits(from.size(), 0);
      for_each_combination(range(0, hp.order()), from.level, [&](const std::vector<int>& subset) {
        int i = from.find(cache.key(hp.induced(subset)));
        if (i < 0) throw validation_error("induced subgraph missing from the lower basis");
        ++hits[static_cast<std::size_t>(i)];
      });
      for (std::size_t i = 0; i < from.size(); ++i) {
        if (hits[i]) table.entries[i][j] = ratio(hits[i], total);
      }
    }
  });
  return table;
}

SparseVector product_expand(const RamseyProblem& problem, const Flag& f1, const Flag& f2,
                            const std::vector<Flag>& target) {
  if (!f1.sigma || !f2.sigma || f1.sigma->key != f2.sigma->key) {
    throw validation_error("product of flags with different types");
  }
  const int s = f1.sigma->size();
  const int order = f1.order() + f2.order() - s;
  const auto perms = problem.color_permutations();
  const std::vector<int> root = range(0, s);
  const Integer splits = binomial(order - s, f1.order() - s);
  SparseVector out;
  for (std::size_t t = 0; t < target.size(); ++t) {
    const Flag& flag = target[t];
    if (flag.order() != order || flag.sigma->key != f1.sigma->key) {
      throw validation_error("product target has the wrong order or type");
    }
    long hits = 0;
    const std::vector<int> rest = range(s, order);
    for_each_combination(rest, f1.order() - s, [&](const std::vector<int>& a) {
      const std::vector<int> b = complement(rest, a);
      if (canonical_key(flag.graph.induced(concat(root, a)), perms, s) == f1.key &&
          canonical_key(flag.graph.induced(concat(root, b)), perms, s) == f2.key) {
        ++hits;
      }
    });
    if (hits) out[static_cast<int>(t)] = ratio(hits, splits);
  }
  return out;
}

SparseVector average(const RamseyProblem& problem, const SparseVector& v, const std::vector<Flag>& flags,
                     const Basis& basis) {
  const auto perms = problem.color_permutations();
  SparseVector out;
  for (const auto& [index, coef] : v) {
    const Flag& flag = flags[static_cast<std::size_t>(index)];
    const int n = flag.order();
    const int s = flag.sigma->size();
    const int h = basis.find(canonical_key(flag.graph, perms));
    if (h < 0) throw validation_error("flag's underlying graph missing from the basis");
    long hits = 0;
    for_each_injection(n, s, [&](const std::vector<int>& theta) {
      if (canonical_key(flag.graph.induced(concat(theta, complement(range(0, n), theta))), perms, s) == flag.key) {
        ++hits;
      }
    });
    out[h] += coef * ratio(hits, falling(n, s));
  }
  for (auto it = out.begin(); it != out.end();) {
    it = it->second == 0 ? out.erase(it) : std::next(it);
  }
  return out;
}

std::vector<Rational> objective_vector(const RamseyProblem& problem, const Basis& basis) {
  if (problem.ell > basis.level) throw validation_error("ell exceeds the basis order");
  const Integer total = binomial(basis.level, problem.ell);
  std::vector<Rational> b;
  for (const ColoredGraph& g : basis.graphs) {
    long hits = 0;
    for_each_combination(range(0, g.order()), problem.ell, [&](const std::vector<int>& subset) {
      for (std::size_t i = 0; i < subset.size(); ++i) {
        for (std::size_t j = i + 1; j < subset.size(); ++j) {
          if (g.color(subset[i], subset[j]) != kNonEdge) return;
        }
      }
      ++hits;
    });
    b.push_back(ratio(hits, total));
  }
  return b;
}

const SparseVector& ProductTable::at(int i, int j) const {
  static const SparseVector empty;
  auto it = coeffs.find(std::minmax(i, j));
  return it == coeffs.end() ? empty : it->second;
}

ProductTable product_table(const RamseyProblem& problem, std::shared_ptr<const TypeSigma> sigma,
                           std::vector<Flag> flags, const Basis& basis, int threads) {
  const int s = sigma->size();
  const int n = basis.level;
  ProductTable table;
  table.sigma = sigma;
  table.flag_order = flags.empty() ? s : flags.front().order();
  table.flags = std::move(flags);
  const int f = table.flag_order;
  if (2 * f - s > n) throw validation_error("flag products exceed the basis order");

  std::map<CanonicalKey, int> flag_index;
  for (std::size_t i = 0; i < table.flags.size(); ++i) flag_index.emplace(table.flags[i].key, static_cast<int>(i));
  auto lookup = [&](const CanonicalKey& key) {
    auto it = flag_index.find(key);
    return it == flag_index.end() ? -1 : it->second;
  };

  const Integer denominator = falling(n, s) * binomial(n - s, f - s) * binomial(n - f, f - s);
  using Counts = std::map<std::pair<int, int>, long>;
  std::vector<Counts> per_graph(basis.size());
  const auto perms = problem.color_permutations();

  parallel_chunks(basis.size(), threads, [&](std::size_t begin, std::size_t end, std::size_t) {
    KeyCache cache(perms);
    for (std::size_t h = begin; h < end; ++h) {
      const ColoredGraph& g = basis.graphs[h];
      Counts& counts = per_graph[h];
      for_each_injection(n, s, [&](const std::vector<int>& theta) {
        if (cache.key(g.induced(theta), s) != sigma->key) return;
        const std::vector<int> rest = complement(range(0, n), theta);
        for_each_combination(rest, f - s, [&](const std::vector<int>& a) {
          const int i = lookup(cache.key(g.induced(concat(theta, a)), s));
          if (i < 0) return;
          for_each_combination(complement(rest, a), f - s, [&](const std::vector<int>& b) {
            const int j = lookup(cache.key(g.induced(concat(theta, b)), s));
            if (j >= i) ++counts[{i, j}];
          });
        });
      });
    }
  });

  for (std::size_t h = 0; h < basis.size(); ++h) {
    for (const auto& [pair, count] : per_graph[h]) {
      table.coeffs[pair][static_cast<int>(h)] = ratio(count, denominator);
    }
  }
  return table;
}

ProductTable without_unused_flags(const ProductTable& table) {
  std::vector<char> used(table.flags.size(), 0);
  for (const auto& [pair, vec] : table.coeffs) {
    if (vec.empty()) continue;
    used[static_cast<std::size_t>(pair.first)] = 1;
    used[static_cast<std::size_t>(pair.second)] = 1;
  }
  std::vector<int> remap(table.flags.size(), -1);
  ProductTable out;
  out.sigma = table.sigma;
  out.flag_order = table.flag_order;
  for (std::size_t i = 0; i < table.flags.size(); ++i) {
    if (!used[i]) continue;
    remap[i] = static_cast<int>(out.flags.size());
    out.flags.push_back(table.flags[i]);
  }
  for (const auto& [pair, vec] : table.coeffs) {
    if (!vec.empty()) {
      out.coeffs[{remap[static_cast<std::size_t>(pair.first)], remap[static_cast<std::size_t>(pair.second)]}] = vec;
    }
  }
  return out;
}

FlagAlgebra build_algebra(const RamseyProblem& problem, const EnumerationOptions& options) {
  problem.validate();
  FlagAlgebra algebra;
  algebra.problem = problem;
  algebra.permutations = problem.color_permutations();
  algebra.levels = enumerate_levels(problem, problem.flag_order, options);
  algebra.objective = objective_vector(problem, algebra.basis());
  for (int s : problem.effective_type_sizes()) {
    const int f = (problem.flag_order + s) / 2;
    for (TypeSigma& type : enumerate_types(problem, s, algebra.basis())) {
      auto sigma = std::make_shared<const TypeSigma>(std::move(type));
      std::vector<Flag> flags = enumerate_flags(problem, sigma, f);
      ProductTable table =
          without_unused_flags(product_table(problem, sigma, std::move(flags), algebra.basis(), options.threads));
      if (table.dimension() > 0) algebra.tables.push_back(std::move(table));
    }
  }
  return algebra;
}

std::string format_tables(const FlagAlgebra& algebra) {
  std::ostringstream out;
  out << "# objective graph_index value\n";
  for (std::size_t h = 0; h < algebra.objective.size(); ++h) {
    if (algebra.objective[h] != 0) out << "objective " << h << " " << to_fraction_string(algebra.objective[h]) << "\n";
  }
  out << "# sigma_index flag_i flag_j graph_index value\n";
  for (std::size_t t = 0; t < algebra.tables.size(); ++t) {
    for (const auto& [pair, vec] : algebra.tables[t].coeffs) {
      for (const auto& [h, value] : vec) {
        out << t << " " << pair.first << " " << pair.second << " " << h << " " << to_fraction_string(value) << "\n";
      }
    }
  }
  return out.str();
}

}  // namespace flagram
