#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace flagram;

TEST_CASE("basis sizes match brute-force class counts") {
  for (const RamseyProblem& p : {oracle::r33(5), oracle::r34(5)}) {
    const auto levels = enumerate_levels(p, 5);
    REQUIRE(levels.size() == 5);
    for (int n = 1; n <= 5; ++n) {
      const auto reps = oracle::classes(p, n);
      CAPTURE(n);
      CHECK(levels[static_cast<std::size_t>(n - 1)].size() == reps.size());
      for (const ColoredGraph& g : reps) CHECK(oracle::index_of(levels[static_cast<std::size_t>(n - 1)], g, p) >= 0);
    }
  }
}

TEST_CASE("known basis sizes") {
  std::vector<std::size_t> r33, r34;
  for (const Basis& b : enumerate_levels(oracle::r33(5), 5)) r33.push_back(b.size());
  for (const Basis& b : enumerate_levels(oracle::r34(6), 6)) r34.push_back(b.size());
  CHECK(r33 == std::vector<std::size_t>{1, 2, 3, 7, 10});
  CHECK(r34 == std::vector<std::size_t>{1, 3, 6, 16, 35, 89});
}

TEST_CASE("basis is sorted by key and indexed") {
  const Basis b = enumerate_graphs(oracle::r34(), 5);
  for (std::size_t i = 0; i + 1 < b.size(); ++i) CHECK(b.keys[i] < b.keys[i + 1]);
  for (std::size_t i = 0; i < b.size(); ++i) CHECK(b.find(b.keys[i]) == static_cast<int>(i));
  CHECK(b.find(CanonicalKey{"nope"}) == -1);
}

TEST_CASE("types and flags match the oracle") {
  for (const RamseyProblem& p : {oracle::r33(4), oracle::r34(5)}) {
    for (int s : p.effective_type_sizes()) {
      const auto types = enumerate_types(p, s);
      // Every labeled class of order s appears, distinct labelings counted separately.
      std::vector<ColoredGraph> type_reps;
      oracle::for_each_extension(ColoredGraph(0), s, p.colors, [&](const ColoredGraph& g) {
        if (!oracle::admissible(g, p)) return;
        for (const auto& r : type_reps) {
          if (oracle::isomorphic(g, r, p, s)) return;
        }
        type_reps.push_back(g);
      });
      CHECK(types.size() == type_reps.size());
      const int f = (p.flag_order + s) / 2;
      for (const TypeSigma& t : types) {
        auto sigma = std::make_shared<const TypeSigma>(t);
        const auto flags = enumerate_flags(p, sigma, f);
        CHECK(flags.size() == oracle::flag_classes(p, t.graph, f).size());
        for (const Flag& fl : flags) {
          CHECK(fl.graph.induced(std::vector<int>(fl.embedding)) == t.graph);
          CHECK(is_admissible(fl.graph, p));
        }
      }
    }
  }
}

TEST_CASE("worked-example counts") {
  const RamseyProblem p = oracle::r33();
  const auto types = enumerate_types(p, 2);
  REQUIRE(types.size() == 2);
  CHECK(types[0].key.hex() == "020200");
  CHECK(types[1].key.hex() == "020201");
  CHECK(enumerate_flags(p, std::make_shared<const TypeSigma>(types[0]), 3).size() == 2);
  CHECK(enumerate_flags(p, std::make_shared<const TypeSigma>(types[1]), 3).size() == 5);
  // Without color-blindness there is a third type: an edge of color 2.
  CHECK(enumerate_types(oracle::r34(4), 2).size() == 3);
}

TEST_CASE("a flag of the type's own order is the type") {
  const RamseyProblem p = oracle::r34();
  for (const TypeSigma& t : enumerate_types(p, 3)) {
    const auto flags = enumerate_flags(p, std::make_shared<const TypeSigma>(t), 3);
    REQUIRE(flags.size() == 1);
    CHECK(flags[0].graph == t.graph);
  }
}

TEST_CASE("thread count does not change the result") {
  const RamseyProblem p = oracle::r34(6);
  EnumerationOptions one, many;
  many.threads = 4;
  const Basis a = enumerate_graphs(p, 6, one);
  const Basis b = enumerate_graphs(p, 6, many);
  CHECK(a.keys == b.keys);
  CHECK(a.graphs == b.graphs);
}

TEST_CASE("basis cap raises a resource error") {
  EnumerationOptions small;
  small.max_basis = 5;
  try {
    enumerate_graphs(oracle::r34(), 5, small);
    FAIL("expected a resource error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::resource);
    CHECK(e.exit_code() == 3);
  }
}

TEST_CASE("injection enumeration") {
  int count = 0;
  for_each_injection(5, 3, [&](const std::vector<int>&) { ++count; });
  CHECK(count == 60);
}
