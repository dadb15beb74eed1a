#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace flagram;
using oracle::frac;

namespace {

RationalMatrix ints(const std::vector<std::vector<int>>& rows) {
  RationalMatrix m;
  for (const auto& r : rows) {
    m.emplace_back();
    for (int v : r) m.back().emplace_back(v);
  }
  return m;
}

const FlagAlgebra& r33_algebra() {
  static const FlagAlgebra a = build_algebra(oracle::r33());
  return a;
}

}  // namespace

TEST_CASE("exact PSD test") {
  CHECK(verify_psd_exact(ints({{16, -4}, {-4, 1}})));
  CHECK(verify_psd_exact(ints({{0, 0}, {0, 0}})));
  CHECK(verify_psd_exact(ints({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}})));
  CHECK_FALSE(verify_psd_exact(ints({{1, 2}, {2, 1}})));
  CHECK_FALSE(verify_psd_exact(ints({{0, 1}, {1, 0}})));
  CHECK_FALSE(verify_psd_exact(ints({{1, 0}, {0, -1}})));
  CHECK(verify_psd_exact(ints({{126, -48, -73, -5}, {-48, 126, -5, -73}, {-73, -5, 64, 14}, {-5, -73, 14, 64}})));
  CHECK_THROWS_AS(verify_psd_exact(ints({{1, 2}, {3, 1}})), Error);
}

TEST_CASE("property: Gram matrices are PSD and perturbations below zero are caught") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> dist(-5, 5);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 5;
    const int r = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
    std::vector<std::vector<int>> v(static_cast<std::size_t>(r), std::vector<int>(static_cast<std::size_t>(n)));
    for (auto& row : v) {
      for (int& x : row) x = dist(rng);
    }
    RationalMatrix g(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < r; ++k) g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += v[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
      }
    }
    CHECK(verify_psd_exact(g));
    // Subtracting a tiny multiple of the identity from a singular Gram matrix breaks PSD.
    if (r < n) {
      for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] -= frac(1, 1000000);
      CHECK_FALSE(verify_psd_exact(g));
    }
  }
}

TEST_CASE("bounds from delta") {
  CHECK(ramsey_bound(frac(1, 5), 2) == 6);
  CHECK(ramsey_bound(frac(17, 100), 2) == 6);
  CHECK(ramsey_bound(frac(1, 6), 2) == 7);
  CHECK(ramsey_bound(frac(1, 8), 2) == 9);
  CHECK(ramsey_bound(frac(1, 64), 3) == 9);
  CHECK(ramsey_bound(frac(1, 65), 3) == 9);
  CHECK(ramsey_bound(frac(1, 63), 3) == 8);
  CHECK(ramsey_bound(1, 2) == 2);
  CHECK_THROWS_AS(ramsey_bound(0, 2), Error);
  CHECK_THROWS_AS(ramsey_bound(frac(-1, 3), 2), Error);
}

TEST_CASE("rounding") {
  Eigen::MatrixXd m(2, 2);
  m << 0.33333, 0.1, 0.1, 0.25;
  const RationalMatrix r = round_matrix(m, 1000);
  CHECK(r[0][0] == frac(333, 1000));
  CHECK(r[0][1] == frac(1, 10));
  CHECK(r[1][0] == r[0][1]);
  CHECK(r[1][1] == frac(1, 4));
}

TEST_CASE("worked-example matrices give delta one fifth") {
  const FlagAlgebra& a = r33_algebra();
  const SdpProblem sdp = assemble(a);
  const auto mats = oracle::worked_example_matrices(a);
  for (const auto& m : mats) CHECK(verify_psd_exact(m));
  const DeltaResult d = certified_delta(sdp, mats);
  CHECK(d.delta == frac(1, 5));
  int surplus = 0;
  for (std::size_t h = 0; h < d.slack.size(); ++h) {
    if (d.slack[h] != frac(1, 5)) {
      ++surplus;
      CHECK(d.slack[h] == frac(2, 5));
      CHECK(a.objective[h] == 0);
    }
  }
  CHECK(surplus == 1);
}

TEST_CASE("four-decimal matrix of the short proof") {
  const FlagAlgebra& a = r33_algebra();
  const SdpProblem sdp = assemble(a);
  const std::vector<std::vector<double>> mp{{0.0744, -0.0223, -0.0520}, {-0.0223, 0.0238, -0.0014}, {-0.0520, -0.0014, 0.0536}};
  const auto named = oracle::r33_sigma1_flags();
  std::vector<RationalMatrix> mats;
  for (const ProductTable& t : a.tables) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(t.dimension()), static_cast<Eigen::Index>(t.dimension()));
    if (t.sigma->graph.color(0, 1) != 0) {
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) m(oracle::flag_index(t.flags, named[i], a.problem), oracle::flag_index(t.flags, named[j], a.problem)) = 24 * mp[i][j];
      }
    }
    mats.push_back(round_matrix(m, 10000));
  }
  for (const auto& m : mats) CHECK(verify_psd_exact(m));
  const DeltaResult d = certified_delta(sdp, mats);
  CHECK(d.delta == frac(1, 6) + frac(112, 10000));
  CHECK(d.delta > frac(17, 100));
  CHECK(ramsey_bound(d.delta, 2) == 6);
}

TEST_CASE("an indefinite block is rejected with its type") {
  const FlagAlgebra& a = r33_algebra();
  const SdpProblem sdp = assemble(a);
  auto mats = oracle::worked_example_matrices(a);
  mats[0][0][0] = -1;
  try {
    certified_delta(sdp, mats);
    FAIL("expected a certification error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::certification);
    CHECK(std::string(e.what()).find("020200") != std::string::npos);
  }
}

TEST_CASE("certify, write, parse and verify") {
  const FlagAlgebra& a = r33_algebra();
  const SdpProblem sdp = assemble(a);
  const Certificate cert = certify(a, sdp, solve(sdp));
  CHECK(cert.delta > frac(1, 6));
  CHECK(cert.delta <= frac(1, 5));
  CHECK(cert.bound == 6);
  CHECK(cert.fingerprint.size() == 16);
  const std::string text = write_certificate(cert);
  const Certificate back = parse_certificate(text);
  CHECK(write_certificate(back) == text);
  const VerifyResult ok = verify_certificate(back, a, sdp);
  CHECK(ok.ok);
  CHECK(ok.message == "certificate verified: R <= 6");

  Certificate tampered = back;
  tampered.delta += frac(1, 1000);
  CHECK_FALSE(verify_certificate(tampered, a, sdp).ok);
  tampered = back;
  tampered.fingerprint = "0000000000000000";
  CHECK_FALSE(verify_certificate(tampered, a, sdp).ok);
  tampered = back;
  tampered.matrices[1][0][0] = -1;
  CHECK_FALSE(verify_certificate(tampered, a, sdp).ok);
  CHECK_THROWS_AS(parse_certificate("flagram-certificate 2\n"), Error);
}

TEST_CASE("fingerprint depends on the problem") {
  const std::string f33 = fingerprint(r33_algebra());
  CHECK(f33 == fingerprint(build_algebra(oracle::r33())));
  CHECK(f33 != fingerprint(build_algebra(oracle::r34())));
}

TEST_CASE("a useless solution cannot be certified") {
  const FlagAlgebra& a = r33_algebra();
  const SdpProblem sdp = assemble(a);
  FloatSolution sol;
  sol.matrices = {Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Zero(5, 5)};
  sol.lambda = 0.2;
  try {
    certify(a, sdp, sol);
    FAIL("expected a certification error");
  } catch (const Error& e) {
    CHECK(e.exit_code() == 4);
  }
}
