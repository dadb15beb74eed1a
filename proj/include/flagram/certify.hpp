#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "flagram/sdp.hpp"

namespace flagram {

using RationalMatrix = std::vector<std::vector<Rational>>;

// Nearest multiple of 1/denom, entrywise; the upper triangle is mirrored.
RationalMatrix round_matrix(const Eigen::MatrixXd& m, const Integer& denom);
std::vector<RationalMatrix> round_to_rational(const FloatSolution& solution, const Integer& denom);

// Exact PSD test by fraction-free symmetric elimination with diagonal pivots.
// Throws a validation error on asymmetric input.
bool verify_psd_exact(const RationalMatrix& m);

struct DeltaResult {
  Rational delta;
  std::vector<Rational> slack;
};

// Throws a certification error naming the first non-PSD type.
DeltaResult certified_delta(const SdpProblem& problem, const std::vector<RationalMatrix>& matrices);

// Smallest s certified by delta: m + 1 for the largest m with m^(ell-1) * delta <= 1.
Integer ramsey_bound(const Rational& delta, int ell);

struct Certificate {
  std::string fingerprint;
  Integer denominator;
  std::vector<RationalMatrix> matrices;
  Rational delta;
  Integer bound;
  std::vector<Rational> slack;
};

// FNV-1a of the normalized problem text and every key the SDP depends on.
std::string fingerprint(const FlagAlgebra& algebra);

// Rounds with denominators 2^20, 2^24, ..., 2^64 until every block is PSD
// and delta >= lambda - 1e-4.
Certificate certify(const FlagAlgebra& algebra, const SdpProblem& problem, const FloatSolution& solution);

std::string write_certificate(const Certificate& certificate);
Certificate parse_certificate(std::string_view text);

struct VerifyResult {
  bool ok = false;
  std::string message;
};

VerifyResult verify_certificate(const Certificate& certificate, const FlagAlgebra& algebra, const SdpProblem& problem);

}  // namespace flagram
