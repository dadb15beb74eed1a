#pragma once

#include <Eigen/Dense>

#include <string>
#include <string_view>
#include <vector>

#include "flagram/algebra.hpp"

namespace flagram {

// Upper-triangle entry (i <= j) of a symmetric block, 0-based.
struct BlockEntry {
  int block = 0;
  int i = 0;
  int j = 0;
  Rational value;

  friend bool operator==(const BlockEntry&, const BlockEntry&) = default;
};

/// maximize lambda  s.t.  b_H - sum_sigma <M_sigma, C_sigma(H)> >= lambda for all H,
///                        M_sigma PSD.
struct SdpProblem {
  std::vector<int> block_dims;            // one per type
  std::vector<std::string> block_labels;  // type keys in hex
  std::vector<Rational> objective;        // b_H
  std::vector<std::vector<BlockEntry>> constraints;  // C_sigma(H), sorted by (block, i, j)
  std::vector<Integer> row_scales;  // clears every denominator of row H, including b_H

  int constraint_count() const noexcept { return static_cast<int>(objective.size()); }
  int total_dimension() const;

  friend bool operator==(const SdpProblem&, const SdpProblem&) = default;
};

SdpProblem assemble(const FlagAlgebra& algebra);

// Sparse SDPA text. The primal variable holds the M blocks followed by a
// diagonal block of per-graph slacks and lambda as its last entry.
std::string export_sdpa(const SdpProblem& problem);
SdpProblem parse_sdpa(std::string_view text);

struct FloatSolution {
  double lambda = 0.0;
  std::vector<Eigen::MatrixXd> matrices;  // M_sigma
  std::vector<double> slack;              // per-graph slack variables
  std::vector<double> y;                  // dual vector, one entry per graph
  std::string status;
  int iterations = 0;
  std::vector<double> gap_history;  // <X, Z> at every accepted iterate
};

// Solution text in the CSDP layout: the dual vector on line 1, then
// `matno block i j value` with matno 1 for the dual slack and 2 for the primal.
std::string write_solution(const SdpProblem& problem, const FloatSolution& solution);
FloatSolution parse_solution(std::string_view text, const SdpProblem& problem);

// b_H - sum <M, C(H)> in floating point.
std::vector<double> float_slack(const SdpProblem& problem, const std::vector<Eigen::MatrixXd>& matrices);

}  // namespace flagram
