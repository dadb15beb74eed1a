#pragma once

#include "flagram/sdp.hpp"

namespace flagram {

struct SolverConfig {
  int max_iterations = 200;
  double duality_gap_tolerance = 1e-9;
  double feasibility_tolerance = 1e-9;
  double step_fraction = 0.98;
  int max_dimension = 200;     // total size of the M blocks
  int max_constraints = 2000;
  bool verbose = false;  // per-iteration trace on stderr

  void validate() const;
};

// Infeasible primal-dual interior point method (HKM direction with a
// Mehrotra predictor-corrector). Status is "optimal", "max_iterations" or
// "stalled"; the last two still carry the best iterate found.
FloatSolution solve(const SdpProblem& problem, const SolverConfig& config = {});

}  // namespace flagram
