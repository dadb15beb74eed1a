#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flagram/certify.hpp"
#include "flagram/solver.hpp"

namespace flagram {

struct RunOptions {
  int threads = 1;
  SolverConfig solver;
  std::string external_solution;  // skip the internal solver when set
  std::string certificate_path;   // write the certificate here when set
  std::string witness_path;       // check delta against this quotient coloring when set
};

struct TypeSummary {
  std::string label;
  int order = 0;
  int flags = 0;
};

struct RunReport {
  std::string problem_summary;
  std::vector<std::pair<int, std::size_t>> basis_sizes;  // (level, count)
  std::vector<TypeSummary> types;
  int constraints = 0;
  double solver_lambda = 0.0;
  std::string solver_status;
  int solver_iterations = 0;
  std::string fingerprint;
  std::optional<Rational> delta;
  std::optional<Integer> bound;
  std::optional<Rational> witness_bound;
  std::vector<std::pair<std::string, double>> timings;  // seconds per stage

  std::string render_text() const;
  std::string render_json() const;
};

// Human-readable one-line description such as "R(K3, K3), color-blind {1,2}".
std::string describe_problem(const RamseyProblem& problem);

RunReport run_bound(const RamseyProblem& problem, const RunOptions& options = {});
RunReport run_bound(const std::string& problem_file, const RunOptions& options = {});

// Validates a complete quotient coloring and returns (1/m)^(ell-1).
Rational check_witness(const RamseyProblem& problem, const ColoredGraph& coloring);
Rational check_witness(const std::string& problem_file, const std::string& coloring_file);

}  // namespace flagram
