#include "flagram/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "flagram/error.hpp"

namespace flagram {

namespace {

template <class Fn>
auto stage(const std::string& name, RunReport& report, Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  auto record = [&] {
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    report.timings.emplace_back(name, elapsed.count());
  };
  try {
    if constexpr (std::is_void_v<decltype(fn())>) {
      fn();
      record();
    } else {
      auto result = fn();
      record();
      return result;
    }
  } catch (const Error& e) {
    throw Error(e.kind(), name + ": " + e.what());
  } catch (const std::exception& e) {
    throw validation_error(name + ": " + e.what());
  }
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string pattern_name(const PlainGraph& g) {
  const int n = g.order;
  const auto e = g.edges.size();
  if (e == static_cast<std::size_t>(n * (n - 1) / 2)) return "K" + std::to_string(n);
  if (e + 1 == static_cast<std::size_t>(n * (n - 1) / 2)) return "K" + std::to_string(n) + "-e";
  return "G(" + std::to_string(n) + "v," + std::to_string(e) + "e)";
}

}  // namespace

std::string describe_problem(const RamseyProblem& p) {
  std::ostringstream out;
  out << "R(";
  for (int i = 0; i < p.colors; ++i) out << (i ? ", " : "") << pattern_name(p.forbidden[static_cast<std::size_t>(i)]);
  out << ")";
  for (const auto& cls : p.colorblind_classes) {
    if (cls.size() < 2) continue;
    out << ", color-blind {";
    for (std::size_t i = 0; i < cls.size(); ++i) out << (i ? "," : "") << cls[i];
    out << "}";
  }
  out << ", flag order " << p.flag_order << ", ell " << p.ell;
  return out.str();
}

RunReport run_bound(const RamseyProblem& problem, const RunOptions& options) {
  RunReport report;
  report.problem_summary = describe_problem(problem);
  EnumerationOptions eo;
  eo.threads = options.threads;

  FlagAlgebra algebra = stage("algebra", report, [&] { return build_algebra(problem, eo); });
  for (const Basis& b : algebra.levels) report.basis_sizes.emplace_back(b.level, b.size());
  for (const ProductTable& t : algebra.tables) {
    report.types.push_back({t.sigma->key.hex(), t.sigma->size(), static_cast<int>(t.dimension())});
  }
  report.fingerprint = fingerprint(algebra);

  SdpProblem sdp = stage("assemble", report, [&] { return assemble(algebra); });
  report.constraints = sdp.constraint_count();

  FloatSolution solution = stage("solve", report, [&] {
    if (!options.external_solution.empty()) return parse_solution(read_text(options.external_solution), sdp);
    return solve(sdp, options.solver);
  });
  report.solver_lambda = solution.lambda;
  report.solver_status = solution.status;
  report.solver_iterations = solution.iterations;

  Certificate cert = stage("certify", report, [&] { return certify(algebra, sdp, solution); });
  report.delta = cert.delta;
  report.bound = cert.bound;

  if (!options.certificate_path.empty()) {
    stage("write", report, [&] {
      std::ofstream out(options.certificate_path);
      if (!out) throw validation_error("cannot write " + options.certificate_path);
      out << write_certificate(cert);
    });
  }
  if (!options.witness_path.empty()) {
    stage("witness", report, [&] {
      const Rational q = check_witness(problem, load_coloring(options.witness_path, problem.colors));
      report.witness_bound = q;
      if (cert.delta > q) {
        throw certification_error("certified delta " + to_fraction_string(cert.delta) + " exceeds the witness density " +
                                  to_fraction_string(q));
      }
    });
  }
  return report;
}

RunReport run_bound(const std::string& problem_file, const RunOptions& options) {
  RunReport dummy;
  RamseyProblem problem = stage("parse", dummy, [&] { return load_problem(problem_file); });
  RunReport report = run_bound(problem, options);
  report.timings.insert(report.timings.begin(), dummy.timings.begin(), dummy.timings.end());
  return report;
}

Rational check_witness(const RamseyProblem& problem, const ColoredGraph& g) {
  if (g.order() < 1) throw validation_error("witness coloring has no vertices");
  for (int u = 0; u < g.order(); ++u) {
    for (int v = u + 1; v < g.order(); ++v) {
      if (g.color(u, v) == kNonEdge) {
        throw validation_error("witness must color every pair; pair " + std::to_string(u + 1) + "-" + std::to_string(v + 1) +
                               " is uncolored");
      }
    }
  }
  for (int i = 0; i < problem.colors; ++i) {
    if (auto copy = find_mono_copy(g, problem.forbidden[static_cast<std::size_t>(i)], static_cast<Color>(i + 1))) {
      std::string vertices;
      std::vector<int> sorted;
      std::copy_if(copy->begin(), copy->end(), std::back_inserter(sorted), [](int v) { return v >= 0; });
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t k = 0; k < sorted.size(); ++k) vertices += (k ? "," : "") + std::to_string(sorted[k] + 1);
      throw validation_error("witness is not admissible: vertices {" + vertices + "} carry a copy of " +
                             pattern_name(problem.forbidden[static_cast<std::size_t>(i)]) + " in color " + std::to_string(i + 1));
    }
  }
  return quotient_density_bound(g, problem.ell);
}

Rational check_witness(const std::string& problem_file, const std::string& coloring_file) {
  const RamseyProblem problem = load_problem(problem_file);
  return check_witness(problem, load_coloring(coloring_file, problem.colors));
}

std::string RunReport::render_text() const {
  std::ostringstream out;
  out << "problem      " << problem_summary << "\n";
  out << "bases       ";
  for (const auto& [level, count] : basis_sizes) out << " n=" << level << ":" << count;
  out << "\n";
  out << "types        " << types.size() << " (";
  int dims = 0;
  for (std::size_t i = 0; i < types.size(); ++i) {
    out << (i ? " " : "") << "s=" << types[i].order << "/" << types[i].flags;
    dims += types[i].flags;
  }
  out << "), total block size " << dims << ", " << constraints << " constraints\n";
  char lam[64];
  std::snprintf(lam, sizeof lam, "%.10f", solver_lambda);
  out << "solver       lambda " << lam << " (" << solver_status << ", " << solver_iterations << " iterations)\n";
  if (delta) out << "certified    delta " << to_fraction_string(*delta) << " ~ " << delta->get_d() << "\n";
  if (witness_bound) out << "witness      density " << to_fraction_string(*witness_bound) << "\n";
  if (bound) out << "result       R <= " << bound->get_str() << "\n";
  out << "fingerprint  " << fingerprint << "\n";
  out << "timings     ";
  for (const auto& [name, secs] : timings) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " %s=%.3fs", name.c_str(), secs);
    out << buf;
  }
  out << "\n";
  return out.str();
}

std::string RunReport::render_json() const {
  nlohmann::ordered_json j;
  j["problem"] = problem_summary;
  j["bases"] = nlohmann::ordered_json::array();
  for (const auto& [level, count] : basis_sizes) j["bases"].push_back({{"level", level}, {"graphs", count}});
  j["types"] = nlohmann::ordered_json::array();
  for (const auto& t : types) j["types"].push_back({{"key", t.label}, {"order", t.order}, {"flags", t.flags}});
  j["constraints"] = constraints;
  j["solver"] = {{"lambda", solver_lambda}, {"status", solver_status}, {"iterations", solver_iterations}};
  j["fingerprint"] = fingerprint;
  if (delta) j["delta"] = {{"exact", to_fraction_string(*delta)}, {"approx", delta->get_d()}};
  if (witness_bound) j["witness_density"] = to_fraction_string(*witness_bound);
  if (bound) j["bound"] = bound->get_str();
  j["timings"] = nlohmann::ordered_json::object();
  for (const auto& [name, secs] : timings) j["timings"][name] = secs;
  return j.dump(2);
}

}  // namespace flagram
