// flagram: certified Ramsey upper bounds with plain flag algebras.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "flagram/error.hpp"
#include "flagram/pipeline.hpp"

using namespace flagram;

namespace {

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw validation_error("cannot write " + path);
  out << text;
}

struct Prepared {
  RamseyProblem problem;
  FlagAlgebra algebra;
  SdpProblem sdp;
};

Prepared prepare(const std::string& file, int threads) {
  Prepared p;
  p.problem = load_problem(file);
  EnumerationOptions eo;
  eo.threads = threads;
  p.algebra = build_algebra(p.problem, eo);
  p.sdp = assemble(p.algebra);
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified upper bounds on Ramsey numbers via plain flag algebras"};
  app.require_subcommand(1);

  std::string problem_file, output, solution_file, certificate_file, coloring_file, external;
  int threads = 1, level = 0, max_iter = 200;
  double tol = 1e-9;
  bool show_flags = false, json = false, verbose = false;

  auto add_threads = [&](CLI::App* c) { c->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber); };
  auto add_solver = [&](CLI::App* c) {
    c->add_option("--tol", tol, "duality gap and feasibility tolerance")->check(CLI::PositiveNumber);
    c->add_option("--max-iter", max_iter, "interior point iteration limit")->check(CLI::PositiveNumber);
    c->add_option("--external", external, "solution file from an external solver");
    c->add_flag("--verbose", verbose, "trace solver iterations");
  };

  auto* enumerate = app.add_subcommand("enumerate", "count admissible graphs, types and flags");
  enumerate->add_option("problem", problem_file)->required();
  enumerate->add_option("--level", level, "graph order (default: flag_order)");
  enumerate->add_flag("--flags", show_flags, "print the hex keys of every graph, type and flag");
  add_threads(enumerate);

  auto* tables = app.add_subcommand("tables", "print objective and product tables");
  tables->add_option("problem", problem_file)->required();
  tables->add_option("-o", output, "output file");
  add_threads(tables);

  auto* exporter = app.add_subcommand("export", "write the SDP in sparse SDPA format");
  exporter->add_option("problem", problem_file)->required();
  exporter->add_option("-o", output, "output file");
  add_threads(exporter);

  auto* solve_cmd = app.add_subcommand("solve", "solve the SDP with the internal solver");
  solve_cmd->add_option("problem", problem_file)->required();
  solve_cmd->add_option("-o", output, "write the solution in CSDP layout");
  add_solver(solve_cmd);
  add_threads(solve_cmd);

  auto* import = app.add_subcommand("import", "read an external solution and report lambda");
  import->add_option("problem", problem_file)->required();
  import->add_option("--solution", solution_file)->required();
  add_threads(import);

  auto* certify_cmd = app.add_subcommand("certify", "round a solution to an exact certificate");
  certify_cmd->add_option("problem", problem_file)->required();
  certify_cmd->add_option("--solution", solution_file, "solution file (default: solve internally)");
  certify_cmd->add_option("-o", output, "certificate file");
  add_threads(certify_cmd);

  auto* verify = app.add_subcommand("verify", "re-check a certificate against its problem");
  verify->add_option("certificate", certificate_file)->required();
  verify->add_option("problem", problem_file)->required();
  add_threads(verify);

  auto* bound = app.add_subcommand("bound", "run the whole pipeline");
  bound->add_option("problem", problem_file)->required();
  bound->add_option("--certificate", certificate_file, "write the certificate here");
  bound->add_option("--witness", coloring_file, "quotient coloring to check delta against");
  bound->add_flag("--json", json, "emit the report as JSON");
  add_solver(bound);
  add_threads(bound);

  auto* witness = app.add_subcommand("witness", "check a quotient coloring and print its density");
  witness->add_option("problem", problem_file)->required();
  witness->add_option("coloring", coloring_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  SolverConfig solver;
  solver.duality_gap_tolerance = tol;
  solver.feasibility_tolerance = tol;
  solver.max_iterations = max_iter;
  solver.verbose = verbose;

  try {
    if (*enumerate) {
      const RamseyProblem problem = load_problem(problem_file);
      const int n = level > 0 ? level : problem.flag_order;
      EnumerationOptions eo;
      eo.threads = threads;
      const auto levels = enumerate_levels(problem, n, eo);
      for (const Basis& b : levels) std::cout << "level " << b.level << ": " << b.size() << " graphs\n";
      if (show_flags) {
        for (const CanonicalKey& k : levels.back().keys) std::cout << k.hex() << "\n";
      }
      if (n == problem.flag_order) {
        for (int s : problem.effective_type_sizes()) {
          const auto types = enumerate_types(problem, s, levels.back());
          std::cout << "types of order " << s << ": " << types.size() << "\n";
          for (const TypeSigma& t : types) {
            auto sigma = std::make_shared<const TypeSigma>(t);
            const auto flags = enumerate_flags(problem, sigma, (n + s) / 2);
            std::cout << "  type " << t.key.hex() << ": " << flags.size() << " flags of order " << (n + s) / 2 << "\n";
            if (show_flags) {
              for (const Flag& f : flags) std::cout << "    " << f.key.hex() << "\n";
            }
          }
        }
      }
    } else if (*tables) {
      const Prepared p = prepare(problem_file, threads);
      emit(format_tables(p.algebra), output);
    } else if (*exporter) {
      const Prepared p = prepare(problem_file, threads);
      emit(export_sdpa(p.sdp), output);
    } else if (*solve_cmd) {
      const Prepared p = prepare(problem_file, threads);
      const FloatSolution sol = external.empty() ? solve(p.sdp, solver) : parse_solution(read_text(external), p.sdp);
      std::cout << "lambda " << sol.lambda << " (" << sol.status << ", " << sol.iterations << " iterations)\n";
      if (!output.empty()) emit(write_solution(p.sdp, sol), output);
    } else if (*import) {
      const Prepared p = prepare(problem_file, threads);
      const FloatSolution sol = parse_solution(read_text(solution_file), p.sdp);
      const auto slack = float_slack(p.sdp, sol.matrices);
      std::cout << "lambda " << sol.lambda << "\nmin slack " << *std::min_element(slack.begin(), slack.end()) << "\n";
    } else if (*certify_cmd) {
      const Prepared p = prepare(problem_file, threads);
      const FloatSolution sol = solution_file.empty() ? solve(p.sdp, solver) : parse_solution(read_text(solution_file), p.sdp);
      const Certificate cert = certify(p.algebra, p.sdp, sol);
      if (!output.empty()) emit(write_certificate(cert), output);
      std::cout << "delta " << to_fraction_string(cert.delta) << " (" << cert.delta.get_d() << ")\nR <= " << cert.bound.get_str() << "\n";
    } else if (*verify) {
      const Prepared p = prepare(problem_file, threads);
      const Certificate cert = parse_certificate(read_text(certificate_file));
      const VerifyResult r = verify_certificate(cert, p.algebra, p.sdp);
      std::cout << r.message << "\n";
      return r.ok ? 0 : 4;
    } else if (*bound) {
      RunOptions options;
      options.threads = threads;
      options.solver = solver;
      options.external_solution = external;
      options.certificate_path = certificate_file;
      options.witness_path = coloring_file;
      const RunReport report = run_bound(problem_file, options);
      std::cout << (json ? report.render_json() + "\n" : report.render_text());
    } else if (*witness) {
      const Rational q = check_witness(problem_file, coloring_file);
      std::cout << "admissible; independent-set density " << to_fraction_string(q) << " (" << q.get_d() << ")\n";
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
