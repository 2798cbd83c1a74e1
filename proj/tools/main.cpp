#include "cli/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace handsoff::cli;

  CLI::App app{"Maximum hands-off (sparsest) control for LTI systems"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve for one initial state and write the solution JSON");
  solve_cmd->add_option("--system", solve.system, "Plant JSON file")->required();
  solve_cmd->add_option("--xi", solve.xi, "Initial state, comma separated")->required();
  solve_cmd->add_option("--n", solve.cells, "Number of grid cells");
  solve_cmd->add_option("--out", solve.out, "Output path (stdout if omitted)");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate V along a segment and write CSV");
  sweep_cmd->add_option("--system", sweep.system, "Plant JSON file")->required();
  sweep_cmd->add_option("--from", sweep.from, "Segment start, comma separated")->required();
  sweep_cmd->add_option("--to", sweep.to, "Segment end, comma separated")->required();
  sweep_cmd->add_option("--points", sweep.points, "Number of samples (>= 2)")->required();
  sweep_cmd->add_option("--n", sweep.cells, "Number of grid cells");
  sweep_cmd->add_option("--out", sweep.out, "CSV output path")->required();
  sweep_cmd->add_option("--threads", sweep.threads, "Worker threads (overrides HANDSOFF_THREADS)");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run property suites and write a JSON report");
  verify_cmd->add_option("--system", verify.system, "Plant JSON file")->required();
  verify_cmd->add_option("--suite", verify.suite, "Suite to run")
      ->check(CLI::IsMember({"bangoffbang", "convexity", "continuity", "levelset", "oracle1d", "all"}));
  verify_cmd->add_option("--seed", verify.seed, "Sampling seed");
  verify_cmd->add_option("--samples", verify.samples, "Samples per suite");
  verify_cmd->add_option("--n", verify.cells, "Number of grid cells");
  verify_cmd->add_option("--out", verify.out, "Report path (stdout if omitted)");
  verify_cmd->add_option("--threads", verify.threads, "Worker threads (overrides HANDSOFF_THREADS)");

  Oracle1dArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle1d", "Closed-form reachable bound, switching time and V");
  oracle_cmd->add_option("--a", oracle.a, "State coefficient (< 0)")->required();
  oracle_cmd->add_option("--b", oracle.b, "Input coefficient (!= 0)")->required();
  oracle_cmd->add_option("--T", oracle.horizon, "Horizon (> 0)")->required();
  oracle_cmd->add_option("--xi", oracle.xi, "Initial state")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  if (*solve_cmd) return run_solve(solve, std::cout, std::cerr);
  if (*sweep_cmd) return run_sweep(sweep, std::cout, std::cerr);
  if (*verify_cmd) return run_verify(verify, std::cout, std::cerr);
  return run_oracle1d(oracle, std::cout, std::cerr);
}
