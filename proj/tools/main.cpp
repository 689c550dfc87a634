#include <CLI11.hpp>
#include <exception>
#include <iostream>

#include "commands.hpp"
#include "lwrnode/arc_solver.hpp"
#include "lwrnode/simulation.hpp"

using lwrnode::cli::ExitCode;

int main(int argc, char** argv) {
  CLI::App app{"Junction traffic simulator and inflow-control search"};
  app.require_subcommand(1);

  lwrnode::cli::SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run one forward simulation");
  simulate->add_option("scenario", sim.scenario, "Built-in name or JSON file")
      ->required();
  simulate->add_option("-o,--out", sim.out_dir, "Output directory")->required();
  simulate->add_flag("--baseline", sim.baseline,
                     "Use the flux-maximizing junction solver");
  simulate->add_option("--control", sim.control_csv,
                       "Inflow control CSV (t_start,t_end,g1,...)");
  simulate->add_option("--snapshot-times", sim.snapshot_times,
                       "Density snapshot times")
      ->delimiter(',');

  lwrnode::cli::OptimizeArgs opt;
  bool seedless = false;
  auto* optimize = app.add_subcommand("optimize", "Search inflow controls");
  optimize->add_option("scenario", opt.scenario, "Built-in name or JSON file")
      ->required();
  optimize->add_option("-o,--out", opt.out_dir, "Output directory")->required();
  optimize->add_option("--threads", opt.threads,
                       "Worker threads (0 = all cores)");
  // The search draws no random numbers; the flag is accepted for scripts.
  optimize->add_flag("--seedless", seedless, "Accepted; the search is deterministic");
  optimize->add_option("--snapshot-times", opt.snapshot_times,
                       "Density snapshot times")
      ->delimiter(',');

  lwrnode::cli::SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep-delta",
                                   "Best penalized cost per penalty weight");
  sweep->add_option("scenario", sw.scenario, "Built-in name or JSON file")
      ->required();
  sweep->add_option("--deltas", sw.deltas, "Comma-separated penalty weights")
      ->required()
      ->delimiter(',');
  sweep->add_option("-o,--out", sw.out_dir, "Output directory")->required();
  sweep->add_flag("--exhaustive", sw.exhaustive,
                  "Enumerate a level grid instead of the heuristic search");
  sweep->add_option("--pieces", sw.pieces, "Control pieces for --exhaustive");
  sweep->add_option("--levels", sw.levels,
                    "Levels as fractions of fmax for --exhaustive")
      ->delimiter(',');
  sweep->add_option("--threads", sw.threads, "Worker threads (0 = all cores)");

  auto* validate = app.add_subcommand("validate", "Run the oracle suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ExitCode::kOk : ExitCode::kBadInput;
  }

  try {
    if (*simulate) return lwrnode::cli::run_simulate(sim);
    if (*optimize) return lwrnode::cli::run_optimize(opt);
    if (*sweep) return lwrnode::cli::run_sweep(sw);
    if (*validate) return lwrnode::cli::run_validate();
  } catch (const lwrnode::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return ExitCode::kInvariant;
  } catch (const lwrnode::ContractViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return ExitCode::kInvariant;
  } catch (const lwrnode::StepSizeError& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return ExitCode::kInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ExitCode::kBadInput;
  }
  return ExitCode::kBadInput;
}
