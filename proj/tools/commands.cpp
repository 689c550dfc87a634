#include "commands.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include "lwrnode/cost.hpp"
#include "lwrnode/csv.hpp"
#include "lwrnode/delta_sweep.hpp"
#include "lwrnode/optimizer.hpp"
#include "lwrnode/scenario.hpp"
#include "lwrnode/simulation.hpp"

namespace fs = std::filesystem;

namespace lwrnode::cli {

namespace {

Scenario load(const std::string& name_or_path) {
  try {
    return load_scenario(name_or_path);
  } catch (const std::exception& e) {
    throw BadInput(e.what());
  }
}

void prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw BadInput("cannot create output directory " + dir.string());
  }
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream os(path);
  if (!os) throw BadInput("cannot write " + path.string());
  return os;
}

std::string time_tag(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", t);
  return buf;
}

std::vector<double> snapshot_times_or_default(const Scenario& s,
                                              std::vector<double> times) {
  if (times.empty()) {
    const double horizon = s.cost.horizon;
    return {0.0, 0.5 * horizon, horizon};
  }
  for (double t : times) {
    if (!(t >= 0.0 && t <= s.cost.horizon)) {
      throw BadInput("snapshot time " + time_tag(t) + " outside [0, T]");
    }
  }
  return times;
}

SimulationResult checked_run(const Scenario& s, const Control& control,
                             std::vector<double> snapshot_times) {
  SimulationOptions opts;
  opts.check_invariants = true;
  opts.snapshot_times = std::move(snapshot_times);
  return simulate(s, control, opts);
}

// traces.csv, cost.csv and one `x,u` file per arc and snapshot time.
void write_run(const fs::path& dir, const SimulationResult& r) {
  {
    auto os = open_out(dir / "traces.csv");
    write_node_traces_csv(os, r.traces);
  }
  {
    auto os = open_out(dir / "cost.csv");
    write_cost_header(os);
    write_cost_row(os, r.cost);
  }
  for (const auto& snap : r.snapshots) {
    std::size_t arc = 1;
    auto dump = [&](const ArcState& state) {
      auto os = open_out(dir / ("snapshot_arc" + std::to_string(arc++) +
                                "_t" + time_tag(snap.time) + ".csv"));
      write_snapshot_csv(os, state);
    };
    for (const auto& s : snap.incoming) dump(s);
    for (const auto& s : snap.outgoing) dump(s);
  }
}

Control read_control_csv(const fs::path& path, std::size_t m) {
  csv::Table table;
  try {
    table = csv::read_file(path.string());
  } catch (const std::exception& e) {
    throw BadInput(e.what());
  }
  if (table.header.size() != 2 + m || table.rows.empty()) {
    throw BadInput("control CSV needs t_start,t_end and one column per "
                   "incoming arc");
  }
  std::vector<double> bps;
  std::vector<std::vector<double>> values(m);
  for (const auto& row : table.rows) {
    bps.push_back(row[0]);
    for (std::size_t i = 0; i < m; ++i) values[i].push_back(row[2 + i]);
  }
  Control c;
  try {
    for (auto& v : values) c.inflow.emplace_back(bps, std::move(v));
  } catch (const std::exception& e) {
    throw BadInput(e.what());
  }
  return c;
}

void print_cost(const char* label, const CostBreakdown& c) {
  std::printf("%s: penalized %.6f  integral %.6f  tv_g %.6f\n", label,
              c.penalized, c.integral, c.tv_g_total);
}

}  // namespace

int run_simulate(const SimulateArgs& args) {
  const Scenario s = load(args.scenario);
  if (args.baseline == args.control_csv.has_value()) {
    throw BadInput("simulate needs exactly one of --baseline or --control");
  }
  const auto snaps = snapshot_times_or_default(s, args.snapshot_times);
  prepare_dir(args.out_dir);
  const Control control = args.baseline
                              ? Control{}
                              : read_control_csv(*args.control_csv,
                                                 s.incoming.size());
  const auto r = checked_run(s, control, snaps);
  write_run(args.out_dir, r);
  print_cost(s.name.c_str(), r.cost);
  return kOk;
}

int run_optimize(const OptimizeArgs& args) {
  const Scenario s = load(args.scenario);
  const auto snaps = snapshot_times_or_default(s, args.snapshot_times);
  prepare_dir(args.out_dir);
  SearchOptions options;
  options.threads = args.threads;
  const auto found = local_search(s, s.search, options);
  const auto r = checked_run(s, found.control, snaps);
  write_run(args.out_dir, r);
  {
    auto os = open_out(args.out_dir / "control.csv");
    write_control_csv(os, found.control, s.cost.horizon);
  }
  {
    auto os = open_out(args.out_dir / "progress.csv");
    write_search_log_csv(os, found.log);
  }
  std::printf("%s: start %.6f, %zu sweeps, %zu simulations\n", s.name.c_str(),
              found.initial_cost, found.sweeps, found.evaluations);
  print_cost(s.name.c_str(), r.cost);
  return kOk;
}

int run_sweep(const SweepArgs& args) {
  const Scenario s = load(args.scenario);
  for (double d : args.deltas) {
    if (!(d >= 0.0)) throw BadInput("deltas must be >= 0");
  }
  prepare_dir(args.out_dir);
  SweepSolver solver;
  if (args.exhaustive) {
    const double fmax = s.model().fmax();
    std::vector<double> levels;
    for (double f : args.levels.empty() ? std::vector<double>{0.0, 0.5, 1.0}
                                        : args.levels) {
      if (!(f >= 0.0 && f <= 1.0)) throw BadInput("levels must be in [0, 1]");
      levels.push_back(f * fmax);
    }
    solver = exhaustive_solver(args.pieces, std::move(levels), args.threads);
  } else {
    SearchOptions options;
    options.threads = args.threads;
    options.keep_log = false;
    solver = heuristic_solver(options);
  }
  const auto entries = delta_sweep(s, args.deltas, solver);
  {
    auto os = open_out(args.out_dir / "sweep.csv");
    write_sweep_csv(os, entries);
  }
  for (const auto& e : entries) {
    std::printf("delta %-8g I %.6f\n", e.delta, e.value);
  }
  if (!is_nonincreasing_in_delta(entries, 1e-9)) {
    if (args.exhaustive) {
      throw InvariantViolation("exhaustive I(delta) increases with delta");
    }
    std::cerr << "warning: heuristic I(delta) is not monotone in delta\n";
  }
  return kOk;
}

}  // namespace lwrnode::cli
