#include "lwrnode/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <set>
#include <thread>

#include "lwrnode/csv.hpp"

namespace lwrnode {

namespace {

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Penalized cost of every control; results are stored by index so the
// outcome is independent of scheduling.
std::vector<double> evaluate_all(const Scenario& scenario,
                                 const std::vector<Control>& controls,
                                 unsigned threads) {
  std::vector<double> costs(controls.size());
  const unsigned workers =
      std::min<unsigned>(resolve_threads(threads),
                         static_cast<unsigned>(controls.size()));
  if (workers <= 1) {
    for (std::size_t k = 0; k < controls.size(); ++k) {
      costs[k] = simulate(scenario, controls[k]).cost.penalized;
    }
    return costs;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= controls.size()) return;
      try {
        costs[k] = simulate(scenario, controls[k]).cost.penalized;
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return costs;
}

// Time average of a step trace over [a, b).
double average_over(const NodeTraces& tr, const std::vector<double>& g,
                    double a, double b) {
  double acc = 0.0;
  for (std::size_t k = 0; k < tr.n_steps(); ++k) {
    const double lo = std::max(a, tr.times[k]);
    const double hi = std::min(b, tr.times[k] + tr.dts[k]);
    if (hi > lo) acc += g[k] * (hi - lo);
  }
  return acc / (b - a);
}

DistributionMatrixPath a_path_on(const DistributionMatrixPath& base,
                                 const std::vector<double>& bps) {
  std::vector<DistributionMatrix> mats;
  mats.reserve(bps.size());
  for (double t : bps) mats.push_back(base.at(t));
  return DistributionMatrixPath(bps, std::move(mats));
}

}  // namespace

std::vector<double> control_breakpoints(double horizon,
                                        std::size_t n_intervals) {
  const std::size_t pieces = n_intervals + 1;
  std::vector<double> bps(pieces);
  for (std::size_t k = 0; k < pieces; ++k) {
    bps[k] = horizon * static_cast<double>(k) / static_cast<double>(pieces);
  }
  return bps;
}

Control initial_control(const Scenario& scenario, const SearchConfig& config) {
  const double horizon = scenario.cost.horizon;
  const auto bps = control_breakpoints(horizon, config.n_intervals);
  const std::size_t m = scenario.incoming.size();
  const double fmax = scenario.model().fmax();
  Control c;
  std::optional<SimulationResult> baseline;
  if (config.init_mode == InitMode::kBaselineTrace) {
    baseline = simulate_baseline(scenario);
  }
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> values(bps.size());
    for (std::size_t p = 0; p < bps.size(); ++p) {
      switch (config.init_mode) {
        case InitMode::kBaselineTrace: {
          const double end = p + 1 < bps.size() ? bps[p + 1] : horizon;
          values[p] = std::clamp(
              average_over(baseline->traces, baseline->traces.incoming[i],
                           bps[p], end),
              0.0, fmax);
          break;
        }
        case InitMode::kConstantTheta: values[p] = fmax; break;
        case InitMode::kZero: values[p] = 0.0; break;
      }
    }
    c.inflow.emplace_back(bps, std::move(values));
  }
  if (config.optimize_a) c.a_path = a_path_on(scenario.a_path, bps);
  return c;
}

SearchResult local_search(const Scenario& scenario, const SearchConfig& config,
                          const SearchOptions& options) {
  config.validate();
  const double fmax = scenario.model().fmax();
  const std::size_t m = scenario.incoming.size();

  SearchResult res;
  res.control = options.initial ? *options.initial
                                : initial_control(scenario, config);
  if (res.control.is_baseline() || res.control.inflow.size() != m) {
    throw std::invalid_argument("local_search needs one inflow path per arc");
  }
  if (config.optimize_a && !res.control.a_path) {
    res.control.a_path =
        a_path_on(scenario.a_path, res.control.inflow.front().breakpoints());
  }

  double current = simulate(scenario, res.control).cost.penalized;
  res.evaluations = 1;
  res.initial_cost = current;
  res.cost_history.push_back(current);

  auto budget_left = [&]() -> std::size_t {
    if (config.max_evaluations == 0) return static_cast<std::size_t>(-1);
    return config.max_evaluations > res.evaluations
               ? config.max_evaluations - res.evaluations
               : 0;
  };

  // Evaluates a batch of candidates for one coordinate and commits the best
  // strict improvement. Returns false when the budget ran out.
  auto try_coordinate = [&](std::size_t sweep, std::size_t interval,
                            std::size_t arc_tag, std::vector<double> values,
                            std::vector<Control> candidates,
                            bool& improved) -> bool {
    if (candidates.empty()) return true;
    const std::size_t allowed = budget_left();
    bool exhausted = false;
    if (candidates.size() > allowed) {
      candidates.resize(allowed);
      values.resize(allowed);
      exhausted = true;
    }
    const auto costs = evaluate_all(scenario, candidates, options.threads);
    res.evaluations += costs.size();
    std::size_t best = costs.size();
    double best_cost = current + config.improvement_tol;
    for (std::size_t k = 0; k < costs.size(); ++k) {
      if (options.keep_log) {
        res.log.push_back({sweep, interval, arc_tag, values[k], costs[k]});
      }
      if (costs[k] > best_cost) {
        best_cost = costs[k];
        best = k;
      }
    }
    if (best < costs.size()) {
      res.control = std::move(candidates[best]);
      current = costs[best];
      res.cost_history.push_back(current);
      improved = true;
    }
    if (exhausted) res.budget_exhausted = true;
    return !exhausted;
  };

  const std::size_t pieces = res.control.inflow.front().size();
  bool stop = false;
  std::size_t sweep = 0;
  std::vector<double> steps = config.variation_steps;
  for (std::size_t level = 0; level <= config.max_refinements && !stop;
       ++level) {
    for (std::size_t level_sweep = 0; level_sweep < config.max_sweeps && !stop;
         ++level_sweep, ++sweep) {
      bool improved = false;
      for (std::size_t p = 0; p < pieces && !stop; ++p) {
        for (std::size_t i = 0; i < m && !stop; ++i) {
          const double base = res.control.inflow[i].values().at(p);
          std::vector<double> values;
          std::vector<Control> candidates;
          for (double s : steps) {
            const double v = std::clamp(base + s * fmax, 0.0, fmax);
            if (v == base ||
                std::find(values.begin(), values.end(), v) != values.end()) {
              continue;
            }
            Control c = res.control;
            c.inflow[i].mutable_values()[p] = v;
            values.push_back(v);
            candidates.push_back(std::move(c));
          }
          stop = !try_coordinate(sweep, p, i, std::move(values),
                                 std::move(candidates), improved);
        }
        if (!config.optimize_a || stop) continue;
        // Shift mass between row j and the last row of each column.
        const auto& mats = res.control.a_path->matrices();
        const std::size_t n = mats.front().n_out();
        for (std::size_t i = 0; i < m && !stop; ++i) {
          for (std::size_t j = 0; j + 1 < n && !stop; ++j) {
            const double base = res.control.a_path->matrices()[p](j, i);
            const double rest = res.control.a_path->matrices()[p](n - 1, i);
            std::vector<double> values;
            std::vector<Control> candidates;
            for (double s : steps) {
              const double v = std::clamp(base + s, 0.0, base + rest);
              if (v == base ||
                  std::find(values.begin(), values.end(), v) != values.end()) {
                continue;
              }
              auto new_mats = res.control.a_path->matrices();
              new_mats[p](j, i) = v;
              new_mats[p](n - 1, i) = std::max(0.0, rest - (v - base));
              Control c = res.control;
              c.a_path = DistributionMatrixPath(
                  res.control.a_path->breakpoints(), std::move(new_mats));
              values.push_back(v);
              candidates.push_back(std::move(c));
            }
            stop = !try_coordinate(sweep, p, m + j * m + i, std::move(values),
                                   std::move(candidates), improved);
          }
        }
      }
      ++res.sweeps;
      if (!improved) break;
    }
    for (auto& s : steps) s *= config.refinement_ratio;
  }

  res.best = simulate(scenario, res.control);
  return res;
}

Control control_from_levels(const Scenario& scenario, std::size_t n_pieces,
                            const std::vector<double>& levels,
                            const std::vector<std::size_t>& index) {
  const std::size_t m = scenario.incoming.size();
  const auto bps = control_breakpoints(scenario.cost.horizon, n_pieces - 1);
  Control c;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> values(n_pieces);
    for (std::size_t p = 0; p < n_pieces; ++p) {
      values[p] = levels.at(index.at(i * n_pieces + p));
    }
    c.inflow.emplace_back(bps, std::move(values));
  }
  return c;
}

ExhaustiveResult exhaustive_oracle(const Scenario& scenario,
                                   std::size_t n_pieces,
                                   const std::vector<double>& levels,
                                   unsigned threads,
                                   std::size_t max_combinations) {
  if (n_pieces == 0 || levels.empty()) {
    throw std::invalid_argument("exhaustive oracle needs pieces and levels");
  }
  const std::size_t digits = scenario.incoming.size() * n_pieces;
  std::size_t total = 1;
  for (std::size_t d = 0; d < digits; ++d) {
    if (total > max_combinations / levels.size()) {
      throw BudgetExceeded("exhaustive search exceeds the combination budget");
    }
    total *= levels.size();
  }
  if (total > max_combinations) {
    throw BudgetExceeded("exhaustive search exceeds the combination budget");
  }

  ExhaustiveResult res;
  std::vector<std::vector<std::size_t>> indices;
  std::vector<Control> controls;
  indices.reserve(total);
  controls.reserve(total);
  std::vector<std::size_t> idx(digits, 0);
  for (std::size_t c = 0; c < total; ++c) {
    indices.push_back(idx);
    controls.push_back(control_from_levels(scenario, n_pieces, levels, idx));
    // Mixed-radix increment, last digit fastest.
    for (std::size_t d = digits; d-- > 0;) {
      if (++idx[d] < levels.size()) break;
      idx[d] = 0;
    }
  }
  const auto costs = evaluate_all(scenario, controls, threads);
  std::size_t best = 0;
  for (std::size_t c = 0; c < total; ++c) {
    res.table.emplace_back(indices[c], costs[c]);
    if (costs[c] > costs[best]) best = c;
  }
  res.control = controls[best];
  res.cost = costs[best];
  return res;
}

void write_search_log_csv(std::ostream& os,
                          const std::vector<SearchLogEntry>& log) {
  os << "sweep,interval,arc,candidate,cost\n";
  for (const auto& e : log) {
    os << e.sweep << ',' << e.interval << ',' << e.arc << ','
       << csv::number(e.candidate) << ',' << csv::number(e.cost) << '\n';
  }
}

void write_control_csv(std::ostream& os, const Control& control,
                       double horizon) {
  std::vector<std::string> header{"t_start", "t_end"};
  for (std::size_t i = 0; i < control.inflow.size(); ++i) {
    header.push_back("g" + std::to_string(i + 1));
  }
  csv::write_row(os, header);
  std::set<double> cuts;
  for (const auto& path : control.inflow) {
    cuts.insert(path.breakpoints().begin(), path.breakpoints().end());
  }
  std::vector<double> starts(cuts.begin(), cuts.end());
  for (std::size_t k = 0; k < starts.size(); ++k) {
    if (starts[k] >= horizon) break;
    const double end = k + 1 < starts.size() ? starts[k + 1] : horizon;
    std::vector<double> row{starts[k], std::min(end, horizon)};
    for (const auto& path : control.inflow) row.push_back(path.value_at(starts[k]));
    csv::write_row(os, row);
  }
}

}  // namespace lwrnode
