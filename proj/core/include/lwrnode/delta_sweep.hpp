#ifndef LWRNODE_DELTA_SWEEP_HPP_
#define LWRNODE_DELTA_SWEEP_HPP_

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "lwrnode/cost.hpp"
#include "lwrnode/optimizer.hpp"
#include "lwrnode/scenario.hpp"
#include "lwrnode/simulation.hpp"

namespace lwrnode {

/// Maximizes the penalized cost of a scenario (whose cost.delta is already
/// set) and returns the argmax control.
using SweepSolver = std::function<Control(const Scenario&)>;

/// Exact maximum over a level grid via exhaustive_oracle.
SweepSolver exhaustive_solver(std::size_t n_pieces, std::vector<double> levels,
                              unsigned threads = 0);
/// Heuristic maximum via local_search with the scenario's search config.
SweepSolver heuristic_solver(SearchOptions options = {});

struct SweepEntry {
  double delta = 0.0;
  /// Best penalized cost found at this delta.
  double value = 0.0;
  CostBreakdown breakdown;
  Control control;
};

/// Runs `solver` once per delta, in the given order. Throws
/// std::invalid_argument on a negative delta.
std::vector<SweepEntry> delta_sweep(const Scenario& scenario,
                                    std::span<const double> deltas,
                                    const SweepSolver& solver);

/// True when value never increases as delta grows (within tol).
bool is_nonincreasing_in_delta(const std::vector<SweepEntry>& entries,
                               double tol = 1e-12);

/// CSV `delta,I,integral,tv_g_total,tv_A_total`.
void write_sweep_csv(std::ostream& os, const std::vector<SweepEntry>& entries);

}  // namespace lwrnode

#endif  // LWRNODE_DELTA_SWEEP_HPP_
