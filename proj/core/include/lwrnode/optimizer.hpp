#ifndef LWRNODE_OPTIMIZER_HPP_
#define LWRNODE_OPTIMIZER_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lwrnode/scenario.hpp"
#include "lwrnode/simulation.hpp"

namespace lwrnode {

/// One evaluated candidate of the coordinate search.
struct SearchLogEntry {
  std::size_t sweep = 0;
  std::size_t interval = 0;
  std::size_t arc = 0;  // incoming arc index; m + k for the k-th A entry
  double candidate = 0.0;
  double cost = 0.0;
};

struct SearchOptions {
  /// Worker threads for candidate evaluation; 0 = hardware concurrency.
  unsigned threads = 0;
  /// Start point; defaults to the one selected by SearchConfig::init_mode.
  std::optional<Control> initial;
  bool keep_log = true;
};

struct SearchResult {
  Control control;
  SimulationResult best;
  double initial_cost = 0.0;
  /// Cost after every accepted move, starting with the initial cost.
  std::vector<double> cost_history;
  std::vector<SearchLogEntry> log;
  std::size_t sweeps = 0;
  std::size_t evaluations = 0;
  bool budget_exhausted = false;
};

/// Uniform partition of [0, T) into n_intervals + 1 pieces.
std::vector<double> control_breakpoints(double horizon,
                                        std::size_t n_intervals);

/// Start control selected by config.init_mode. The baseline-trace start
/// averages the Riemann-solver inflow over each piece.
Control initial_control(const Scenario& scenario, const SearchConfig& config);

/// Coordinate ascent over piecewise-constant inflow controls: for each
/// piece (in time order) and each incoming arc, every value
/// current + step * fmax (clamped to [0, fmax]) is simulated and the best
/// strict improvement is committed. Sweeps repeat until one makes no
/// progress or max_sweeps is hit; the steps are then refined and the sweeps
/// resume. Results do not depend on the thread count.
SearchResult local_search(const Scenario& scenario, const SearchConfig& config,
                          const SearchOptions& options = {});

/// Thrown when an exhaustive enumeration would exceed its budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExhaustiveResult {
  Control control;
  double cost = 0.0;
  /// Level index per (arc, piece), arc-major, and the resulting cost.
  std::vector<std::pair<std::vector<std::size_t>, double>> table;
};

/// Evaluates every control that takes one of `levels` on each of `n_pieces`
/// uniform pieces for every incoming arc. Refuses more than max_combinations.
ExhaustiveResult exhaustive_oracle(const Scenario& scenario,
                                   std::size_t n_pieces,
                                   const std::vector<double>& levels,
                                   unsigned threads = 0,
                                   std::size_t max_combinations = 100000);

/// Builds the control encoded by one row of an exhaustive table.
Control control_from_levels(const Scenario& scenario, std::size_t n_pieces,
                            const std::vector<double>& levels,
                            const std::vector<std::size_t>& index);

/// CSV `sweep,interval,arc,candidate,cost`.
void write_search_log_csv(std::ostream& os,
                          const std::vector<SearchLogEntry>& log);
/// CSV `t_start,t_end,g1,...,gm`.
void write_control_csv(std::ostream& os, const Control& control,
                       double horizon);

}  // namespace lwrnode

#endif  // LWRNODE_OPTIMIZER_HPP_
