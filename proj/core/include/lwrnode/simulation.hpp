#ifndef LWRNODE_SIMULATION_HPP_
#define LWRNODE_SIMULATION_HPP_

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lwrnode/arc_solver.hpp"
#include "lwrnode/cost.hpp"
#include "lwrnode/junction.hpp"
#include "lwrnode/piecewise_path.hpp"
#include "lwrnode/scenario.hpp"

namespace lwrnode {

/// Raised when a checked run breaks feasibility or flux balance.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Junction controls for a run. An empty `inflow` selects the
/// flux-maximizing Riemann solver at every step.
struct Control {
  std::vector<PiecewiseConstantPath> inflow;
  std::optional<DistributionMatrixPath> a_path;  // overrides the scenario's

  bool is_baseline() const { return inflow.empty(); }
};

struct SimulationOptions {
  bool record_bounds = false;   // demand/supply per step
  bool record_faces = false;    // every face flux of every step
  bool record_states = false;   // every cell of every step
  bool check_invariants = false;
  std::vector<double> snapshot_times;
};

struct Snapshot {
  double time = 0.0;
  std::vector<ArcState> incoming;
  std::vector<ArcState> outgoing;
};

struct SimulationResult {
  NodeTraces traces;
  std::vector<std::vector<double>> demand;  // [arc][step]
  std::vector<std::vector<double>> supply;  // [arc][step]
  std::vector<ArcHistory> histories;        // incoming arcs, then outgoing
  /// states[l][s] are the cells of arc l before step s; the final entry is
  /// the state at the horizon.
  std::vector<std::vector<std::vector<double>>> states;
  std::vector<Snapshot> snapshots;
  std::vector<ArcState> final_incoming;
  std::vector<ArcState> final_outgoing;
  DistributionMatrixPath a_path;
  CostBreakdown cost;
};

SimulationResult simulate(const Scenario& scenario, const Control& control,
                          const SimulationOptions& options = {});

inline SimulationResult simulate_baseline(
    const Scenario& scenario, const SimulationOptions& options = {}) {
  return simulate(scenario, Control{}, options);
}

/// Node traces as CSV `t,g1,...,gm,f{m+1},...,f{m+n}`.
void write_node_traces_csv(std::ostream& os, const NodeTraces& traces);

/// Reads traces written by write_node_traces_csv. Step lengths are
/// reconstructed from consecutive times and the horizon.
NodeTraces read_node_traces_csv(std::istream& is, std::size_t n_in,
                                double horizon);

}  // namespace lwrnode

#endif  // LWRNODE_SIMULATION_HPP_
