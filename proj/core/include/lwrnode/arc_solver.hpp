#ifndef LWRNODE_ARC_SOLVER_HPP_
#define LWRNODE_ARC_SOLVER_HPP_

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "lwrnode/flux_model.hpp"
#include "lwrnode/piecewise_path.hpp"

namespace lwrnode {

/// Junction end is the right boundary for incoming arcs, the left one for
/// outgoing arcs.
enum class Orientation { kIncoming, kOutgoing };

/// Treatment of the boundary away from the junction.
enum class FarBoundary {
  kZeroGradient,  // ghost cell copies the adjacent cell
  kClosed,        // zero flux
};

/// Thrown when a step is attempted with a time step above the CFL bound.
class StepSizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a caller breaks a solver precondition, e.g. a junction flux
/// above the local demand or supply.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct ArcConfig {
  Orientation orientation = Orientation::kIncoming;
  double x_min = -5.0;
  double x_max = 0.0;
  std::size_t n_cells = 100;
  std::function<double(double)> initial_datum;
  FarBoundary far_boundary = FarBoundary::kZeroGradient;

  double dx() const { return (x_max - x_min) / static_cast<double>(n_cells); }
  /// Throws std::invalid_argument on an inconsistent geometry.
  void validate() const;
};

struct ArcState {
  std::vector<double> cells;
  double time = 0.0;
  double dx = 0.0;
  double x_min = 0.0;

  double cell_center(std::size_t k) const {
    return x_min + (static_cast<double>(k) + 0.5) * dx;
  }
  double face_position(std::size_t k) const {
    return x_min + static_cast<double>(k) * dx;
  }
  std::size_t junction_cell(Orientation o) const {
    return o == Orientation::kIncoming ? cells.size() - 1 : 0;
  }
};

/// Samples the initial datum at cell midpoints.
ArcState make_initial_state(const ArcConfig& config, const FluxModel& model);

/// Largest |f'| over the cell values. |f'| of a concave flux is maximal at
/// the ends of any density interval, so only the extreme cells are probed.
double max_wave_speed(const ArcState& state, const FluxModel& model);

/// cfl * dx / max|f'|, falling back to the global Lipschitz bound when the
/// state sits at the sonic point.
double cfl_dt(const ArcState& state, const FluxModel& model,
              double cfl_number);

/// Largest junction flux the arc can carry: demand of the junction cell for
/// incoming arcs, supply for outgoing arcs.
double junction_bound(const ArcState& state, const FluxModel& model,
                      Orientation orientation);

/// Density of the virtual state beyond the junction whose Godunov flux
/// against the junction cell equals `junction_flux`.
double junction_ghost_density(const FluxModel& model, Orientation orientation,
                              double junction_flux);

/// One conservative Godunov update. The junction face carries
/// `junction_flux`; interior faces use the Godunov flux. Returns the flux
/// applied at the junction face. When `face_fluxes` is non-empty it must
/// hold n_cells + 1 entries and receives every face flux of the step.
double step(ArcState& state, const FluxModel& model, Orientation orientation,
            double dt, double junction_flux,
            FarBoundary far_boundary = FarBoundary::kZeroGradient,
            std::span<double> face_fluxes = {});

/// dx * sum of cells.
double mass(const ArcState& state);

/// Face fluxes of every step of one arc.
struct ArcHistory {
  double x_min = 0.0;
  double dx = 0.0;
  std::size_t n_faces = 0;
  std::vector<double> times;  // start time of each step
  std::vector<double> dts;
  std::vector<double> face_fluxes;  // step-major, n_faces per step

  void append(double t, double dt, std::span<const double> faces);
  std::size_t n_steps() const { return times.size(); }
  double face_flux(std::size_t step, std::size_t face) const {
    return face_fluxes[step * n_faces + face];
  }
  std::size_t nearest_face(double x0) const;
};

/// Flux trace at the mesh face nearest to x0, one piece per time step.
/// Off-mesh positions are snapped (with a warning on stderr).
PiecewiseConstantPath trace_at(const ArcHistory& history, double x0);

/// CSV with header `x,u`, one row per cell midpoint.
void write_snapshot_csv(std::ostream& os, const ArcState& state);
/// CSV with header `t,flux`.
void write_trace_csv(std::ostream& os, const PiecewiseConstantPath& trace);

}  // namespace lwrnode

#endif  // LWRNODE_ARC_SOLVER_HPP_
