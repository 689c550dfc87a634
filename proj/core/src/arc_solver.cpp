#include "lwrnode/arc_solver.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <sstream>

#include "lwrnode/csv.hpp"

namespace lwrnode {

namespace {

constexpr double kSonicFloor = 1e-12;
constexpr double kCflSlack = 1e-12;
constexpr double kFluxSlack = 1e-12;

}  // namespace

void ArcConfig::validate() const {
  if (!(x_min < x_max)) {
    throw std::invalid_argument("arc needs x_min < x_max");
  }
  if (n_cells == 0) {
    throw std::invalid_argument("arc needs at least one cell");
  }
  if (orientation == Orientation::kIncoming && x_max != 0.0) {
    throw std::invalid_argument("incoming arcs must end at the node x = 0");
  }
  if (orientation == Orientation::kOutgoing && x_min != 0.0) {
    throw std::invalid_argument("outgoing arcs must start at the node x = 0");
  }
  if (!initial_datum) {
    throw std::invalid_argument("arc has no initial datum");
  }
}

ArcState make_initial_state(const ArcConfig& config, const FluxModel& model) {
  config.validate();
  ArcState s;
  s.dx = config.dx();
  s.x_min = config.x_min;
  s.cells.resize(config.n_cells);
  for (std::size_t k = 0; k < config.n_cells; ++k) {
    const double u = config.initial_datum(s.cell_center(k));
    model.check_density(u);
    s.cells[k] = std::clamp(u, 0.0, model.umax());
  }
  return s;
}

double max_wave_speed(const ArcState& state, const FluxModel& model) {
  if (state.cells.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(state.cells.begin(),
                                            state.cells.end());
  return std::max(std::abs(model.df(*lo)), std::abs(model.df(*hi)));
}

double cfl_dt(const ArcState& state, const FluxModel& model,
              double cfl_number) {
  if (!(cfl_number > 0.0 && cfl_number <= 1.0)) {
    throw std::invalid_argument("CFL number must lie in (0, 1]");
  }
  double speed = max_wave_speed(state, model);
  if (speed < kSonicFloor) speed = model.lipschitz();
  return cfl_number * state.dx / speed;
}

double junction_bound(const ArcState& state, const FluxModel& model,
                      Orientation orientation) {
  const double u = state.cells[state.junction_cell(orientation)];
  return orientation == Orientation::kIncoming ? model.demand(u)
                                               : model.supply(u);
}

double junction_ghost_density(const FluxModel& model, Orientation orientation,
                              double junction_flux) {
  return orientation == Orientation::kIncoming
             ? model.congested_density(junction_flux)
             : model.free_density(junction_flux);
}

double step(ArcState& state, const FluxModel& model, Orientation orientation,
            double dt, double junction_flux, FarBoundary far_boundary,
            std::span<double> face_fluxes) {
  auto& u = state.cells;
  const std::size_t n = u.size();
  if (!face_fluxes.empty() && face_fluxes.size() != n + 1) {
    throw std::invalid_argument("face flux buffer must hold n_cells + 1");
  }

  const double bound = junction_bound(state, model, orientation);
  if (junction_flux < -kFluxSlack * model.fmax() ||
      junction_flux > bound + kFluxSlack * model.fmax()) {
    std::ostringstream os;
    os << "junction flux " << junction_flux << " outside [0, " << bound
       << "] at t = " << state.time;
    throw ContractViolation(os.str());
  }
  const double applied = std::clamp(junction_flux, 0.0, bound);

  const double ghost = junction_ghost_density(model, orientation, applied);
  const double speed =
      std::max(max_wave_speed(state, model), std::abs(model.df(ghost)));
  if (!(dt > 0.0) || dt * speed > state.dx * (1.0 + kCflSlack)) {
    std::ostringstream os;
    os << "time step " << dt << " violates CFL (max speed " << speed
       << ", dx " << state.dx << ")";
    throw StepSizeError(os.str());
  }

  std::vector<double> local;
  std::span<double> flux = face_fluxes;
  if (flux.empty()) {
    local.resize(n + 1);
    flux = local;
  }
  for (std::size_t k = 1; k < n; ++k) {
    flux[k] = model.godunov_flux(u[k - 1], u[k]);
  }
  const double far = far_boundary == FarBoundary::kClosed
                         ? 0.0
                         : model.f(orientation == Orientation::kIncoming
                                       ? u.front()
                                       : u.back());
  if (orientation == Orientation::kIncoming) {
    flux[0] = far;
    flux[n] = applied;
  } else {
    flux[0] = applied;
    flux[n] = far;
  }

  const double ratio = dt / state.dx;
  for (std::size_t k = 0; k < n; ++k) {
    const double v = u[k] - ratio * (flux[k + 1] - flux[k]);
    // Round-off can leave the monotone update a few ulps outside the range.
    u[k] = std::clamp(v, 0.0, model.umax());
  }
  state.time += dt;
  return applied;
}

double mass(const ArcState& state) {
  return state.dx *
         std::accumulate(state.cells.begin(), state.cells.end(), 0.0);
}

void ArcHistory::append(double t, double dt, std::span<const double> faces) {
  if (faces.size() != n_faces) {
    throw std::invalid_argument("face count mismatch in arc history");
  }
  times.push_back(t);
  dts.push_back(dt);
  face_fluxes.insert(face_fluxes.end(), faces.begin(), faces.end());
}

std::size_t ArcHistory::nearest_face(double x0) const {
  const double pos = std::round((x0 - x_min) / dx);
  const double clamped =
      std::clamp(pos, 0.0, static_cast<double>(n_faces - 1));
  return static_cast<std::size_t>(clamped);
}

PiecewiseConstantPath trace_at(const ArcHistory& history, double x0) {
  if (history.n_steps() == 0) {
    throw std::invalid_argument("empty arc history");
  }
  const std::size_t face = history.nearest_face(x0);
  const double snapped = history.x_min + static_cast<double>(face) * history.dx;
  if (std::abs(snapped - x0) > 1e-9 * history.dx) {
    std::cerr << "warning: trace position " << x0
              << " is not a mesh face; using " << snapped << '\n';
  }
  std::vector<double> values(history.n_steps());
  for (std::size_t s = 0; s < history.n_steps(); ++s) {
    values[s] = history.face_flux(s, face);
  }
  return PiecewiseConstantPath(history.times, std::move(values));
}

void write_snapshot_csv(std::ostream& os, const ArcState& state) {
  os << "x,u\n";
  for (std::size_t k = 0; k < state.cells.size(); ++k) {
    csv::write_row(os, std::vector<double>{state.cell_center(k),
                                           state.cells[k]});
  }
}

void write_trace_csv(std::ostream& os, const PiecewiseConstantPath& trace) {
  os << "t,flux\n";
  for (std::size_t k = 0; k < trace.size(); ++k) {
    csv::write_row(os, std::vector<double>{trace.breakpoints()[k],
                                           trace.values()[k]});
  }
}

}  // namespace lwrnode
