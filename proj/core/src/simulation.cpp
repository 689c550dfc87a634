#include "lwrnode/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "lwrnode/csv.hpp"

namespace lwrnode {

namespace {

constexpr double kKirchhoffTol = 1e-14;
constexpr double kFeasibilityTol = 1e-14;

void check_node(const NodeFluxes& fl, const DistributionMatrix& a,
                double fmax, double t) {
  auto fail = [&](const std::string& what) {
    std::ostringstream os;
    os << what << " at t = " << t;
    throw InvariantViolation(os.str());
  };
  const double tol = kFeasibilityTol * fmax;
  for (std::size_t i = 0; i < fl.incoming.size(); ++i) {
    if (fl.incoming[i] < 0.0 || fl.incoming[i] > fl.bounds.demand[i] + tol) {
      fail("inflow outside [0, demand]");
    }
  }
  const auto out = a.apply(fl.incoming);
  for (std::size_t j = 0; j < out.size(); ++j) {
    if (out[j] > fl.bounds.supply[j] + tol) fail("outflow above supply");
    if (std::abs(out[j] - fl.outgoing[j]) > tol) {
      fail("distribution condition broken");
    }
  }
  double sum_in = 0.0;
  double sum_out = 0.0;
  for (double g : fl.incoming) sum_in += g;
  for (double f : fl.outgoing) sum_out += f;
  if (std::abs(sum_in - sum_out) > kKirchhoffTol * fmax) {
    fail("node flux balance broken");
  }
}

Snapshot take_snapshot(const JunctionNetwork& net) {
  Snapshot s;
  s.time = net.time();
  for (std::size_t i = 0; i < net.n_in(); ++i) s.incoming.push_back(net.incoming(i));
  for (std::size_t j = 0; j < net.n_out(); ++j) s.outgoing.push_back(net.outgoing(j));
  return s;
}

}  // namespace

SimulationResult simulate(const Scenario& scenario, const Control& control,
                          const SimulationOptions& options) {
  NodeLayout layout = scenario.layout();
  if (control.a_path) layout.a_path = *control.a_path;
  const std::size_t m = layout.incoming.size();
  const std::size_t n = layout.outgoing.size();
  if (!control.is_baseline() && control.inflow.size() != m) {
    throw std::invalid_argument("need one inflow control per incoming arc");
  }
  const CostSpec& cost = scenario.cost;
  const double horizon = cost.horizon;
  const bool with_points = !cost.outgoing_eval_points.empty();

  JunctionNetwork net(std::move(layout));
  const FluxModel& model = net.model();

  SimulationResult r;
  r.a_path = net.layout().a_path;
  r.traces.incoming.assign(m, {});
  r.traces.outgoing.assign(n, {});
  if (with_points) r.traces.outgoing_at_points.assign(n, {});
  if (options.record_bounds) {
    r.demand.assign(m, {});
    r.supply.assign(n, {});
  }

  std::vector<std::vector<double>> faces(m + n);
  std::vector<std::span<double>> face_spans(m + n);
  for (std::size_t l = 0; l < m + n; ++l) {
    const auto& s = l < m ? net.incoming(l) : net.outgoing(l - m);
    faces[l].resize(s.cells.size() + 1);
    face_spans[l] = faces[l];
    if (options.record_faces) {
      r.histories.push_back({s.x_min, s.dx, s.cells.size() + 1, {}, {}, {}});
    }
  }
  std::vector<std::size_t> point_faces;
  if (with_points) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& s = net.outgoing(j);
      const double pos = (cost.outgoing_eval_points[j] - s.x_min) / s.dx;
      point_faces.push_back(static_cast<std::size_t>(std::clamp(
          std::round(pos), 0.0, static_cast<double>(s.cells.size()))));
    }
  }
  auto record_states = [&] {
    if (!options.record_states) return;
    if (r.states.empty()) r.states.assign(m + n, {});
    for (std::size_t l = 0; l < m + n; ++l) {
      r.states[l].push_back(l < m ? net.incoming(l).cells
                                  : net.outgoing(l - m).cells);
    }
  };

  auto snapshots = options.snapshot_times;
  std::sort(snapshots.begin(), snapshots.end());
  std::size_t next_snapshot = 0;
  auto take_due_snapshots = [&](double t) {
    while (next_snapshot < snapshots.size() &&
           snapshots[next_snapshot] <= t + 1e-12) {
      r.snapshots.push_back(take_snapshot(net));
      ++next_snapshot;
    }
  };

  std::vector<double> request(m);
  double t = 0.0;
  take_due_snapshots(t);
  while (t < horizon) {
    NodeRequest req;
    double next_event = horizon;
    if (!control.is_baseline()) {
      for (std::size_t i = 0; i < m; ++i) {
        request[i] = control.inflow[i].value_at(t);
        next_event = std::min(next_event, control.inflow[i].next_breakpoint(t));
      }
      req.inflow = request;
    }
    next_event = std::min(next_event, net.layout().a_path.next_breakpoint(t));

    NodeFluxes fl = net.node_fluxes(req);
    double t_next = t + net.stable_dt(fl, scenario.cfl);
    if (next_event <= t_next + 1e-9 * (t_next - t)) t_next = next_event;
    if (next_snapshot < snapshots.size() && snapshots[next_snapshot] > t &&
        snapshots[next_snapshot] < t_next) {
      t_next = snapshots[next_snapshot];
    }
    const double dt = t_next - t;

    record_states();
    net.advance_with(fl, dt, face_spans);
    if (options.check_invariants) {
      check_node(fl, net.layout().a_path.at(t), model.fmax(), t);
    }

    r.traces.times.push_back(t);
    r.traces.dts.push_back(dt);
    for (std::size_t i = 0; i < m; ++i) r.traces.incoming[i].push_back(fl.incoming[i]);
    for (std::size_t j = 0; j < n; ++j) r.traces.outgoing[j].push_back(fl.outgoing[j]);
    if (with_points) {
      for (std::size_t j = 0; j < n; ++j) {
        r.traces.outgoing_at_points[j].push_back(faces[m + j][point_faces[j]]);
      }
    }
    if (options.record_bounds) {
      for (std::size_t i = 0; i < m; ++i) r.demand[i].push_back(fl.bounds.demand[i]);
      for (std::size_t j = 0; j < n; ++j) r.supply[j].push_back(fl.bounds.supply[j]);
    }
    if (options.record_faces) {
      for (std::size_t l = 0; l < m + n; ++l) r.histories[l].append(t, dt, faces[l]);
    }

    t = t_next;
    net.set_time(t);
    take_due_snapshots(t);
  }
  record_states();

  for (std::size_t i = 0; i < m; ++i) r.final_incoming.push_back(net.incoming(i));
  for (std::size_t j = 0; j < n; ++j) r.final_outgoing.push_back(net.outgoing(j));
  r.cost = penalized_cost(r.traces, cost, r.a_path);
  return r;
}

void write_node_traces_csv(std::ostream& os, const NodeTraces& traces) {
  const std::size_t m = traces.incoming.size();
  const std::size_t n = traces.outgoing.size();
  csv::write_row(os, node_trace_header(m, n));
  std::vector<double> row(1 + m + n);
  for (std::size_t k = 0; k < traces.n_steps(); ++k) {
    row[0] = traces.times[k];
    for (std::size_t i = 0; i < m; ++i) row[1 + i] = traces.incoming[i][k];
    for (std::size_t j = 0; j < n; ++j) row[1 + m + j] = traces.outgoing[j][k];
    csv::write_row(os, row);
  }
}

NodeTraces read_node_traces_csv(std::istream& is, std::size_t n_in,
                                double horizon) {
  const auto table = csv::read(is);
  if (table.header.size() < 1 + n_in) {
    throw std::runtime_error("trace CSV has too few columns");
  }
  const std::size_t n_out = table.header.size() - 1 - n_in;
  NodeTraces tr;
  tr.incoming.assign(n_in, {});
  tr.outgoing.assign(n_out, {});
  for (const auto& row : table.rows) {
    tr.times.push_back(row[0]);
    for (std::size_t i = 0; i < n_in; ++i) tr.incoming[i].push_back(row[1 + i]);
    for (std::size_t j = 0; j < n_out; ++j) {
      tr.outgoing[j].push_back(row[1 + n_in + j]);
    }
  }
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    const double end = k + 1 < tr.times.size() ? tr.times[k + 1] : horizon;
    tr.dts.push_back(end - tr.times[k]);
  }
  return tr;
}

}  // namespace lwrnode
