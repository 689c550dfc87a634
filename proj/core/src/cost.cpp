#include "lwrnode/cost.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "lwrnode/csv.hpp"

namespace lwrnode {

void CostSpec::validate() const {
  if (!(delta >= 0.0)) throw std::invalid_argument("delta must be >= 0");
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be > 0");
}

std::string CostSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case CostKind::kSum: os << "J = sum"; break;
    case CostKind::kProduct: os << "J = product"; break;
    case CostKind::kScaledProduct: os << "J = " << scale << " * product"; break;
  }
  os << ", delta = " << delta << ", T = " << horizon;
  if (penalize_a) os << ", TV(A) penalized";
  return os.str();
}

double evaluate_integrand(const CostSpec& spec,
                          std::span<const double> fluxes) {
  switch (spec.kind) {
    case CostKind::kSum: {
      double s = 0.0;
      for (double g : fluxes) s += g;
      return s;
    }
    case CostKind::kProduct:
    case CostKind::kScaledProduct: {
      double p = spec.kind == CostKind::kScaledProduct ? spec.scale : 1.0;
      for (double g : fluxes) p *= g;
      return p;
    }
  }
  return 0.0;
}

PiecewiseConstantPath NodeTraces::incoming_path(std::size_t i) const {
  return PiecewiseConstantPath(times, incoming.at(i));
}

PiecewiseConstantPath NodeTraces::outgoing_path(std::size_t j) const {
  return PiecewiseConstantPath(times, outgoing.at(j));
}

double integral_cost(const NodeTraces& traces, const CostSpec& spec) {
  const std::size_t n = traces.n_steps();
  double covered = 0.0;
  for (double dt : traces.dts) covered += dt;
  if (covered < spec.horizon * (1.0 - 1e-12)) {
    std::ostringstream os;
    os << "trace covers [0, " << covered << "] but the horizon is "
       << spec.horizon;
    throw std::invalid_argument(os.str());
  }
  const bool with_points = !spec.outgoing_eval_points.empty();
  std::vector<double> values(traces.incoming.size() +
                             (with_points ? traces.outgoing_at_points.size()
                                          : 0));
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t0 = traces.times[k];
    if (t0 >= spec.horizon) break;
    const double dt = std::min(traces.dts[k], spec.horizon - t0);
    std::size_t v = 0;
    for (const auto& g : traces.incoming) values[v++] = g[k];
    if (with_points) {
      for (const auto& f : traces.outgoing_at_points) values[v++] = f[k];
    }
    total += evaluate_integrand(spec, values) * dt;
  }
  return total;
}

CostBreakdown penalized_cost(const NodeTraces& traces, const CostSpec& spec,
                             const DistributionMatrixPath& a_path) {
  CostBreakdown c;
  c.delta = spec.delta;
  c.integral = integral_cost(traces, spec);
  for (const auto& g : traces.incoming) {
    c.tv_incoming.push_back(total_variation(g));
    c.tv_g_total += c.tv_incoming.back();
  }
  c.tv_a_total = a_path.total_variation();
  c.penalized = c.integral - spec.delta * c.tv_g_total;
  if (spec.penalize_a) c.penalized -= spec.delta * c.tv_a_total;
  return c;
}

void write_cost_header(std::ostream& os) {
  os << "delta,integral,tv_g_total,tv_A_total,penalized\n";
}

void write_cost_row(std::ostream& os, const CostBreakdown& cost) {
  csv::write_row(os, std::vector<double>{cost.delta, cost.integral,
                                         cost.tv_g_total, cost.tv_a_total,
                                         cost.penalized});
}

}  // namespace lwrnode
