#ifndef LWRNODE_COST_HPP_
#define LWRNODE_COST_HPP_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lwrnode/junction.hpp"
#include "lwrnode/piecewise_path.hpp"

namespace lwrnode {

/// Integrand applied to the node flux vector.
enum class CostKind {
  kSum,            // g1 + ... + gm
  kProduct,        // g1 * ... * gm
  kScaledProduct,  // c * g1 * ... * gm
};

struct CostSpec {
  CostKind kind = CostKind::kSum;
  double scale = 1.0;  // c of kScaledProduct
  double delta = 0.0;  // TV penalty weight
  bool penalize_a = false;
  double horizon = 1.0;
  /// When non-empty, one position per outgoing arc; the flux at that point
  /// is appended to the incoming fluxes before the integrand is applied.
  std::vector<double> outgoing_eval_points;

  void validate() const;
  std::string describe() const;

  bool operator==(const CostSpec&) const = default;
};

/// Applies the integrand to one flux vector.
double evaluate_integrand(const CostSpec& spec, std::span<const double> fluxes);

/// Sampled node traces on the (non-uniform) simulation time mesh.
struct NodeTraces {
  std::vector<double> times;  // step start times
  std::vector<double> dts;
  std::vector<std::vector<double>> incoming;  // [arc][step]
  std::vector<std::vector<double>> outgoing;  // [arc][step], at the node
  std::vector<std::vector<double>> outgoing_at_points;  // [arc][step]

  std::size_t n_steps() const { return times.size(); }
  PiecewiseConstantPath incoming_path(std::size_t i) const;
  PiecewiseConstantPath outgoing_path(std::size_t j) const;
};

/// Left-endpoint quadrature of the integrand over [0, horizon]. Throws
/// std::invalid_argument when the mesh stops short of the horizon.
double integral_cost(const NodeTraces& traces, const CostSpec& spec);

struct CostBreakdown {
  double delta = 0.0;
  double integral = 0.0;
  std::vector<double> tv_incoming;
  double tv_g_total = 0.0;
  double tv_a_total = 0.0;
  double penalized = 0.0;
};

/// integral - delta * sum_i TV(g_i) [- delta * TV(A)].
CostBreakdown penalized_cost(const NodeTraces& traces, const CostSpec& spec,
                             const DistributionMatrixPath& a_path);

/// CSV `delta,integral,tv_g_total,tv_A_total,penalized`.
void write_cost_header(std::ostream& os);
void write_cost_row(std::ostream& os, const CostBreakdown& cost);

}  // namespace lwrnode

#endif  // LWRNODE_COST_HPP_
