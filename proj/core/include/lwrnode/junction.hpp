#ifndef LWRNODE_JUNCTION_HPP_
#define LWRNODE_JUNCTION_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lwrnode/arc_solver.hpp"
#include "lwrnode/flux_model.hpp"

namespace lwrnode {

/// n x m matrix; entry (j, i) is the share of incoming arc i routed to
/// outgoing arc j.
class DistributionMatrix {
 public:
  DistributionMatrix() = default;
  DistributionMatrix(std::size_t n_out, std::size_t n_in);
  /// Row-major rows, one per outgoing arc.
  static DistributionMatrix from_rows(
      const std::vector<std::vector<double>>& rows);

  std::size_t n_out() const { return n_out_; }
  std::size_t n_in() const { return n_in_; }
  double operator()(std::size_t j, std::size_t i) const {
    return data_[j * n_in_ + i];
  }
  double& operator()(std::size_t j, std::size_t i) {
    return data_[j * n_in_ + i];
  }

  /// A * gamma.
  std::vector<double> apply(std::span<const double> gamma) const;

  /// Entries in [0, 1] and every column summing to one.
  bool is_column_stochastic(double tol = 1e-12) const;
  /// Throws std::invalid_argument when not column stochastic.
  void validate() const;

  std::vector<std::vector<double>> rows() const;

  bool operator==(const DistributionMatrix&) const = default;

 private:
  std::size_t n_out_ = 0;
  std::size_t n_in_ = 0;
  std::vector<double> data_;
};

/// Right-continuous piecewise-constant matrix-valued path.
class DistributionMatrixPath {
 public:
  DistributionMatrixPath() = default;
  explicit DistributionMatrixPath(DistributionMatrix constant);
  DistributionMatrixPath(std::vector<double> breakpoints,
                         std::vector<DistributionMatrix> matrices);

  const DistributionMatrix& at(double t) const;
  double next_breakpoint(double t) const;
  /// Sum over entries of the variation of each entry path.
  double total_variation() const;

  std::size_t n_out() const { return matrices_.front().n_out(); }
  std::size_t n_in() const { return matrices_.front().n_in(); }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<DistributionMatrix>& matrices() const { return matrices_; }

  bool operator==(const DistributionMatrixPath&) const = default;

 private:
  std::vector<double> breakpoints_;
  std::vector<DistributionMatrix> matrices_;
};

/// Demand of every incoming arc and supply of every outgoing arc.
struct GammaBounds {
  std::vector<double> demand;
  std::vector<double> supply;
};

/// Projects a requested inflow vector onto the admissible polytope
/// {0 <= gamma_i <= D_i, (A gamma)_j <= S_j}: demand clipping followed by a
/// single uniform scaling, which keeps the split ratios of the request.
std::vector<double> clip_control(std::span<const double> requested,
                                 const DistributionMatrix& a,
                                 std::span<const double> demand,
                                 std::span<const double> supply);

/// Flux-maximizing junction Riemann solver: maximizes sum(gamma) over the
/// admissible polytope, ties broken by lexicographic maximization of
/// (gamma_1, gamma_2, ...). Solved with a bounded-size lexicographic simplex.
std::vector<double> junction_riemann_solver(const DistributionMatrix& a,
                                            std::span<const double> demand,
                                            std::span<const double> supply);

/// Per-arc geometry of a single node.
struct NodeLayout {
  FluxModel model;
  std::vector<ArcConfig> incoming;
  std::vector<ArcConfig> outgoing;
  DistributionMatrixPath a_path;
};

/// Requested node fluxes for one step: either explicit inflow controls or
/// the flux-maximizing Riemann solver.
struct NodeRequest {
  std::optional<std::vector<double>> inflow;  // nullopt: Riemann solver

  static NodeRequest riemann_solver() { return {}; }
  static NodeRequest controls(std::vector<double> g) { return {std::move(g)}; }
};

/// Realized node state for one step.
struct NodeFluxes {
  GammaBounds bounds;
  std::vector<double> incoming;  // realized gamma
  std::vector<double> outgoing;  // A gamma
};

/// m incoming and n outgoing arcs meeting at x = 0.
class JunctionNetwork {
 public:
  explicit JunctionNetwork(NodeLayout layout);

  const FluxModel& model() const { return layout_.model; }
  const NodeLayout& layout() const { return layout_; }
  std::size_t n_in() const { return incoming_.size(); }
  std::size_t n_out() const { return outgoing_.size(); }
  double time() const { return time_; }
  /// Pins the clock after a step that was cut to land on a breakpoint.
  void set_time(double t) { time_ = t; }

  const ArcState& incoming(std::size_t i) const { return incoming_[i]; }
  const ArcState& outgoing(std::size_t j) const { return outgoing_[j]; }

  GammaBounds gamma_bounds() const;

  /// Node fluxes the next step would apply.
  NodeFluxes node_fluxes(const NodeRequest& request) const;

  /// Largest CFL-stable step for the given node fluxes: the minimum over
  /// arcs, including the virtual junction states.
  double stable_dt(const NodeFluxes& fluxes, double cfl_number) const;

  /// Steps every arc by dt with the node fluxes of `request`. Face fluxes of
  /// arc l (incoming first) are written to face_fluxes[l] when that span is
  /// non-empty.
  NodeFluxes advance(const NodeRequest& request, double dt,
                     std::span<const std::span<double>> face_fluxes = {});

  /// Steps with precomputed node fluxes (from node_fluxes()); the fluxes are
  /// overwritten with the values the arcs actually applied.
  void advance_with(NodeFluxes& fluxes, double dt,
                    std::span<const std::span<double>> face_fluxes = {});

 private:
  NodeLayout layout_;
  std::vector<ArcState> incoming_;
  std::vector<ArcState> outgoing_;
  double time_ = 0.0;
};

/// CSV `t,g1,...,gm,f{m+1},...,f{m+n}` header for node traces.
std::vector<std::string> node_trace_header(std::size_t m, std::size_t n);

}  // namespace lwrnode

#endif  // LWRNODE_JUNCTION_HPP_
