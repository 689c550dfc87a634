#ifndef LWRNODE_SCENARIO_HPP_
#define LWRNODE_SCENARIO_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "lwrnode/cost.hpp"
#include "lwrnode/flux_model.hpp"
#include "lwrnode/junction.hpp"

namespace lwrnode {

/// Serializable initial datum.
struct DatumSpec {
  enum class Kind { kPiecewiseConstant, kSine, kCosine };

  Kind kind = Kind::kPiecewiseConstant;
  // kPiecewiseConstant: values[k] holds on (breaks[k-1], breaks[k]).
  std::vector<double> breaks;
  std::vector<double> values{0.0};
  // kSine / kCosine: offset + amplitude * sin|cos(frequency * x).
  double offset = 0.0;
  double amplitude = 0.0;
  double frequency = 1.0;

  static DatumSpec constant(double value);
  static DatumSpec piecewise(std::vector<double> breaks,
                             std::vector<double> values);
  static DatumSpec sine(double offset, double amplitude, double frequency);
  static DatumSpec cosine(double offset, double amplitude, double frequency);

  double operator()(double x) const;
  void validate() const;

  bool operator==(const DatumSpec&) const = default;
};

struct ArcSpec {
  double x_min = 0.0;
  double x_max = 0.0;
  DatumSpec datum;

  bool operator==(const ArcSpec&) const = default;
};

enum class InitMode { kBaselineTrace, kConstantTheta, kZero };

/// Settings of the coordinate search over piecewise-constant inflows.
struct SearchConfig {
  std::size_t n_intervals = 20;  // discontinuity count; pieces = n + 1
  /// Fractions of fmax for inflow values; plain shares for A entries.
  std::vector<double> variation_steps{0.05, -0.05, 0.10, -0.10};
  std::size_t max_sweeps = 50;  // per refinement level
  double improvement_tol = 1e-6;
  /// After a level converges the steps are scaled by refinement_ratio and
  /// the sweeps resume, up to max_refinements times.
  std::size_t max_refinements = 3;
  double refinement_ratio = 0.5;
  InitMode init_mode = InitMode::kBaselineTrace;
  bool optimize_a = false;
  /// Hard cap on forward simulations; 0 means unlimited.
  std::size_t max_evaluations = 0;

  void validate() const;
  bool operator==(const SearchConfig&) const = default;
};

/// A complete single-node problem instance.
struct Scenario {
  std::string name;
  double flux_c = 4.0;  // quadratic flux c * u * (umax - u)
  double umax = 1.0;
  std::vector<ArcSpec> incoming;
  std::vector<ArcSpec> outgoing;
  DistributionMatrixPath a_path;
  CostSpec cost;
  double dx = 0.05;
  double cfl = 0.9;
  SearchConfig search;

  FluxModel model() const;
  /// Solver-level layout; cell counts follow from dx.
  NodeLayout layout() const;
  /// Throws std::invalid_argument on an inconsistent scenario.
  void validate() const;

  bool operator==(const Scenario&) const = default;
};

/// Built-in node experiments: "case1", "case2", "case3". Throws
/// std::invalid_argument for other names.
Scenario builtin_scenario(const std::string& name);
std::vector<std::string> builtin_scenario_names();

/// JSON text of a scenario (schema in docs/scenario_schema.md).
std::string scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const std::string& text);

/// Accepts a built-in name or a path to a JSON file.
Scenario load_scenario(const std::string& name_or_path);
void save_scenario(const Scenario& scenario, const std::string& path);

}  // namespace lwrnode

#endif  // LWRNODE_SCENARIO_HPP_
