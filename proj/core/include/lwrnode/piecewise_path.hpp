#ifndef LWRNODE_PIECEWISE_PATH_HPP_
#define LWRNODE_PIECEWISE_PATH_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace lwrnode {

/// Right-continuous step function of time.
///
/// breakpoints[0] is the start of the path (normally t = 0) and values[k]
/// holds on [breakpoints[k], breakpoints[k+1]). Before the first breakpoint
/// the first value is returned.
class PiecewiseConstantPath {
 public:
  PiecewiseConstantPath() = default;
  PiecewiseConstantPath(std::vector<double> breakpoints,
                        std::vector<double> values);

  static PiecewiseConstantPath constant(double value);
  /// n_pieces equal pieces over [0, horizon).
  static PiecewiseConstantPath uniform(double horizon,
                                       std::vector<double> values);

  double value_at(double t) const;
  /// Index of the piece containing t.
  std::size_t piece_at(double t) const;
  /// First breakpoint strictly after t, or +inf.
  double next_breakpoint(double t) const;

  std::size_t size() const { return values_.size(); }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }

  /// Essential variation: sum of jumps at interior breakpoints.
  double total_variation() const;

  /// Inserts a breakpoint at t without changing the represented function.
  PiecewiseConstantPath refined_at(double t) const;

  bool operator==(const PiecewiseConstantPath&) const = default;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

/// Variation of a sampled step function (one value per time step).
double total_variation(std::span<const double> samples);

}  // namespace lwrnode

#endif  // LWRNODE_PIECEWISE_PATH_HPP_
