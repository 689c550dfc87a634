#include "lwrnode/piecewise_path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace lwrnode {

PiecewiseConstantPath::PiecewiseConstantPath(std::vector<double> breakpoints,
                                             std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.empty() || breakpoints_.size() != values_.size()) {
    throw std::invalid_argument(
        "piecewise path needs one value per breakpoint and at least one piece");
  }
  if (!std::is_sorted(breakpoints_.begin(), breakpoints_.end()) ||
      std::adjacent_find(breakpoints_.begin(), breakpoints_.end()) !=
          breakpoints_.end()) {
    throw std::invalid_argument("breakpoints must be strictly increasing");
  }
}

PiecewiseConstantPath PiecewiseConstantPath::constant(double value) {
  return PiecewiseConstantPath({0.0}, {value});
}

PiecewiseConstantPath PiecewiseConstantPath::uniform(
    double horizon, std::vector<double> values) {
  if (values.empty() || !(horizon > 0.0)) {
    throw std::invalid_argument("uniform path needs values and horizon > 0");
  }
  const std::size_t n = values.size();
  std::vector<double> bps(n);
  for (std::size_t k = 0; k < n; ++k) {
    bps[k] = horizon * static_cast<double>(k) / static_cast<double>(n);
  }
  return PiecewiseConstantPath(std::move(bps), std::move(values));
}

std::size_t PiecewiseConstantPath::piece_at(double t) const {
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  if (it == breakpoints_.begin()) return 0;
  return static_cast<std::size_t>(std::distance(breakpoints_.begin(), it)) - 1;
}

double PiecewiseConstantPath::value_at(double t) const {
  return values_[piece_at(t)];
}

double PiecewiseConstantPath::next_breakpoint(double t) const {
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  return it == breakpoints_.end() ? std::numeric_limits<double>::infinity()
                                  : *it;
}

double PiecewiseConstantPath::total_variation() const {
  return lwrnode::total_variation(values_);
}

PiecewiseConstantPath PiecewiseConstantPath::refined_at(double t) const {
  if (std::binary_search(breakpoints_.begin(), breakpoints_.end(), t)) {
    return *this;
  }
  const double v = value_at(t);
  auto bps = breakpoints_;
  auto vals = values_;
  auto it = std::upper_bound(bps.begin(), bps.end(), t);
  const auto pos = std::distance(bps.begin(), it);
  bps.insert(it, t);
  vals.insert(vals.begin() + pos, v);
  return PiecewiseConstantPath(std::move(bps), std::move(vals));
}

double total_variation(std::span<const double> samples) {
  double tv = 0.0;
  for (std::size_t k = 1; k < samples.size(); ++k) {
    tv += std::abs(samples[k] - samples[k - 1]);
  }
  return tv;
}

}  // namespace lwrnode
