#include "lwrnode/flux_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace lwrnode {

namespace {

constexpr double kDomainSlack = 1e-12;
constexpr int kMaxBisection = 200;

}  // namespace

FluxModel FluxModel::quadratic(double c, double umax) {
  if (!(c > 0.0) || !(umax > 0.0)) {
    throw std::invalid_argument("quadratic flux needs c > 0 and umax > 0");
  }
  FluxModel m;
  m.kind_ = Kind::kQuadratic;
  m.c_ = c;
  m.umax_ = umax;
  m.theta_ = 0.5 * umax;
  m.fmax_ = 0.25 * c * umax * umax;
  m.lipschitz_ = c * umax;
  return m;
}

FluxModel FluxModel::generic(double umax, Function f, Function df) {
  if (!(umax > 0.0) || !f || !df) {
    throw std::invalid_argument("generic flux needs umax > 0 and both f, f'");
  }
  if (f(0.0) != 0.0 || f(umax) != 0.0) {
    throw std::invalid_argument("flux must vanish exactly at 0 and umax");
  }
  if (!(df(0.0) > 0.0) || !(df(umax) < 0.0)) {
    throw std::invalid_argument("flux needs f'(0) > 0 > f'(umax)");
  }
  FluxModel m;
  m.kind_ = Kind::kGeneric;
  m.umax_ = umax;
  m.f_ = std::move(f);
  m.df_ = std::move(df);

  // f' is strictly decreasing; bisect for its root.
  double lo = 0.0;
  double hi = umax;
  for (int it = 0; it < kMaxBisection && hi - lo > 1e-12 * umax; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (m.df_(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  m.theta_ = 0.5 * (lo + hi);
  m.fmax_ = m.f_(m.theta_);
  m.lipschitz_ = std::max(std::abs(m.df_(0.0)), std::abs(m.df_(umax)));
  return m;
}

void FluxModel::check_density(double u) const {
  if (!(u >= -kDomainSlack * umax_ && u <= umax_ * (1.0 + kDomainSlack))) {
    std::ostringstream os;
    os << "density " << u << " outside [0, " << umax_ << "]";
    throw std::domain_error(os.str());
  }
}

double FluxModel::clamp_density(double u) const {
  check_density(u);
  return std::clamp(u, 0.0, umax_);
}

double FluxModel::f(double u) const {
  if (kind_ == Kind::kQuadratic) {
    return c_ * u * (umax_ - u);
  }
  return f_(u);
}

double FluxModel::df(double u) const {
  if (kind_ == Kind::kQuadratic) {
    return c_ * (umax_ - 2.0 * u);
  }
  return df_(u);
}

double FluxModel::pi(double u) const {
  u = clamp_density(u);
  if (kind_ == Kind::kQuadratic) {
    return umax_ - u;
  }
  if (u == theta_) {
    return theta_;
  }
  const double q = f(u);
  return u < theta_ ? congested_density(q) : free_density(q);
}

double FluxModel::demand(double u) const {
  u = clamp_density(u);
  return u <= theta_ ? f(u) : fmax_;
}

double FluxModel::supply(double u) const {
  u = clamp_density(u);
  return u <= theta_ ? fmax_ : f(u);
}

double FluxModel::godunov_flux(double u_left, double u_right) const {
  return std::min(demand(u_left), supply(u_right));
}

double FluxModel::inverse_on(double q, double lo, double hi) const {
  // f is monotone on [lo, hi]; the bracket orientation follows f(lo) vs f(hi).
  const bool increasing = f(hi) >= f(lo);
  for (int it = 0; it < kMaxBisection && hi - lo > 1e-15 * umax_; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < q) == increasing) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (std::abs(fm - q) <= 1e-14 * fmax_) {
      return mid;
    }
  }
  return 0.5 * (lo + hi);
}

double FluxModel::free_density(double q) const {
  q = std::clamp(q, 0.0, fmax_);
  if (kind_ == Kind::kQuadratic) {
    const double disc = std::max(0.0, 0.25 * umax_ * umax_ - q / c_);
    return 0.5 * umax_ - std::sqrt(disc);
  }
  if (q == 0.0) return 0.0;
  return inverse_on(q, 0.0, theta_);
}

double FluxModel::congested_density(double q) const {
  q = std::clamp(q, 0.0, fmax_);
  if (kind_ == Kind::kQuadratic) {
    const double disc = std::max(0.0, 0.25 * umax_ * umax_ - q / c_);
    return 0.5 * umax_ + std::sqrt(disc);
  }
  if (q == 0.0) return umax_;
  return inverse_on(q, theta_, umax_);
}

std::string FluxModel::describe() const {
  std::ostringstream os;
  if (kind_ == Kind::kQuadratic) {
    os << "f(u) = " << c_ << " u (" << umax_ << " - u)";
  } else {
    os << "generic concave flux on [0, " << umax_ << "]";
  }
  return os.str();
}

}  // namespace lwrnode
