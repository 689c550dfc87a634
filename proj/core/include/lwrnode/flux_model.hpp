#ifndef LWRNODE_FLUX_MODEL_HPP_
#define LWRNODE_FLUX_MODEL_HPP_

#include <functional>
#include <string>

namespace lwrnode {

/// Strictly concave flux on [0, umax] with f(0) = f(umax) = 0.
///
/// Besides f and f' the model caches the critical density theta (argmax of
/// f) and fmax = f(theta). Demand and supply are the flux-level envelopes of
/// the density states reachable at a node by waves of nonpositive (demand)
/// or nonnegative (supply) speed; the Godunov flux is min(demand, supply).
///
/// Instances are immutable after construction and safe to share.
class FluxModel {
 public:
  enum class Kind { kQuadratic, kGeneric };

  using Function = std::function<double(double)>;

  /// f(u) = c * u * (umax - u).
  static FluxModel quadratic(double c, double umax);

  /// Generic strictly concave flux given as an (f, f') pair. The pair is
  /// checked for f(0) = f(umax) = 0 and f'(0) > 0 > f'(umax); theta is then
  /// located by bisection on f'.
  static FluxModel generic(double umax, Function f, Function df);

  Kind kind() const { return kind_; }
  double umax() const { return umax_; }
  double theta() const { return theta_; }
  double fmax() const { return fmax_; }
  /// Coefficient c of the quadratic flux; zero for generic fluxes.
  double quadratic_coefficient() const { return c_; }

  double f(double u) const;
  double df(double u) const;

  /// max(|f'(0)|, |f'(umax)|); the global wave-speed bound.
  double lipschitz() const { return lipschitz_; }

  /// The other density with the same flux value; pi(theta) = theta.
  double pi(double u) const;

  double demand(double u) const;
  double supply(double u) const;
  double godunov_flux(double u_left, double u_right) const;

  /// Density in [0, theta] carrying flux q (q clamped to [0, fmax]).
  double free_density(double q) const;
  /// Density in [theta, umax] carrying flux q (q clamped to [0, fmax]).
  double congested_density(double q) const;

  /// Throws std::domain_error when u is outside [0, umax] beyond round-off.
  void check_density(double u) const;

  std::string describe() const;

 private:
  FluxModel() = default;

  double clamp_density(double u) const;
  double inverse_on(double q, double lo, double hi) const;

  Kind kind_ = Kind::kQuadratic;
  double umax_ = 1.0;
  double c_ = 0.0;
  double theta_ = 0.5;
  double fmax_ = 0.0;
  double lipschitz_ = 0.0;
  Function f_;
  Function df_;
};

}  // namespace lwrnode

#endif  // LWRNODE_FLUX_MODEL_HPP_
