#ifndef LWRNODE_ORACLES_HPP_
#define LWRNODE_ORACLES_HPP_

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "lwrnode/flux_model.hpp"
#include "lwrnode/junction.hpp"
#include "lwrnode/simulation.hpp"

namespace lwrnode::oracles {

inline constexpr double kInfiniteNu = std::numeric_limits<double>::infinity();

/// Explicit solution on x <= 0 for f(u) = u(1 - u), datum 1/8 on x < -1 and
/// 1/4 on (-1, 0), and boundary density 3/4 + 1/nu. nu = kInfiniteNu gives
/// the L1 limit as nu grows. Points on a region boundary take the value of
/// the later time and of the left side in x.
/// Throws std::domain_error unless t >= 0, x <= 0 and nu > 8.
double boundary_limit_solution(double nu, double t, double x);

/// Self-similar solution of the Riemann problem (u_left, u_right) at speed
/// xi = x / t, for a concave flux. A shock resolves to u_left at xi = s.
double exact_riemann(const FluxModel& model, double u_left, double u_right,
                     double xi);

struct LpSolution {
  std::vector<double> gamma;
  double value = 0.0;
  std::size_t feasible_vertices = 0;
};

/// Brute-force solution of max sum(gamma) over 0 <= gamma <= D,
/// A gamma <= S by enumerating every intersection of m active constraints.
/// Ties break toward larger gamma_1, then gamma_2, and so on.
/// Requires m + n <= 8; singular intersections are skipped.
LpSolution lp_vertex_oracle(const DistributionMatrix& a,
                            std::span<const double> demand,
                            std::span<const double> supply);

struct LpInstance {
  DistributionMatrix a;
  std::vector<double> demand;
  std::vector<double> supply;
};

/// Random column-stochastic instance with m <= max_in, n <= max_out,
/// bounds in [0, 1]. Some entries and bounds are zeroed on purpose to hit
/// degenerate vertices. Reproducible from `seed`.
LpInstance random_lp_instance(std::uint64_t seed, std::size_t max_in = 3,
                              std::size_t max_out = 3);

/// L1 distance at t_final between the Godunov solution of the limit
/// setup (boundary flux min(3/16, demand), arc (-3, 0)), taken as a cellwise
/// constant function, and the limit solution.
double boundary_limit_l1_error(double dx, double t_final = 1.0, double cfl = 0.9);

/// Largest residual of the discrete balance
///   mass(k2) - mass(k1) = sum_{k1 <= s < k2} dt_s (F_left - F_right)
/// over the region between an interior face and the junction, sampled on a
/// grid x grid x grid lattice of (k1, k2, face) per arc. Needs a result
/// recorded with record_faces and record_states.
double conservation_residual(const SimulationResult& result,
                             std::size_t grid = 5);

}  // namespace lwrnode::oracles

#endif  // LWRNODE_ORACLES_HPP_
