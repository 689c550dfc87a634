#include "lwrnode/oracles.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace lwrnode::oracles {

double boundary_limit_solution(double nu, double t, double x) {
  if (!(t >= 0.0) || !(x <= 0.0) || !(nu > 8.0)) {
    throw std::domain_error("boundary_limit_solution: need t >= 0, x <= 0, nu > 8");
  }
  constexpr double kLow = 1.0 / 8.0;
  constexpr double kMid = 1.0 / 4.0;
  if (std::isinf(nu)) {
    if (t < 8.0 / 5.0 && x > -1.0 + 5.0 * t / 8.0) return kMid;
    return kLow;
  }
  const double high = 0.75 + 1.0 / nu;
  const double t1 = 8.0 * nu / (5.0 * nu + 8.0);
  const double t2 = 8.0 * nu * nu / ((5.0 * nu + 8.0) * (nu - 8.0));
  if (t < t1) {
    if (x <= -1.0 + 5.0 * t / 8.0) return kLow;
    if (x <= -t / nu) return kMid;
    return high;
  }
  if (t < t2) {
    const double shock = -8.0 / (5.0 * nu + 8.0) +
                         (nu - 8.0) * ((5.0 * nu + 8.0) * t - 8.0 * nu) /
                             (8.0 * nu * (5.0 * nu + 8.0));
    return x <= shock ? kLow : high;
  }
  return kLow;
}

double exact_riemann(const FluxModel& model, double u_left, double u_right,
                     double xi) {
  model.check_density(u_left);
  model.check_density(u_right);
  if (u_left == u_right) return u_left;
  if (u_left < u_right) {
    const double s =
        (model.f(u_left) - model.f(u_right)) / (u_left - u_right);
    return xi <= s ? u_left : u_right;
  }
  // Rarefaction: f' decreases, so speeds run from f'(u_left) up to f'(u_right).
  if (xi <= model.df(u_left)) return u_left;
  if (xi >= model.df(u_right)) return u_right;
  double lo = u_right;
  double hi = u_left;
  for (int k = 0; k < 200 && hi - lo > 1e-15 * model.umax(); ++k) {
    const double mid = 0.5 * (lo + hi);
    if (model.df(mid) > xi) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

LpSolution lp_vertex_oracle(const DistributionMatrix& a,
                            std::span<const double> demand,
                            std::span<const double> supply) {
  const std::size_t m = a.n_in();
  const std::size_t n = a.n_out();
  if (demand.size() != m || supply.size() != n) {
    throw std::invalid_argument("lp_vertex_oracle: dimension mismatch");
  }
  if (m + n > 8) throw std::invalid_argument("lp_vertex_oracle: m + n > 8");
  if (m == 0) return {};

  // Rows: gamma_i >= 0, gamma_i <= D_i, (A gamma)_j <= S_j.
  const std::size_t k = 2 * m + n;
  Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(k, m);
  Eigen::VectorXd rhs(k);
  for (std::size_t i = 0; i < m; ++i) {
    rows(i, i) = 1.0;
    rhs(i) = 0.0;
    rows(m + i, i) = 1.0;
    rhs(m + i) = demand[i];
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) rows(2 * m + j, i) = a(j, i);
    rhs(2 * m + j) = supply[j];
  }
  double scale = 1.0;
  for (double d : demand) scale = std::max(scale, std::abs(d));
  for (double s : supply) scale = std::max(scale, std::abs(s));
  const double tol = 1e-11 * scale;

  LpSolution best;
  bool found = false;
  auto better = [&](const Eigen::VectorXd& g, double value) {
    if (!found) return true;
    if (value > best.value + tol) return true;
    if (value < best.value - tol) return false;
    for (std::size_t i = 0; i < m; ++i) {
      if (g(i) > best.gamma[i] + tol) return true;
      if (g(i) < best.gamma[i] - tol) return false;
    }
    return false;
  };

  // Walk every m-subset of the k constraints via a selection mask.
  std::vector<bool> mask(k, false);
  std::fill(mask.begin(), mask.begin() + m, true);
  Eigen::MatrixXd sys(m, m);
  Eigen::VectorXd b(m);
  do {
    std::size_t r = 0;
    for (std::size_t c = 0; c < k; ++c) {
      if (!mask[c]) continue;
      sys.row(r) = rows.row(c);
      b(r) = rhs(c);
      ++r;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
    if (lu.rank() < static_cast<Eigen::Index>(m)) continue;
    const Eigen::VectorXd g = lu.solve(b);
    bool feasible = true;
    for (std::size_t c = 0; c < k && feasible; ++c) {
      const double lhs = rows.row(c).dot(g);
      feasible = c < m ? lhs >= -tol : lhs <= rhs(c) + tol;
    }
    if (!feasible) continue;
    ++best.feasible_vertices;
    const double value = g.sum();
    if (better(g, value)) {
      best.gamma.assign(g.data(), g.data() + m);
      best.value = value;
      found = true;
    }
  } while (std::prev_permutation(mask.begin(), mask.end()));

  if (!found) throw std::runtime_error("lp_vertex_oracle: no feasible vertex");
  for (std::size_t i = 0; i < m; ++i) {
    best.gamma[i] = std::clamp(best.gamma[i], 0.0, demand[i]);
  }
  return best;
}

LpInstance random_lp_instance(std::uint64_t seed, std::size_t max_in,
                              std::size_t max_out) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t m = 1 + rng() % max_in;
  const std::size_t n = 1 + rng() % max_out;
  LpInstance inst{DistributionMatrix(n, m), std::vector<double>(m),
                  std::vector<double>(n)};
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> col(n);
    double sum = 0.0;
    for (auto& v : col) {
      v = unit(rng) < 0.2 ? 0.0 : unit(rng);
      sum += v;
    }
    if (sum == 0.0) {
      col[rng() % n] = 1.0;
      sum = 1.0;
    }
    for (std::size_t j = 0; j < n; ++j) inst.a(j, i) = col[j] / sum;
  }
  for (auto& d : inst.demand) d = unit(rng) < 0.1 ? 0.0 : unit(rng);
  for (auto& s : inst.supply) s = unit(rng) < 0.1 ? 0.0 : unit(rng);
  return inst;
}

double boundary_limit_l1_error(double dx, double t_final, double cfl) {
  const auto model = FluxModel::quadratic(1.0, 1.0);
  ArcConfig config;
  config.orientation = Orientation::kIncoming;
  config.x_min = -3.0;
  config.x_max = 0.0;
  config.n_cells = static_cast<std::size_t>(std::lround(3.0 / dx));
  config.initial_datum = [](double x) { return x < -1.0 ? 0.125 : 0.25; };
  ArcState state = make_initial_state(config, model);
  const double boundary = model.f(0.75);
  while (state.time < t_final) {
    const double q = std::min(
        boundary, junction_bound(state, model, Orientation::kIncoming));
    double dt = cfl_dt(state, model, cfl);
    const double ghost_speed = std::abs(
        model.df(junction_ghost_density(model, Orientation::kIncoming, q)));
    if (ghost_speed > 0.0) dt = std::min(dt, cfl * state.dx / ghost_speed);
    if (state.time + dt >= t_final) dt = t_final - state.time;
    step(state, model, Orientation::kIncoming, dt, q);
  }

  // Midpoint rule on a sub-mesh for the distance between the cellwise
  // constant numerical solution and the exact one.
  constexpr int kSub = 1000;
  const double h = state.dx / kSub;
  double err = 0.0;
  for (std::size_t k = 0; k < state.cells.size(); ++k) {
    const double a = state.face_position(k);
    for (int q = 0; q < kSub; ++q) {
      const double x = std::min(a + (q + 0.5) * h, 0.0);
      err += h * std::abs(state.cells[k] -
                          boundary_limit_solution(kInfiniteNu, t_final, x));
    }
  }
  return err;
}

double conservation_residual(const SimulationResult& result,
                             std::size_t grid) {
  if (result.histories.empty() || result.states.empty()) {
    throw std::invalid_argument(
        "conservation_residual needs recorded faces and states");
  }
  const std::size_t m = result.traces.incoming.size();
  auto lattice = [grid](std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> out;
    for (std::size_t g = 0; g < grid; ++g) {
      const double w =
          grid > 1 ? static_cast<double>(g) / static_cast<double>(grid - 1)
                   : 0.0;
      out.push_back(lo + static_cast<std::size_t>(
                             std::lround(w * static_cast<double>(hi - lo))));
    }
    return out;
  };
  double worst = 0.0;
  for (std::size_t l = 0; l < result.histories.size(); ++l) {
    const ArcHistory& h = result.histories[l];
    const auto& states = result.states[l];
    const std::size_t n_cells = h.n_faces - 1;
    for (std::size_t k1 : lattice(0, h.n_steps())) {
      for (std::size_t k2 : lattice(0, h.n_steps())) {
        for (std::size_t f : lattice(1, n_cells - 1)) {
          // Cells [a, b) lie between face f and the junction face.
          const std::size_t a = l < m ? f : 0;
          const std::size_t b = l < m ? n_cells : f;
          auto region_mass = [&](std::size_t k) {
            double s = 0.0;
            for (std::size_t c = a; c < b; ++c) s += states[k][c];
            return s * h.dx;
          };
          double flow = 0.0;
          const std::size_t lo = std::min(k1, k2);
          const std::size_t hi = std::max(k1, k2);
          for (std::size_t s = lo; s < hi; ++s) {
            flow += h.dts[s] * (h.face_flux(s, a) - h.face_flux(s, b));
          }
          if (k2 < k1) flow = -flow;
          worst = std::max(worst,
                           std::abs(region_mass(k2) - region_mass(k1) - flow));
        }
      }
    }
  }
  return worst;
}

}  // namespace lwrnode::oracles
