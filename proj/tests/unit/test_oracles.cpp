#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "lwrnode/oracles.hpp"

using namespace lwrnode;
using oracles::kInfiniteNu;
using oracles::boundary_limit_solution;

namespace {

const FluxModel kQuad = FluxModel::quadratic(4.0, 1.0);
const FluxModel kUnit = FluxModel::quadratic(1.0, 1.0);

}  // namespace

TEST_CASE("limit solution and its boundary trace") {
  CHECK(boundary_limit_solution(kInfiniteNu, 0.5, 0.0) == 0.25);
  CHECK(boundary_limit_solution(kInfiniteNu, 1.59, 0.0) == 0.25);
  CHECK(boundary_limit_solution(kInfiniteNu, 1.6, 0.0) == 0.125);
  CHECK(boundary_limit_solution(kInfiniteNu, 3.0, -0.1) == 0.125);
  CHECK(boundary_limit_solution(kInfiniteNu, 1.0, -0.5) == 0.125);
  CHECK(boundary_limit_solution(kInfiniteNu, 1.0, -0.3) == 0.25);
  CHECK(boundary_limit_solution(kInfiniteNu, 0.0, -2.0) == 0.125);
  CHECK(boundary_limit_solution(kInfiniteNu, 0.0, -0.5) == 0.25);
  // Left continuity in x: the shock point takes the left state.
  CHECK(boundary_limit_solution(kInfiniteNu, 0.0, -1.0) == 0.125);
}

TEST_CASE("limit shock speed satisfies Rankine-Hugoniot") {
  const double s = (kUnit.f(0.25) - kUnit.f(0.125)) / (0.25 - 0.125);
  CHECK(s == doctest::Approx(5.0 / 8.0));
  for (double t : {0.2, 0.8, 1.4}) {
    const double x = -1.0 + s * t;
    CHECK(boundary_limit_solution(kInfiniteNu, t, x - 1e-9) == 0.125);
    CHECK(boundary_limit_solution(kInfiniteNu, t, x + 1e-9) == 0.25);
  }
}

TEST_CASE("finite nu solution") {
  for (double nu : {9.0, 16.0, 100.0}) {
    CAPTURE(nu);
    const double high = 0.75 + 1.0 / nu;
    const double t1 = 8.0 * nu / (5.0 * nu + 8.0);
    const double t2 = 8.0 * nu * nu / ((5.0 * nu + 8.0) * (nu - 8.0));
    // Boundary trace.
    CHECK(boundary_limit_solution(nu, 0.01, 0.0) == high);
    CHECK(boundary_limit_solution(nu, 0.5 * (t1 + t2), 0.0) == high);
    CHECK(boundary_limit_solution(nu, t2, 0.0) == 0.125);
    CHECK(boundary_limit_solution(nu, t2 + 1.0, -0.5) == 0.125);
    // Early structure: 1/8 | 1/4 | high with the back shock at -t/nu.
    const double t = 0.5 * t1;
    CHECK(boundary_limit_solution(nu, t, -1.0 + 5.0 * t / 8.0 - 1e-9) == 0.125);
    CHECK(boundary_limit_solution(nu, t, -t / nu - 1e-9) == 0.25);
    CHECK(boundary_limit_solution(nu, t, -t / nu + 1e-9) == high);
    // Both shocks meet at (t1, -8 / (5 nu + 8)).
    const double xm = -8.0 / (5.0 * nu + 8.0);
    CHECK(-1.0 + 5.0 * t1 / 8.0 == doctest::Approx(xm));
    CHECK(-t1 / nu == doctest::Approx(xm));
    // Late shock: RH speed between 1/8 and the boundary state.
    const double speed =
        (kUnit.f(high) - kUnit.f(0.125)) / (high - 0.125);
    CHECK(speed == doctest::Approx((nu - 8.0) / (8.0 * nu)));
    const double tl = 0.5 * (t1 + t2);
    const double xs = xm + speed * (tl - t1);
    CHECK(boundary_limit_solution(nu, tl, xs - 1e-9) == 0.125);
    CHECK(boundary_limit_solution(nu, tl, xs + 1e-9) == high);
    // The late shock reaches the node at t2.
    CHECK(xm + speed * (t2 - t1) == doctest::Approx(0.0).scale(1.0));
  }
}

TEST_CASE("finite nu converges in L1 to the limit solution") {
  auto l1 = [](double nu, double t) {
    double err = 0.0;
    const int n = 20000;
    for (int k = 0; k < n; ++k) {
      const double x = -3.0 + 3.0 * (k + 0.5) / n;
      err += std::abs(boundary_limit_solution(nu, t, x) -
                      boundary_limit_solution(kInfiniteNu, t, x)) * 3.0 / n;
    }
    return err;
  };
  for (double t : {0.5, 1.0, 1.5}) {
    CHECK(l1(1e3, t) < l1(1e2, t));
    CHECK(l1(1e4, t) < 2e-3);
  }
  // Once the late shock has left, both are the constant 1/8.
  CHECK(l1(1e2, 2.0) == 0.0);
}

TEST_CASE("boundary_limit parameter checks") {
  CHECK_THROWS_AS(boundary_limit_solution(8.0, 1.0, -1.0), std::domain_error);
  CHECK_THROWS_AS(boundary_limit_solution(10.0, -1.0, -1.0), std::domain_error);
  CHECK_THROWS_AS(boundary_limit_solution(10.0, 1.0, 0.5), std::domain_error);
}

TEST_CASE("exact Riemann solutions") {
  CHECK(oracles::exact_riemann(kQuad, 0.3, 0.3, -2.0) == 0.3);
  CHECK(oracles::exact_riemann(kQuad, 0.25, 0.75, -1e-12) == 0.25);
  CHECK(oracles::exact_riemann(kQuad, 0.25, 0.75, 0.0) == 0.25);
  CHECK(oracles::exact_riemann(kQuad, 0.25, 0.75, 1e-12) == 0.75);
  CHECK(oracles::exact_riemann(kQuad, 1.0, 0.0, 0.0) == doctest::Approx(0.5));
  CHECK(oracles::exact_riemann(kQuad, 1.0, 0.0, -4.0) == 1.0);
  CHECK(oracles::exact_riemann(kQuad, 1.0, 0.0, 4.0) == 0.0);
  // Inside the fan f'(u) = xi.
  CHECK(oracles::exact_riemann(kQuad, 1.0, 0.0, 2.0) == doctest::Approx(0.25));
  // Shock with speed 1 - u_l - u_r = 4 (1 - 0.1 - 0.3) = 2.4.
  CHECK(oracles::exact_riemann(kQuad, 0.1, 0.3, 2.3) == 0.1);
  CHECK(oracles::exact_riemann(kQuad, 0.1, 0.3, 2.5) == 0.3);
}

TEST_CASE("Godunov flux equals the flux of the exact solution at xi = 0") {
  for (int a = 0; a <= 50; ++a) {
    for (int b = 0; b <= 50; ++b) {
      const double ul = a / 50.0;
      const double ur = b / 50.0;
      const double exact = kQuad.f(oracles::exact_riemann(kQuad, ul, ur, 0.0));
      REQUIRE(kQuad.godunov_flux(ul, ur) == doctest::Approx(exact).epsilon(1e-12));
    }
  }
}

TEST_CASE("LP vertex oracle examples") {
  const auto a = DistributionMatrix::from_rows({{0.5, 0.3}, {0.5, 0.7}});
  const std::vector<double> one{1.0, 1.0};
  const auto r = oracles::lp_vertex_oracle(a, one, one);
  CHECK(r.gamma[0] == doctest::Approx(1.0));
  CHECK(r.gamma[1] == doctest::Approx(5.0 / 7.0));
  CHECK(r.value == doctest::Approx(12.0 / 7.0));
  // Hand substitution: A (1, 5/7) = (0.714..., 1).
  const auto out = a.apply(r.gamma);
  CHECK(out[1] == doctest::Approx(1.0));
  CHECK(out[0] < 1.0);

  const std::vector<double> zero{0.0, 0.0};
  CHECK(oracles::lp_vertex_oracle(a, zero, one).gamma == zero);

  const auto row = DistributionMatrix::from_rows({{1.0, 1.0, 1.0}});
  const std::vector<double> d{0.3, 0.5, 0.4};
  for (double s : {0.1, 0.9, 1.5}) {
    const std::vector<double> sv{s};
    CHECK(oracles::lp_vertex_oracle(row, d, sv).value ==
          doctest::Approx(std::min(1.2, s)));
  }
}

TEST_CASE("LP vertex oracle output is feasible and optimal among vertices") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto inst = oracles::random_lp_instance(seed);
    const auto r = oracles::lp_vertex_oracle(inst.a, inst.demand, inst.supply);
    CHECK(r.feasible_vertices >= 1);
    for (std::size_t i = 0; i < r.gamma.size(); ++i) {
      CHECK(r.gamma[i] >= 0.0);
      CHECK(r.gamma[i] <= inst.demand[i]);
    }
    const auto out = inst.a.apply(r.gamma);
    for (std::size_t j = 0; j < out.size(); ++j) {
      CHECK(out[j] <= inst.supply[j] + 1e-11);
    }
    // Coordinate vertices (gamma = D_i e_i clipped) never beat it.
    for (std::size_t i = 0; i < r.gamma.size(); ++i) {
      double cap = inst.demand[i];
      for (std::size_t j = 0; j < out.size(); ++j) {
        if (inst.a(j, i) > 0.0) cap = std::min(cap, inst.supply[j] / inst.a(j, i));
      }
      CHECK(cap <= r.value + 1e-11);
    }
  }
}

TEST_CASE("LP vertex oracle size limit") {
  DistributionMatrix a(4, 5);
  for (std::size_t i = 0; i < 5; ++i) a(0, i) = 1.0;
  const std::vector<double> d(5, 1.0), s(4, 1.0);
  CHECK_THROWS_AS(oracles::lp_vertex_oracle(a, d, s), std::invalid_argument);
}

TEST_CASE("random LP instances are reproducible and column stochastic") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto x = oracles::random_lp_instance(seed);
    const auto y = oracles::random_lp_instance(seed);
    CHECK(x.a == y.a);
    CHECK(x.demand == y.demand);
    CHECK(x.a.is_column_stochastic());
    CHECK(x.a.n_in() <= 3);
    CHECK(x.a.n_out() <= 3);
  }
}

TEST_CASE("Godunov solution converges to the closed-form limit") {
  const double e1 = oracles::boundary_limit_l1_error(0.05);
  const double e2 = oracles::boundary_limit_l1_error(0.025);
  const double e3 = oracles::boundary_limit_l1_error(0.0125);
  CHECK(e3 <= 0.02);
  CHECK(std::log2(e1 / e2) >= 0.6);
  CHECK(std::log2(e2 / e3) >= 0.6);
}

TEST_CASE("exact solution has a first-order finite-volume residual") {
  // Cell averages of the limit solution, pushed through one Godunov step,
  // miss the exact averages at the next time by O(dx) in L1.
  auto residual = [](double dx) {
    const int n = static_cast<int>(std::lround(3.0 / dx));
    auto avg = [&](double t, int k) {
      double s = 0.0;
      for (int q = 0; q < 200; ++q) {
        const double x = -3.0 + (k + (q + 0.5) / 200.0) * dx;
        s += boundary_limit_solution(kInfiniteNu, t, x);
      }
      return s / 200.0;
    };
    const double t = 0.7;
    const double dt = 0.5 * dx;
    double err = 0.0;
    std::vector<double> u(n);
    for (int k = 0; k < n; ++k) u[k] = avg(t, k);
    for (int k = 1; k + 1 < n; ++k) {
      const double next = u[k] - dt / dx *
                                     (kUnit.godunov_flux(u[k], u[k + 1]) -
                                      kUnit.godunov_flux(u[k - 1], u[k]));
      err += dx * std::abs(next - avg(t + dt, k));
    }
    return err;
  };
  const double r1 = residual(0.05);
  const double r2 = residual(0.025);
  CHECK(r1 < 0.01);
  CHECK(r2 < r1);
}
