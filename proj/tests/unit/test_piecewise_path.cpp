#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "lwrnode/piecewise_path.hpp"

using lwrnode::PiecewiseConstantPath;
using lwrnode::total_variation;

TEST_CASE("total variation examples") {
  const PiecewiseConstantPath p({0, 1, 2, 3, 4}, {1, 1, 0.5, 0.5, 0.75});
  CHECK(p.total_variation() == doctest::Approx(0.75));
  CHECK(PiecewiseConstantPath::constant(0.3).total_variation() == 0.0);
  const std::vector<double> samples{0.2, 0.2, 0.7, 0.1};
  CHECK(total_variation(samples) == doctest::Approx(1.1));
  CHECK(total_variation(std::vector<double>{}) == 0.0);
  CHECK(total_variation(std::vector<double>{5.0}) == 0.0);
}

TEST_CASE("right continuity and breakpoints") {
  const PiecewiseConstantPath p({0.0, 1.0, 2.5}, {3.0, 4.0, 5.0});
  CHECK(p.value_at(0.0) == 3.0);
  CHECK(p.value_at(0.999) == 3.0);
  CHECK(p.value_at(1.0) == 4.0);
  CHECK(p.value_at(2.5) == 5.0);
  CHECK(p.value_at(100.0) == 5.0);
  CHECK(p.value_at(-1.0) == 3.0);
  CHECK(p.piece_at(1.7) == 1);
  CHECK(p.next_breakpoint(0.0) == 1.0);
  CHECK(p.next_breakpoint(1.0) == 2.5);
  CHECK(std::isinf(p.next_breakpoint(2.5)));
}

TEST_CASE("uniform paths") {
  const auto p = PiecewiseConstantPath::uniform(5.0, {1, 2, 3, 4});
  CHECK(p.breakpoints() == std::vector<double>{0.0, 1.25, 2.5, 3.75});
  CHECK(p.value_at(4.9) == 4.0);
  CHECK_THROWS(PiecewiseConstantPath::uniform(0.0, {1}));
  CHECK_THROWS(PiecewiseConstantPath::uniform(1.0, {}));
}

TEST_CASE("malformed paths are rejected") {
  CHECK_THROWS(PiecewiseConstantPath({0.0, 0.0}, {1.0, 2.0}));
  CHECK_THROWS(PiecewiseConstantPath({1.0, 0.0}, {1.0, 2.0}));
  CHECK_THROWS(PiecewiseConstantPath({0.0}, {1.0, 2.0}));
  CHECK_THROWS(PiecewiseConstantPath({}, {}));
}

TEST_CASE("refinement with a duplicated value keeps the function and TV") {
  const PiecewiseConstantPath p({0.0, 1.0, 2.0}, {0.1, 0.9, 0.4});
  for (double t : {0.5, 1.5, 3.0, 1.0}) {
    const auto r = p.refined_at(t);
    CHECK(r.total_variation() == doctest::Approx(p.total_variation()));
    for (double s = 0.0; s < 4.0; s += 0.125) CHECK(r.value_at(s) == p.value_at(s));
  }
  CHECK(p.refined_at(0.5).size() == 4);
  CHECK(p.refined_at(1.0).size() == 3);
}

TEST_CASE("TV is positively homogeneous and subadditive") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(12), b(12), sum(12), scaled(12);
    const double lambda = std::abs(u(rng)) * 3.0;
    for (int k = 0; k < 12; ++k) {
      a[k] = u(rng);
      b[k] = u(rng);
      sum[k] = a[k] + b[k];
      scaled[k] = lambda * a[k];
    }
    CHECK(total_variation(scaled) ==
          doctest::Approx(lambda * total_variation(a)).epsilon(1e-12));
    CHECK(total_variation(sum) <=
          total_variation(a) + total_variation(b) + 1e-12);
  }
}

TEST_CASE("TV of a pointwise limit does not exceed the liminf") {
  // Oscillations of shrinking amplitude on top of a fixed step.
  const std::vector<double> limit{0.0, 0.0, 1.0, 1.0, 0.5, 0.5};
  double liminf = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= 200; ++n) {
    std::vector<double> g = limit;
    for (std::size_t k = 0; k < g.size(); ++k) {
      g[k] += (k % 2 ? 1.0 : -1.0) / n;
    }
    liminf = std::min(liminf, total_variation(g));
  }
  CHECK(total_variation(limit) <= liminf + 1e-12);
  // A jump that flattens out: TV of the limit is strictly smaller.
  double tail = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= 200; ++n) {
    const std::vector<double> g{0.0, 1.0 / n, 0.0};
    tail = std::min(tail, total_variation(g));
  }
  CHECK(total_variation(std::vector<double>{0.0, 0.0, 0.0}) <= tail);
}
