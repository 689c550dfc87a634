#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lwrnode/optimizer.hpp"
#include "tiny_scenario.hpp"

using namespace lwrnode;

namespace {

std::vector<double> values_of(const Control& c) {
  std::vector<double> v;
  for (const auto& p : c.inflow) {
    v.insert(v.end(), p.values().begin(), p.values().end());
  }
  return v;
}

SearchConfig grid_config() {
  // Steps of half a level keep the search on the {0, fmax/2, fmax} grid.
  SearchConfig cfg;
  cfg.n_intervals = 1;
  cfg.variation_steps = {0.5, -0.5, 1.0, -1.0};
  cfg.max_refinements = 0;
  return cfg;
}

}  // namespace

TEST_CASE("uniform control breakpoints") {
  const auto b = control_breakpoints(5.0, 20);
  CHECK(b.size() == 21);
  CHECK(b.front() == 0.0);
  CHECK(b[1] == doctest::Approx(5.0 / 21.0));
  CHECK(std::is_sorted(b.begin(), b.end()));
}

TEST_CASE("initial controls") {
  const auto s = tiny_two_by_two();
  SearchConfig cfg = s.search;
  cfg.init_mode = InitMode::kZero;
  CHECK(values_of(initial_control(s, cfg)) == std::vector<double>(4, 0.0));
  cfg.init_mode = InitMode::kConstantTheta;
  CHECK(values_of(initial_control(s, cfg)) == std::vector<double>(4, 1.0));
  cfg.init_mode = InitMode::kBaselineTrace;
  const auto base = simulate_baseline(s);
  const auto c = initial_control(s, cfg);
  // The average of a piecewise constant trace lies within its range.
  const auto& g = base.traces.incoming[0];
  const auto [lo, hi] = std::minmax_element(g.begin(), g.end());
  CHECK(c.inflow[0].values()[0] >= *lo - 1e-15);
  CHECK(c.inflow[0].values()[0] <= *hi + 1e-15);
}

TEST_CASE("no admissible variation returns the start unchanged") {
  const auto s = tiny_two_by_two();
  SearchConfig cfg = s.search;
  cfg.init_mode = InitMode::kZero;
  cfg.variation_steps = {-0.1, -0.2};
  const auto r = local_search(s, cfg);
  CHECK(values_of(r.control) == std::vector<double>(4, 0.0));
  CHECK(r.cost_history.size() == 1);
  CHECK(r.best.cost.penalized == r.initial_cost);
  CHECK(r.evaluations == 1);
}

TEST_CASE("local search ascends strictly and never ends below its start") {
  auto s = tiny_two_by_two();
  s.cost.delta = 0.1;
  s.search.n_intervals = 3;
  for (auto mode : {InitMode::kZero, InitMode::kConstantTheta,
                    InitMode::kBaselineTrace}) {
    SearchConfig cfg = s.search;
    cfg.init_mode = mode;
    const auto r = local_search(s, cfg);
    for (std::size_t k = 1; k < r.cost_history.size(); ++k) {
      CHECK(r.cost_history[k] > r.cost_history[k - 1] + cfg.improvement_tol);
    }
    CHECK(r.best.cost.penalized >= r.initial_cost);
    CHECK(r.best.cost.penalized == r.cost_history.back());
    for (const auto& p : r.control.inflow) {
      for (double v : p.values()) CHECK((v >= 0.0 && v <= 1.0));
    }
  }
}

TEST_CASE("search results do not depend on the thread count") {
  auto s = tiny_two_by_two();
  s.cost.delta = 0.05;
  s.search.n_intervals = 4;
  SearchOptions one;
  one.threads = 1;
  const auto a = local_search(s, s.search, one);
  for (unsigned t : {2u, 3u, 8u}) {
    SearchOptions many;
    many.threads = t;
    const auto b = local_search(s, s.search, many);
    CHECK(values_of(a.control) == values_of(b.control));
    CHECK(a.cost_history == b.cost_history);
    CHECK(a.log.size() == b.log.size());
    std::ostringstream la, lb;
    write_search_log_csv(la, a.log);
    write_search_log_csv(lb, b.log);
    CHECK(la.str() == lb.str());
  }
}

TEST_CASE("evaluation budget") {
  auto s = tiny_two_by_two();
  SearchConfig cfg = s.search;
  cfg.max_evaluations = 5;
  const auto r = local_search(s, cfg);
  CHECK(r.budget_exhausted);
  CHECK(r.evaluations <= 5);
  CHECK(r.best.cost.penalized >= r.initial_cost);
}

TEST_CASE("exhaustive oracle on one arc and one piece") {
  auto s = tiny_scenario({0.5}, {0.2}, {{1.0}});
  const auto r = exhaustive_oracle(s, 1, {0.0, 1.0});
  REQUIRE(r.table.size() == 2);
  const double c0 = simulate(s, control_from_levels(s, 1, {0.0, 1.0}, {0})).cost.penalized;
  const double c1 = simulate(s, control_from_levels(s, 1, {0.0, 1.0}, {1})).cost.penalized;
  CHECK(r.table[0].second == c0);
  CHECK(r.table[1].second == c1);
  CHECK(r.cost == std::max(c0, c1));
  CHECK(c1 > c0);
}

TEST_CASE("exhaustive oracle refuses oversized grids") {
  const auto s = tiny_two_by_two();
  CHECK_THROWS_AS(exhaustive_oracle(s, 4, {0.0, 0.25, 0.5, 0.75, 1.0}, 1, 1000),
                  BudgetExceeded);
  CHECK_THROWS_AS(exhaustive_oracle(s, 0, {0.0}), std::invalid_argument);
}

TEST_CASE("exhaustive table layout is arc-major with the last digit fastest") {
  const auto s = tiny_two_by_two();
  const std::vector<double> levels{0.0, 0.5, 1.0};
  const auto r = exhaustive_oracle(s, 2, levels, 1);
  REQUIRE(r.table.size() == 81);
  CHECK(r.table[1].first == std::vector<std::size_t>{0, 0, 0, 1});
  CHECK(r.table[3].first == std::vector<std::size_t>{0, 0, 1, 0});
  const auto c = control_from_levels(s, 2, levels, r.table[5].first);
  CHECK(values_of(c) == std::vector<double>{0.0, 0.0, 0.5, 1.0});
  double best = -1e300;
  for (const auto& [idx, cost] : r.table) best = std::max(best, cost);
  CHECK(r.cost == best);
}

TEST_CASE("local search from every grid start gets close to the exhaustive optimum") {
  const auto s = tiny_two_by_two();
  const std::vector<double> levels{0.0, 0.5, 1.0};
  const auto ex = exhaustive_oracle(s, 2, levels, 1);
  const SearchConfig cfg = grid_config();
  for (const auto& [idx, cost] : ex.table) {
    SearchOptions opts;
    opts.initial = control_from_levels(s, 2, levels, idx);
    opts.threads = 1;
    opts.keep_log = false;
    const auto r = local_search(s, cfg, opts);
    CHECK(r.best.cost.penalized >= 0.95 * ex.cost);
    CHECK(r.best.cost.penalized <= ex.cost + 1e-12);
  }
}

TEST_CASE("a symmetric instance has a symmetric optimal control") {
  const auto s =
      tiny_scenario({0.4, 0.4}, {0.3, 0.3}, {{0.5, 0.5}, {0.5, 0.5}});
  const std::vector<double> levels{0.0, 0.5, 1.0};
  const auto ex = exhaustive_oracle(s, 2, levels, 1);
  bool symmetric_optimum = false;
  for (const auto& [idx, cost] : ex.table) {
    const bool sym = idx[0] == idx[2] && idx[1] == idx[3];
    if (sym && std::abs(cost - ex.cost) <= 1e-12) symmetric_optimum = true;
  }
  CHECK(symmetric_optimum);
  // Swapping the two arcs maps the cost table onto itself.
  for (const auto& [idx, cost] : ex.table) {
    const std::size_t swapped = idx[2] * 27 + idx[3] * 9 + idx[0] * 3 + idx[1];
    CHECK(ex.table[swapped].second == doctest::Approx(cost).epsilon(1e-13));
  }
}

TEST_CASE("oracle at delta = 0 is not below a representable baseline") {
  // Full incoming roads and empty outgoing ones: the baseline trace is the
  // constant (1, 5/7), which the level grid contains.
  const auto s =
      tiny_scenario({0.5, 0.5}, {0.0, 0.0}, {{0.5, 0.3}, {0.5, 0.7}});
  const auto base = simulate_baseline(s);
  for (double g : base.traces.incoming[0]) CHECK(g == doctest::Approx(1.0));
  for (double g : base.traces.incoming[1]) CHECK(g == doctest::Approx(5.0 / 7.0));
  const auto ex = exhaustive_oracle(s, 2, {0.0, 5.0 / 7.0, 1.0}, 1);
  CHECK(ex.cost >= base.cost.penalized - 1e-12);
}

TEST_CASE("distribution entries can join the search") {
  auto s = tiny_two_by_two();
  s.search.optimize_a = true;
  s.cost.delta = 0.05;
  s.cost.penalize_a = true;
  const auto r = local_search(s, s.search);
  REQUIRE(r.control.a_path);
  for (const auto& a : r.control.a_path->matrices()) {
    CHECK(a.is_column_stochastic(1e-12));
  }
  CHECK(r.best.cost.penalized >= r.initial_cost);
}

TEST_CASE("control and log CSV layout") {
  Control c;
  c.inflow = {PiecewiseConstantPath({0.0, 0.5}, {0.25, 0.5}),
              PiecewiseConstantPath({0.0, 0.5}, {1.0, 0.0})};
  std::ostringstream os;
  write_control_csv(os, c, 1.0);
  CHECK(os.str() == "t_start,t_end,g1,g2\n0,0.5,0.25,1\n0.5,1,0.5,0\n");
  std::ostringstream ls;
  write_search_log_csv(ls, {{1, 2, 0, 0.5, 3.25}});
  CHECK(ls.str() == "sweep,interval,arc,candidate,cost\n1,2,0,0.5,3.25\n");
}
