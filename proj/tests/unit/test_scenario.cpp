#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>

#include "lwrnode/scenario.hpp"

using namespace lwrnode;

TEST_CASE("built-in scenario data") {
  const auto c1 = builtin_scenario("case1");
  CHECK(c1.cost.delta == 0.2);
  CHECK(c1.cost.kind == CostKind::kSum);
  CHECK(c1.cost.horizon == 5.0);
  CHECK(c1.search.n_intervals == 20);
  CHECK(c1.dx == 0.05);
  CHECK(c1.incoming[0].datum(-3.0) == 0.47);
  CHECK(c1.incoming[0].datum(-1.5) == 0.25);
  CHECK(c1.incoming[0].datum(-0.5) == 0.5);
  CHECK(c1.incoming[1].datum(-4.0) == 0.5);
  CHECK(c1.outgoing[1].datum(2.0) == 0.1);
  CHECK(c1.a_path.at(0.0) ==
        DistributionMatrix::from_rows({{0.5, 0.3}, {0.5, 0.7}}));

  const auto c2 = builtin_scenario("case2");
  CHECK(c2.cost.kind == CostKind::kScaledProduct);
  CHECK(c2.cost.scale == 50.0);
  CHECK(c2.cost.delta == 0.4);
  CHECK(c2.cost.horizon == 1.1);
  const double x2[] = {-3.0, -1.75, -1.25, -0.75, -0.25};
  const double v2[] = {0.25, 0.0, 0.25, 0.0, 0.5};
  for (int k = 0; k < 5; ++k) CHECK(c2.incoming[0].datum(x2[k]) == v2[k]);

  const auto c3 = builtin_scenario("case3");
  CHECK(c3.cost.delta == 0.0);
  CHECK(c3.cost.kind == CostKind::kProduct);
  CHECK(c3.incoming[0].datum(-1.0) == doctest::Approx(0.5 + 0.3 * std::sin(-2.0)));
  CHECK(c3.incoming[1].datum(-1.0) == 0.2);
  CHECK(c3.outgoing[0].datum(2.0) == doctest::Approx(0.75 + 0.2 * std::cos(2.0)));
  CHECK(c3.outgoing[1].datum(2.0) == 0.1);

  for (const auto& s : {c1, c2, c3}) {
    CHECK(s.flux_c == 4.0);
    CHECK(s.umax == 1.0);
    CHECK(s.layout().incoming[0].n_cells == 100);
    CHECK_NOTHROW(s.validate());
  }
  CHECK_THROWS_AS(builtin_scenario("case4"), std::invalid_argument);
}

TEST_CASE("JSON round trip is bit exact") {
  for (const auto& name : builtin_scenario_names()) {
    const auto s = builtin_scenario(name);
    const auto back = scenario_from_json(scenario_to_json(s));
    CHECK(back == s);
  }
  Scenario odd = builtin_scenario("case3");
  odd.cost.outgoing_eval_points = {0.1 + 0.2, 1.0 / 3.0};
  odd.search.init_mode = InitMode::kConstantTheta;
  odd.search.optimize_a = true;
  odd.cost.penalize_a = true;
  odd.search.variation_steps = {0.3, -1e-17};
  CHECK(scenario_from_json(scenario_to_json(odd)) == odd);
}

TEST_CASE("malformed JSON is reported as bad input") {
  CHECK_THROWS_AS(scenario_from_json("{"), std::invalid_argument);
  CHECK_THROWS_AS(scenario_from_json("{}"), std::invalid_argument);
  auto text = scenario_to_json(builtin_scenario("case1"));
  const std::string key = "\"J\": \"sum\"";
  const auto pos = text.find(key);
  REQUIRE(pos != std::string::npos);
  text.replace(pos, key.size(), "\"J\": \"bogus\"");
  CHECK_THROWS_AS(scenario_from_json(text), std::invalid_argument);
}

TEST_CASE("inconsistent scenarios are rejected") {
  auto s = builtin_scenario("case1");
  s.outgoing.pop_back();
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = builtin_scenario("case1");
  s.dx = 0.03;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = builtin_scenario("case1");
  s.cfl = 1.5;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = builtin_scenario("case1");
  s.incoming[0].datum = DatumSpec::constant(1.5);
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = builtin_scenario("case1");
  s.search.n_intervals = 0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("save and load through a file") {
  const auto path =
      std::filesystem::temp_directory_path() / "lwrnode_scenario_test.json";
  const auto s = builtin_scenario("case2");
  save_scenario(s, path.string());
  CHECK(load_scenario(path.string()) == s);
  std::filesystem::remove(path);
  CHECK(load_scenario("case2") == s);
  CHECK_THROWS_AS(load_scenario("/nonexistent/file.json"),
                  std::invalid_argument);
}

#ifdef LWRNODE_CONFIG_DIR
TEST_CASE("checked-in configs match the built-ins") {
  for (const auto& name : builtin_scenario_names()) {
    const auto path =
        std::filesystem::path(LWRNODE_CONFIG_DIR) / (name + ".json");
    CAPTURE(path.string());
    CHECK(load_scenario(path.string()) == builtin_scenario(name));
  }
}
#endif
