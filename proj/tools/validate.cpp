#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

#include "commands.hpp"
#include "lwrnode/flux_model.hpp"
#include "lwrnode/junction.hpp"
#include "lwrnode/oracles.hpp"
#include "lwrnode/scenario.hpp"
#include "lwrnode/simulation.hpp"

namespace lwrnode::cli {

namespace {

struct Suite {
  std::string name;
  std::function<std::string()> run;  // empty string on success
};

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

std::string godunov_vs_riemann() {
  const auto model = FluxModel::quadratic(4.0, 1.0);
  double worst = 0.0;
  for (int a = 0; a <= 50; ++a) {
    for (int b = 0; b <= 50; ++b) {
      const double ul = a / 50.0;
      const double ur = b / 50.0;
      const double exact =
          model.f(oracles::exact_riemann(model, ul, ur, 0.0));
      worst = std::max(worst, std::abs(model.godunov_flux(ul, ur) - exact));
    }
  }
  return worst <= 1e-12 ? "" : fmt("max difference %g", worst);
}

std::string lp_equivalence() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto inst = oracles::random_lp_instance(seed);
    const auto g = junction_riemann_solver(inst.a, inst.demand, inst.supply);
    const auto o = oracles::lp_vertex_oracle(inst.a, inst.demand, inst.supply);
    for (std::size_t i = 0; i < g.size(); ++i) {
      worst = std::max(worst, std::abs(g[i] - o.gamma[i]));
    }
  }
  return worst <= 1e-10 ? "" : fmt("max difference %g", worst);
}

std::string lp_worked_example() {
  const auto a = DistributionMatrix::from_rows({{0.5, 0.3}, {0.5, 0.7}});
  const std::vector<double> d{1.0, 1.0};
  const std::vector<double> s{1.0, 1.0};
  const auto g = junction_riemann_solver(a, d, s);
  const double err = std::max(std::abs(g[0] - 1.0), std::abs(g[1] - 5.0 / 7.0));
  return err <= 1e-12 ? "" : fmt("got (%g, %g)", g[0], g[1]);
}

std::string boundary_limit_convergence() {
  const double e1 = oracles::boundary_limit_l1_error(0.05);
  const double e2 = oracles::boundary_limit_l1_error(0.025);
  const double e3 = oracles::boundary_limit_l1_error(0.0125);
  const double p1 = std::log2(e1 / e2);
  const double p2 = std::log2(e2 / e3);
  if (p1 >= 0.6 && p2 >= 0.6 && e3 <= 0.02) return "";
  return fmt("orders %.3f, %.3f", p1, p2);
}

std::string builtin_invariants() {
  for (const auto& name : builtin_scenario_names()) {
    const Scenario s = builtin_scenario(name);
    SimulationOptions opts;
    opts.check_invariants = true;
    opts.record_faces = true;
    opts.record_states = true;
    const auto r = simulate_baseline(s, opts);
    const double res = oracles::conservation_residual(r);
    const double bound = 1e-10 * s.model().fmax() * s.cost.horizon;
    if (res > bound) return name + ": " + fmt("residual %g", res);
    for (const auto& st : r.states) {
      for (const auto& cells : st) {
        for (double u : cells) {
          if (u < 0.0 || u > s.umax) return name + ": density out of range";
        }
      }
    }
  }
  return "";
}

std::string scenario_round_trip() {
  for (const auto& name : builtin_scenario_names()) {
    const Scenario s = builtin_scenario(name);
    if (!(scenario_from_json(scenario_to_json(s)) == s)) {
      return name + " changed after a JSON round trip";
    }
  }
  return "";
}

}  // namespace

int run_validate() {
  const Suite suites[] = {
      {"godunov flux equals exact Riemann flux at xi = 0", godunov_vs_riemann},
      {"junction solver matches LP vertex enumeration", lp_equivalence},
      {"junction solver worked example", lp_worked_example},
      {"Godunov convergence to the closed-form IBVP solution",
       boundary_limit_convergence},
      {"built-in scenarios: conservation, feasibility, density range",
       builtin_invariants},
      {"scenario JSON round trip", scenario_round_trip},
  };
  int failures = 0;
  for (const auto& suite : suites) {
    std::string detail;
    try {
      detail = suite.run();
    } catch (const std::exception& e) {
      detail = std::string("threw: ") + e.what();
    }
    const bool ok = detail.empty();
    failures += ok ? 0 : 1;
    std::printf("%s  %s%s%s\n", ok ? "PASS" : "FAIL", suite.name.c_str(),
                ok ? "" : " -- ", detail.c_str());
  }
  return failures == 0 ? kOk : kInvariant;
}

}  // namespace lwrnode::cli
