#ifndef LWRNODE_TESTS_TINY_SCENARIO_HPP_
#define LWRNODE_TESTS_TINY_SCENARIO_HPP_

#include <vector>

#include "lwrnode/scenario.hpp"

// Short arcs and a coarse mesh so that a simulation costs microseconds.
inline lwrnode::Scenario tiny_scenario(std::vector<double> in,
                                       std::vector<double> out,
                                       std::vector<std::vector<double>> a) {
  using namespace lwrnode;
  Scenario s;
  s.name = "tiny";
  s.dx = 0.1;
  for (double u : in) s.incoming.push_back({-1.0, 0.0, DatumSpec::constant(u)});
  for (double u : out) s.outgoing.push_back({0.0, 1.0, DatumSpec::constant(u)});
  s.a_path = DistributionMatrixPath(DistributionMatrix::from_rows(a));
  s.cost.kind = CostKind::kSum;
  s.cost.horizon = 1.0;
  s.cost.delta = 0.0;
  s.search.n_intervals = 1;
  return s;
}

inline lwrnode::Scenario tiny_two_by_two() {
  return tiny_scenario({0.3, 0.6}, {0.2, 0.4}, {{0.5, 0.3}, {0.5, 0.7}});
}

#endif  // LWRNODE_TESTS_TINY_SCENARIO_HPP_
