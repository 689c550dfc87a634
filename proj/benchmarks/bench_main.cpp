#include <benchmark/benchmark.h>

#include <cstdint>

#include "lwrnode/arc_solver.hpp"
#include "lwrnode/junction.hpp"
#include "lwrnode/oracles.hpp"
#include "lwrnode/scenario.hpp"
#include "lwrnode/simulation.hpp"

namespace {

using namespace lwrnode;

void BM_BaselineSimulation(benchmark::State& state) {
  const auto names = builtin_scenario_names();
  const Scenario s = builtin_scenario(names.at(state.range(0)));
  for (auto _ : state) {
    auto r = simulate_baseline(s);
    benchmark::DoNotOptimize(r.cost.penalized);
  }
  state.SetLabel(s.name);
}
BENCHMARK(BM_BaselineSimulation)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_ArcStep(benchmark::State& state) {
  const auto model = FluxModel::quadratic(4.0, 1.0);
  ArcConfig cfg;
  cfg.n_cells = static_cast<std::size_t>(state.range(0));
  cfg.initial_datum = [](double x) { return x < -1.0 ? 0.47 : 0.25; };
  ArcState arc = make_initial_state(cfg, model);
  const double dt = cfl_dt(arc, model, 0.5);
  for (auto _ : state) {
    const double q = junction_bound(arc, model, Orientation::kIncoming);
    benchmark::DoNotOptimize(step(arc, model, Orientation::kIncoming, dt, q));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ArcStep)->Arg(100)->Arg(1000)->Arg(10000);

void BM_JunctionSolver(benchmark::State& state) {
  std::vector<oracles::LpInstance> insts;
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    insts.push_back(oracles::random_lp_instance(seed));
  }
  std::size_t k = 0;
  for (auto _ : state) {
    const auto& in = insts[k++ % insts.size()];
    benchmark::DoNotOptimize(
        junction_riemann_solver(in.a, in.demand, in.supply));
  }
}
BENCHMARK(BM_JunctionSolver);

void BM_VertexOracle(benchmark::State& state) {
  std::vector<oracles::LpInstance> insts;
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    insts.push_back(oracles::random_lp_instance(seed));
  }
  std::size_t k = 0;
  for (auto _ : state) {
    const auto& in = insts[k++ % insts.size()];
    benchmark::DoNotOptimize(
        oracles::lp_vertex_oracle(in.a, in.demand, in.supply));
  }
}
BENCHMARK(BM_VertexOracle);

}  // namespace

BENCHMARK_MAIN();
