#include "lwrnode/delta_sweep.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "lwrnode/csv.hpp"

namespace lwrnode {

SweepSolver exhaustive_solver(std::size_t n_pieces, std::vector<double> levels,
                              unsigned threads) {
  return [n_pieces, levels = std::move(levels), threads](const Scenario& s) {
    return exhaustive_oracle(s, n_pieces, levels, threads).control;
  };
}

SweepSolver heuristic_solver(SearchOptions options) {
  return [options = std::move(options)](const Scenario& s) {
    return local_search(s, s.search, options).control;
  };
}

std::vector<SweepEntry> delta_sweep(const Scenario& scenario,
                                    std::span<const double> deltas,
                                    const SweepSolver& solver) {
  for (double d : deltas) {
    if (!(d >= 0.0)) throw std::invalid_argument("delta must be >= 0");
  }
  std::vector<SweepEntry> out;
  out.reserve(deltas.size());
  for (double d : deltas) {
    Scenario s = scenario;
    s.cost.delta = d;
    SweepEntry e;
    e.delta = d;
    e.control = solver(s);
    e.breakdown = simulate(s, e.control).cost;
    e.value = e.breakdown.penalized;
    out.push_back(std::move(e));
  }
  return out;
}

bool is_nonincreasing_in_delta(const std::vector<SweepEntry>& entries,
                               double tol) {
  std::vector<const SweepEntry*> sorted;
  for (const auto& e : entries) sorted.push_back(&e);
  std::sort(sorted.begin(), sorted.end(),
            [](const SweepEntry* a, const SweepEntry* b) {
              return a->delta < b->delta;
            });
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    if (sorted[k]->value > sorted[k - 1]->value + tol) return false;
  }
  return true;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepEntry>& entries) {
  csv::write_row(os, std::vector<std::string>{"delta", "I", "integral",
                                              "tv_g_total", "tv_A_total"});
  for (const auto& e : entries) {
    csv::write_row(os, std::vector<double>{e.delta, e.value,
                                           e.breakdown.integral,
                                           e.breakdown.tv_g_total,
                                           e.breakdown.tv_a_total});
  }
}

}  // namespace lwrnode
