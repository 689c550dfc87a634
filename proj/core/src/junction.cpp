#include "lwrnode/junction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace lwrnode {

// ---------------------------------------------------------------------------
// DistributionMatrix

DistributionMatrix::DistributionMatrix(std::size_t n_out, std::size_t n_in)
    : n_out_(n_out), n_in_(n_in), data_(n_out * n_in, 0.0) {}

DistributionMatrix DistributionMatrix::from_rows(
    const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw std::invalid_argument("distribution matrix must be non-empty");
  }
  DistributionMatrix a(rows.size(), rows.front().size());
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (rows[j].size() != a.n_in_) {
      throw std::invalid_argument("ragged distribution matrix");
    }
    for (std::size_t i = 0; i < a.n_in_; ++i) a(j, i) = rows[j][i];
  }
  return a;
}

std::vector<double> DistributionMatrix::apply(
    std::span<const double> gamma) const {
  std::vector<double> out(n_out_, 0.0);
  for (std::size_t j = 0; j < n_out_; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n_in_; ++i) acc += (*this)(j, i) * gamma[i];
    out[j] = acc;
  }
  return out;
}

bool DistributionMatrix::is_column_stochastic(double tol) const {
  if (n_out_ == 0 || n_in_ == 0) return false;
  for (std::size_t i = 0; i < n_in_; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n_out_; ++j) {
      const double a = (*this)(j, i);
      if (!(a >= 0.0 && a <= 1.0)) return false;
      sum += a;
    }
    if (std::abs(sum - 1.0) > tol) return false;
  }
  return true;
}

void DistributionMatrix::validate() const {
  if (!is_column_stochastic()) {
    throw std::invalid_argument(
        "distribution matrix must have entries in [0,1] and unit column sums");
  }
}

std::vector<std::vector<double>> DistributionMatrix::rows() const {
  std::vector<std::vector<double>> out(n_out_, std::vector<double>(n_in_));
  for (std::size_t j = 0; j < n_out_; ++j) {
    for (std::size_t i = 0; i < n_in_; ++i) out[j][i] = (*this)(j, i);
  }
  return out;
}

// ---------------------------------------------------------------------------
// DistributionMatrixPath

DistributionMatrixPath::DistributionMatrixPath(DistributionMatrix constant)
    : DistributionMatrixPath({0.0}, {std::move(constant)}) {}

DistributionMatrixPath::DistributionMatrixPath(
    std::vector<double> breakpoints, std::vector<DistributionMatrix> matrices)
    : breakpoints_(std::move(breakpoints)), matrices_(std::move(matrices)) {
  if (matrices_.empty() || breakpoints_.size() != matrices_.size()) {
    throw std::invalid_argument(
        "matrix path needs one matrix per breakpoint and at least one");
  }
  if (!std::is_sorted(breakpoints_.begin(), breakpoints_.end()) ||
      std::adjacent_find(breakpoints_.begin(), breakpoints_.end()) !=
          breakpoints_.end()) {
    throw std::invalid_argument("matrix breakpoints must increase strictly");
  }
  for (const auto& a : matrices_) {
    if (a.n_out() != matrices_.front().n_out() ||
        a.n_in() != matrices_.front().n_in()) {
      throw std::invalid_argument("matrix path has inconsistent dimensions");
    }
    a.validate();
  }
}

const DistributionMatrix& DistributionMatrixPath::at(double t) const {
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  if (it == breakpoints_.begin()) return matrices_.front();
  return matrices_[static_cast<std::size_t>(
                       std::distance(breakpoints_.begin(), it)) -
                   1];
}

double DistributionMatrixPath::next_breakpoint(double t) const {
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  return it == breakpoints_.end() ? std::numeric_limits<double>::infinity()
                                  : *it;
}

double DistributionMatrixPath::total_variation() const {
  double tv = 0.0;
  for (std::size_t k = 1; k < matrices_.size(); ++k) {
    const auto& a = matrices_[k];
    const auto& b = matrices_[k - 1];
    for (std::size_t j = 0; j < a.n_out(); ++j) {
      for (std::size_t i = 0; i < a.n_in(); ++i) {
        tv += std::abs(a(j, i) - b(j, i));
      }
    }
  }
  return tv;
}

// ---------------------------------------------------------------------------
// Node flux selection

std::vector<double> clip_control(std::span<const double> requested,
                                 const DistributionMatrix& a,
                                 std::span<const double> demand,
                                 std::span<const double> supply) {
  const std::size_t m = a.n_in();
  if (requested.size() != m || demand.size() != m ||
      supply.size() != a.n_out()) {
    throw std::invalid_argument("clip_control: dimension mismatch");
  }
  std::vector<double> gamma(m);
  for (std::size_t i = 0; i < m; ++i) {
    gamma[i] = std::clamp(requested[i], 0.0, std::max(0.0, demand[i]));
  }
  const auto out = a.apply(gamma);
  double scale = 1.0;
  for (std::size_t j = 0; j < out.size(); ++j) {
    if (out[j] > 0.0) scale = std::min(scale, std::max(0.0, supply[j]) / out[j]);
  }
  if (scale < 1.0) {
    for (auto& g : gamma) g *= scale;
  }
  return gamma;
}

namespace {

// Dense simplex over max c.x s.t. G x <= h, x >= 0 with h >= 0, so the slack
// basis is feasible from the start. Several objectives are optimized in
// sequence; later stages only pivot on columns whose reduced cost is zero
// for every earlier objective, which keeps earlier optima fixed.
class LexicographicSimplex {
 public:
  LexicographicSimplex(std::size_t n_vars,
                       const std::vector<std::vector<double>>& g,
                       const std::vector<double>& h)
      : n_vars_(n_vars),
        n_rows_(g.size()),
        n_cols_(n_vars + g.size()),
        tableau_(n_rows_, std::vector<double>(n_cols_ + 1, 0.0)),
        basis_(n_rows_) {
    for (std::size_t r = 0; r < n_rows_; ++r) {
      for (std::size_t c = 0; c < n_vars_; ++c) tableau_[r][c] = g[r][c];
      tableau_[r][n_vars_ + r] = 1.0;
      tableau_[r][n_cols_] = h[r];
      basis_[r] = n_vars_ + r;
    }
  }

  void add_objective(const std::vector<double>& c) {
    std::vector<double> row(n_cols_ + 1, 0.0);
    std::copy(c.begin(), c.end(), row.begin());
    // Express the objective in terms of the current nonbasic columns.
    for (std::size_t r = 0; r < n_rows_; ++r) {
      const double cb = row[basis_[r]];
      if (cb != 0.0) {
        for (std::size_t k = 0; k <= n_cols_; ++k) {
          row[k] -= cb * tableau_[r][k];
        }
      }
    }
    objectives_.push_back(std::move(row));
    optimize(objectives_.size() - 1);
  }

  std::vector<double> solution() const {
    std::vector<double> x(n_vars_, 0.0);
    for (std::size_t r = 0; r < n_rows_; ++r) {
      if (basis_[r] < n_vars_) x[basis_[r]] = tableau_[r][n_cols_];
    }
    return x;
  }

 private:
  static constexpr double kTol = 1e-12;
  static constexpr int kMaxPivots = 10000;

  bool allowed(std::size_t col, std::size_t stage) const {
    for (std::size_t p = 0; p < stage; ++p) {
      if (objectives_[p][col] < -kTol) return false;
    }
    return true;
  }

  void optimize(std::size_t stage) {
    auto& obj = objectives_[stage];
    for (int pivots = 0; pivots < kMaxPivots; ++pivots) {
      // Bland's rule: lowest eligible column, then lowest basic index.
      std::size_t entering = n_cols_;
      for (std::size_t c = 0; c < n_cols_; ++c) {
        if (obj[c] > kTol && allowed(c, stage)) {
          entering = c;
          break;
        }
      }
      if (entering == n_cols_) return;

      std::size_t leaving = n_rows_;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < n_rows_; ++r) {
        const double a = tableau_[r][entering];
        if (a <= kTol) continue;
        const double ratio = tableau_[r][n_cols_] / a;
        if (ratio < best_ratio - kTol ||
            (ratio <= best_ratio + kTol && leaving < n_rows_ &&
             basis_[r] < basis_[leaving])) {
          best_ratio = std::min(best_ratio, ratio);
          leaving = r;
        }
      }
      if (leaving == n_rows_) {
        throw std::logic_error("junction LP is unbounded");
      }
      pivot(leaving, entering);
    }
    throw std::runtime_error("junction LP did not converge");
  }

  void pivot(std::size_t row, std::size_t col) {
    auto& pr = tableau_[row];
    const double inv = 1.0 / pr[col];
    for (auto& v : pr) v *= inv;
    pr[col] = 1.0;
    auto eliminate = [&](std::vector<double>& target) {
      const double factor = target[col];
      if (factor == 0.0) return;
      for (std::size_t k = 0; k <= n_cols_; ++k) target[k] -= factor * pr[k];
      target[col] = 0.0;
    };
    for (std::size_t r = 0; r < n_rows_; ++r) {
      if (r != row) eliminate(tableau_[r]);
    }
    for (auto& obj : objectives_) eliminate(obj);
    basis_[row] = col;
  }

  std::size_t n_vars_;
  std::size_t n_rows_;
  std::size_t n_cols_;
  std::vector<std::vector<double>> tableau_;
  std::vector<std::size_t> basis_;
  std::vector<std::vector<double>> objectives_;
};

}  // namespace

std::vector<double> junction_riemann_solver(const DistributionMatrix& a,
                                            std::span<const double> demand,
                                            std::span<const double> supply) {
  const std::size_t m = a.n_in();
  const std::size_t n = a.n_out();
  if (demand.size() != m || supply.size() != n) {
    throw std::invalid_argument("junction_riemann_solver: dimension mismatch");
  }
  std::vector<std::vector<double>> g;
  std::vector<double> h;
  g.reserve(m + n);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> row(m, 0.0);
    row[i] = 1.0;
    g.push_back(std::move(row));
    h.push_back(std::max(0.0, demand[i]));
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> row(m);
    for (std::size_t i = 0; i < m; ++i) row[i] = a(j, i);
    g.push_back(std::move(row));
    h.push_back(std::max(0.0, supply[j]));
  }

  LexicographicSimplex lp(m, g, h);
  lp.add_objective(std::vector<double>(m, 1.0));
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> e(m, 0.0);
    e[i] = 1.0;
    lp.add_objective(e);
  }
  auto gamma = lp.solution();
  for (std::size_t i = 0; i < m; ++i) {
    gamma[i] = std::clamp(gamma[i], 0.0, std::max(0.0, demand[i]));
  }
  return gamma;
}

// ---------------------------------------------------------------------------
// JunctionNetwork

JunctionNetwork::JunctionNetwork(NodeLayout layout)
    : layout_(std::move(layout)) {
  if (layout_.incoming.empty() || layout_.outgoing.empty()) {
    throw std::invalid_argument("a node needs at least one arc on each side");
  }
  if (layout_.a_path.n_in() != layout_.incoming.size() ||
      layout_.a_path.n_out() != layout_.outgoing.size()) {
    throw std::invalid_argument(
        "distribution matrix dimensions do not match the arc counts");
  }
  for (auto& cfg : layout_.incoming) {
    cfg.orientation = Orientation::kIncoming;
    incoming_.push_back(make_initial_state(cfg, layout_.model));
  }
  for (auto& cfg : layout_.outgoing) {
    cfg.orientation = Orientation::kOutgoing;
    outgoing_.push_back(make_initial_state(cfg, layout_.model));
  }
}

GammaBounds JunctionNetwork::gamma_bounds() const {
  GammaBounds b;
  b.demand.reserve(incoming_.size());
  b.supply.reserve(outgoing_.size());
  for (const auto& s : incoming_) {
    b.demand.push_back(junction_bound(s, model(), Orientation::kIncoming));
  }
  for (const auto& s : outgoing_) {
    b.supply.push_back(junction_bound(s, model(), Orientation::kOutgoing));
  }
  return b;
}

NodeFluxes JunctionNetwork::node_fluxes(const NodeRequest& request) const {
  NodeFluxes out;
  out.bounds = gamma_bounds();
  const auto& a = layout_.a_path.at(time_);
  if (request.inflow) {
    out.incoming =
        clip_control(*request.inflow, a, out.bounds.demand, out.bounds.supply);
  } else {
    const auto rs =
        junction_riemann_solver(a, out.bounds.demand, out.bounds.supply);
    out.incoming = clip_control(rs, a, out.bounds.demand, out.bounds.supply);
  }
  out.outgoing = a.apply(out.incoming);
  return out;
}

double JunctionNetwork::stable_dt(const NodeFluxes& fluxes,
                                  double cfl_number) const {
  if (!(cfl_number > 0.0 && cfl_number <= 1.0)) {
    throw std::invalid_argument("CFL number must lie in (0, 1]");
  }
  const auto& m = model();
  double dt = std::numeric_limits<double>::infinity();
  auto visit = [&](const ArcState& s, Orientation o, double q) {
    double speed = std::max(max_wave_speed(s, m),
                            std::abs(m.df(junction_ghost_density(m, o, q))));
    if (speed < 1e-12) speed = m.lipschitz();
    dt = std::min(dt, cfl_number * s.dx / speed);
  };
  for (std::size_t i = 0; i < incoming_.size(); ++i) {
    visit(incoming_[i], Orientation::kIncoming, fluxes.incoming[i]);
  }
  for (std::size_t j = 0; j < outgoing_.size(); ++j) {
    visit(outgoing_[j], Orientation::kOutgoing, fluxes.outgoing[j]);
  }
  return dt;
}

void JunctionNetwork::advance_with(
    NodeFluxes& fluxes, double dt,
    std::span<const std::span<double>> face_fluxes) {
  auto faces = [&](std::size_t l) -> std::span<double> {
    return l < face_fluxes.size() ? face_fluxes[l] : std::span<double>{};
  };
  for (std::size_t i = 0; i < incoming_.size(); ++i) {
    fluxes.incoming[i] = step(incoming_[i], model(), Orientation::kIncoming, dt,
         fluxes.incoming[i], layout_.incoming[i].far_boundary, faces(i));
  }
  for (std::size_t j = 0; j < outgoing_.size(); ++j) {
    fluxes.outgoing[j] = step(outgoing_[j], model(), Orientation::kOutgoing, dt,
         fluxes.outgoing[j], layout_.outgoing[j].far_boundary,
         faces(incoming_.size() + j));
  }
  time_ += dt;
}

NodeFluxes JunctionNetwork::advance(
    const NodeRequest& request, double dt,
    std::span<const std::span<double>> face_fluxes) {
  auto fluxes = node_fluxes(request);
  advance_with(fluxes, dt, face_fluxes);
  return fluxes;
}

std::vector<std::string> node_trace_header(std::size_t m, std::size_t n) {
  std::vector<std::string> h{"t"};
  for (std::size_t i = 0; i < m; ++i) h.push_back("g" + std::to_string(i + 1));
  for (std::size_t j = 0; j < n; ++j) {
    h.push_back("f" + std::to_string(m + j + 1));
  }
  return h;
}

}  // namespace lwrnode
