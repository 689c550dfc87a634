#include "lwrnode/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace lwrnode {

using nlohmann::json;

// ---------------------------------------------------------------------------
// DatumSpec

DatumSpec DatumSpec::constant(double value) {
  return piecewise({}, {value});
}

DatumSpec DatumSpec::piecewise(std::vector<double> breaks,
                               std::vector<double> values) {
  DatumSpec d;
  d.kind = Kind::kPiecewiseConstant;
  d.breaks = std::move(breaks);
  d.values = std::move(values);
  d.validate();
  return d;
}

DatumSpec DatumSpec::sine(double offset, double amplitude, double frequency) {
  DatumSpec d;
  d.kind = Kind::kSine;
  d.values.clear();
  d.offset = offset;
  d.amplitude = amplitude;
  d.frequency = frequency;
  return d;
}

DatumSpec DatumSpec::cosine(double offset, double amplitude,
                            double frequency) {
  DatumSpec d = sine(offset, amplitude, frequency);
  d.kind = Kind::kCosine;
  return d;
}

double DatumSpec::operator()(double x) const {
  switch (kind) {
    case Kind::kPiecewiseConstant: {
      auto it = std::upper_bound(breaks.begin(), breaks.end(), x);
      return values[static_cast<std::size_t>(
          std::distance(breaks.begin(), it))];
    }
    case Kind::kSine:
      return offset + amplitude * std::sin(frequency * x);
    case Kind::kCosine:
      return offset + amplitude * std::cos(frequency * x);
  }
  return 0.0;
}

void DatumSpec::validate() const {
  if (kind == Kind::kPiecewiseConstant) {
    if (values.size() != breaks.size() + 1) {
      throw std::invalid_argument(
          "piecewise datum needs one more value than breaks");
    }
    if (!std::is_sorted(breaks.begin(), breaks.end())) {
      throw std::invalid_argument("datum breaks must be sorted");
    }
  }
}

// ---------------------------------------------------------------------------
// SearchConfig / Scenario

void SearchConfig::validate() const {
  if (n_intervals == 0) {
    throw std::invalid_argument("search needs n_intervals >= 1");
  }
  if (variation_steps.empty()) {
    throw std::invalid_argument("search needs at least one variation step");
  }
  for (double v : variation_steps) {
    if (v == 0.0) throw std::invalid_argument("variation steps must be nonzero");
  }
  if (!(refinement_ratio > 0.0 && refinement_ratio < 1.0)) {
    throw std::invalid_argument("refinement_ratio must lie in (0, 1)");
  }
  if (!(improvement_tol >= 0.0)) {
    throw std::invalid_argument("improvement_tol must be >= 0");
  }
}

FluxModel Scenario::model() const { return FluxModel::quadratic(flux_c, umax); }

NodeLayout Scenario::layout() const {
  auto make = [&](const ArcSpec& spec, Orientation o) {
    ArcConfig cfg;
    cfg.orientation = o;
    cfg.x_min = spec.x_min;
    cfg.x_max = spec.x_max;
    const double cells = (spec.x_max - spec.x_min) / dx;
    cfg.n_cells = static_cast<std::size_t>(std::llround(cells));
    if (cfg.n_cells == 0 || std::abs(cells - std::round(cells)) > 1e-9) {
      throw std::invalid_argument("arc length must be a multiple of dx");
    }
    cfg.initial_datum = [datum = spec.datum](double x) { return datum(x); };
    return cfg;
  };
  NodeLayout layout{model(), {}, {}, a_path};
  for (const auto& a : incoming) {
    layout.incoming.push_back(make(a, Orientation::kIncoming));
  }
  for (const auto& a : outgoing) {
    layout.outgoing.push_back(make(a, Orientation::kOutgoing));
  }
  return layout;
}

void Scenario::validate() const {
  if (incoming.empty() || outgoing.empty()) {
    throw std::invalid_argument("scenario needs incoming and outgoing arcs");
  }
  if (!(dx > 0.0)) throw std::invalid_argument("dx must be > 0");
  if (!(cfl > 0.0 && cfl <= 1.0)) {
    throw std::invalid_argument("cfl must lie in (0, 1]");
  }
  if (a_path.matrices().empty() || a_path.n_in() != incoming.size() ||
      a_path.n_out() != outgoing.size()) {
    throw std::invalid_argument(
        "distribution matrix does not match the arc counts");
  }
  if (!cost.outgoing_eval_points.empty() &&
      cost.outgoing_eval_points.size() != outgoing.size()) {
    throw std::invalid_argument("need one evaluation point per outgoing arc");
  }
  cost.validate();
  search.validate();
  for (const auto& a : incoming) a.datum.validate();
  for (const auto& a : outgoing) a.datum.validate();
  // Builds the arcs, which checks geometry and datum range.
  try {
    JunctionNetwork probe(layout());
  } catch (const std::domain_error& e) {
    throw std::invalid_argument(std::string("initial datum: ") + e.what());
  }
}

namespace {

Scenario two_by_two_base(const std::string& name) {
  Scenario s;
  s.name = name;
  s.flux_c = 4.0;
  s.umax = 1.0;
  s.dx = 0.05;
  s.cfl = 0.9;
  s.a_path = DistributionMatrixPath(
      DistributionMatrix::from_rows({{0.5, 0.3}, {0.5, 0.7}}));
  s.search.n_intervals = 20;
  return s;
}

}  // namespace

Scenario builtin_scenario(const std::string& name) {
  if (name == "case1") {
    Scenario s = two_by_two_base(name);
    s.incoming = {{-5.0, 0.0, DatumSpec::piecewise({-2.1, -1.0},
                                                   {0.47, 0.25, 0.5})},
                  {-5.0, 0.0, DatumSpec::constant(0.5)}};
    s.outgoing = {{0.0, 5.0, DatumSpec::constant(0.1)},
                  {0.0, 5.0, DatumSpec::constant(0.1)}};
    s.cost.kind = CostKind::kSum;
    s.cost.horizon = 5.0;
    s.cost.delta = 0.2;
    return s;
  }
  if (name == "case2") {
    Scenario s = two_by_two_base(name);
    s.incoming = {{-5.0, 0.0,
                   DatumSpec::piecewise({-2.0, -1.5, -1.0, -0.5},
                                        {0.25, 0.0, 0.25, 0.0, 0.5})},
                  {-5.0, 0.0, DatumSpec::constant(0.5)}};
    s.outgoing = {{0.0, 5.0, DatumSpec::constant(0.1)},
                  {0.0, 5.0, DatumSpec::constant(0.1)}};
    s.cost.kind = CostKind::kScaledProduct;
    s.cost.scale = 50.0;
    s.cost.horizon = 1.1;
    s.cost.delta = 0.4;
    return s;
  }
  if (name == "case3") {
    Scenario s = two_by_two_base(name);
    s.incoming = {{-5.0, 0.0, DatumSpec::sine(0.5, 0.3, 2.0)},
                  {-5.0, 0.0, DatumSpec::constant(0.2)}};
    s.outgoing = {{0.0, 5.0, DatumSpec::cosine(0.75, 0.2, 1.0)},
                  {0.0, 5.0, DatumSpec::constant(0.1)}};
    s.cost.kind = CostKind::kProduct;
    s.cost.horizon = 5.0;
    s.cost.delta = 0.0;
    return s;
  }
  throw std::invalid_argument("unknown built-in scenario: " + name);
}

std::vector<std::string> builtin_scenario_names() {
  return {"case1", "case2", "case3"};
}

// ---------------------------------------------------------------------------
// JSON

namespace {

json datum_to_json(const DatumSpec& d) {
  switch (d.kind) {
    case DatumSpec::Kind::kPiecewiseConstant:
      if (d.breaks.empty()) {
        return {{"type", "constant"}, {"value", d.values.front()}};
      }
      return {{"type", "piecewise_constant"},
              {"breaks", d.breaks},
              {"values", d.values}};
    case DatumSpec::Kind::kSine:
    case DatumSpec::Kind::kCosine:
      return {{"type", d.kind == DatumSpec::Kind::kSine ? "sine" : "cosine"},
              {"offset", d.offset},
              {"amplitude", d.amplitude},
              {"frequency", d.frequency}};
  }
  return {};
}

DatumSpec datum_from_json(const json& j) {
  const auto type = j.at("type").get<std::string>();
  if (type == "constant") return DatumSpec::constant(j.at("value"));
  if (type == "piecewise_constant") {
    return DatumSpec::piecewise(j.at("breaks"), j.at("values"));
  }
  if (type == "sine") {
    return DatumSpec::sine(j.at("offset"), j.at("amplitude"),
                           j.value("frequency", 1.0));
  }
  if (type == "cosine") {
    return DatumSpec::cosine(j.at("offset"), j.at("amplitude"),
                             j.value("frequency", 1.0));
  }
  throw std::invalid_argument("unknown datum type: " + type);
}

json arcs_to_json(const std::vector<ArcSpec>& arcs) {
  json out = json::array();
  for (const auto& a : arcs) {
    out.push_back({{"x_min", a.x_min},
                   {"x_max", a.x_max},
                   {"datum", datum_to_json(a.datum)}});
  }
  return out;
}

std::vector<ArcSpec> arcs_from_json(const json& j) {
  std::vector<ArcSpec> out;
  for (const auto& a : j) {
    out.push_back({a.at("x_min"), a.at("x_max"), datum_from_json(a.at("datum"))});
  }
  return out;
}

const char* cost_kind_name(CostKind k) {
  switch (k) {
    case CostKind::kSum: return "sum";
    case CostKind::kProduct: return "product";
    case CostKind::kScaledProduct: return "scaled_product";
  }
  return "sum";
}

CostKind cost_kind_from(const std::string& s) {
  if (s == "sum") return CostKind::kSum;
  if (s == "product") return CostKind::kProduct;
  if (s == "scaled_product") return CostKind::kScaledProduct;
  throw std::invalid_argument("unknown cost kind: " + s);
}

const char* init_mode_name(InitMode m) {
  switch (m) {
    case InitMode::kBaselineTrace: return "baseline_trace";
    case InitMode::kConstantTheta: return "constant_theta";
    case InitMode::kZero: return "zero";
  }
  return "baseline_trace";
}

InitMode init_mode_from(const std::string& s) {
  if (s == "baseline_trace") return InitMode::kBaselineTrace;
  if (s == "constant_theta") return InitMode::kConstantTheta;
  if (s == "zero") return InitMode::kZero;
  throw std::invalid_argument("unknown init mode: " + s);
}

}  // namespace

std::string scenario_to_json(const Scenario& s) {
  json mats = json::array();
  for (const auto& a : s.a_path.matrices()) mats.push_back(a.rows());
  json j = {
      {"name", s.name},
      {"flux", {{"type", "quadratic"}, {"c", s.flux_c}, {"umax", s.umax}}},
      {"mesh", {{"dx", s.dx}, {"cfl", s.cfl}}},
      {"incoming", arcs_to_json(s.incoming)},
      {"outgoing", arcs_to_json(s.outgoing)},
      {"distribution",
       {{"breakpoints", s.a_path.breakpoints()}, {"matrices", mats}}},
      {"cost",
       {{"J", cost_kind_name(s.cost.kind)},
        {"scale", s.cost.scale},
        {"delta", s.cost.delta},
        {"penalize_A", s.cost.penalize_a},
        {"horizon", s.cost.horizon},
        {"outgoing_eval_points", s.cost.outgoing_eval_points}}},
      {"search",
       {{"n_intervals", s.search.n_intervals},
        {"variation_steps", s.search.variation_steps},
        {"max_sweeps", s.search.max_sweeps},
        {"improvement_tol", s.search.improvement_tol},
        {"max_refinements", s.search.max_refinements},
        {"refinement_ratio", s.search.refinement_ratio},
        {"init_mode", init_mode_name(s.search.init_mode)},
        {"optimize_A", s.search.optimize_a},
        {"max_evaluations", s.search.max_evaluations}}},
  };
  return j.dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("scenario JSON: ") + e.what());
  }
  try {
    Scenario s;
    s.name = j.value("name", std::string("custom"));
    const auto& flux = j.at("flux");
    if (flux.value("type", std::string("quadratic")) != "quadratic") {
      throw std::invalid_argument("only quadratic fluxes are serializable");
    }
    s.flux_c = flux.at("c");
    s.umax = flux.at("umax");
    const auto& mesh = j.at("mesh");
    s.dx = mesh.at("dx");
    s.cfl = mesh.value("cfl", 0.9);
    s.incoming = arcs_from_json(j.at("incoming"));
    s.outgoing = arcs_from_json(j.at("outgoing"));

    const auto& dist = j.at("distribution");
    std::vector<DistributionMatrix> mats;
    for (const auto& rows : dist.at("matrices")) {
      mats.push_back(DistributionMatrix::from_rows(
          rows.get<std::vector<std::vector<double>>>()));
    }
    std::vector<double> bps = dist.value("breakpoints", std::vector<double>{0.0});
    s.a_path = DistributionMatrixPath(std::move(bps), std::move(mats));

    const auto& cost = j.at("cost");
    s.cost.kind = cost_kind_from(cost.value("J", std::string("sum")));
    s.cost.scale = cost.value("scale", 1.0);
    s.cost.delta = cost.value("delta", 0.0);
    s.cost.penalize_a = cost.value("penalize_A", false);
    s.cost.horizon = cost.at("horizon");
    s.cost.outgoing_eval_points =
        cost.value("outgoing_eval_points", std::vector<double>{});

    if (j.contains("search")) {
      const auto& search = j.at("search");
      SearchConfig d;
      s.search.n_intervals = search.value("n_intervals", d.n_intervals);
      s.search.variation_steps =
          search.value("variation_steps", d.variation_steps);
      s.search.max_sweeps = search.value("max_sweeps", d.max_sweeps);
      s.search.improvement_tol =
          search.value("improvement_tol", d.improvement_tol);
      s.search.max_refinements =
          search.value("max_refinements", d.max_refinements);
      s.search.refinement_ratio =
          search.value("refinement_ratio", d.refinement_ratio);
      s.search.init_mode = init_mode_from(
          search.value("init_mode", std::string("baseline_trace")));
      s.search.optimize_a = search.value("optimize_A", false);
      s.search.max_evaluations =
          search.value("max_evaluations", d.max_evaluations);
    }
    s.validate();
    return s;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("scenario JSON: ") + e.what());
  }
}

Scenario load_scenario(const std::string& name_or_path) {
  const auto names = builtin_scenario_names();
  if (std::find(names.begin(), names.end(), name_or_path) != names.end()) {
    return builtin_scenario(name_or_path);
  }
  if (!std::filesystem::exists(name_or_path)) {
    throw std::invalid_argument("no built-in scenario or file named " +
                                name_or_path);
  }
  std::ifstream in(name_or_path);
  std::stringstream ss;
  ss << in.rdbuf();
  return scenario_from_json(ss.str());
}

void save_scenario(const Scenario& scenario, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << scenario_to_json(scenario);
}

}  // namespace lwrnode
