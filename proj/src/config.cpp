#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "error.hpp"
#include "heatmap.hpp"
#include "smoothing.hpp"

namespace ncphase {

namespace {

// Typed access to one JSON object with field paths in error messages.
class Reader {
 public:
  Reader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + ": expected an object");
  }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }
  const Json& at(const std::string& key) const { return j_.at(key); }

  void allow_only(std::initializer_list<const char*> keys) const {
    std::set<std::string> ok(keys.begin(), keys.end());
    for (const auto& [k, v] : j_.items()) {
      if (!ok.count(k)) throw ConfigError(field(k) + ": unknown field");
    }
  }

  double number(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    const Json& v = j_.at(key);
    if (!v.is_number()) throw ConfigError(field(key) + ": expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(field(key) + ": must be finite");
    return d;
  }

  std::int64_t integer(const std::string& key, std::int64_t fallback) const {
    if (!has(key)) return fallback;
    const Json& v = j_.at(key);
    if (!v.is_number_integer()) throw ConfigError(field(key) + ": expected an integer");
    return v.get<std::int64_t>();
  }

  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    const Json& v = j_.at(key);
    if (!v.is_number_unsigned()) throw ConfigError(field(key) + ": expected a non-negative integer");
    return v.get<std::uint64_t>();
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    const Json& v = j_.at(key);
    if (!v.is_string()) throw ConfigError(field(key) + ": expected a string");
    return v.get<std::string>();
  }

  template <std::size_t N>
  std::array<double, N> numbers(const std::string& key, std::array<double, N> fallback) const {
    if (!has(key)) return fallback;
    const Json& v = j_.at(key);
    if (!v.is_array() || v.size() != N) {
      throw ConfigError(field(key) + ": expected an array of " + std::to_string(N) + " numbers");
    }
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) {
      if (!v[i].is_number()) throw ConfigError(field(key) + ": expected numbers");
      out[i] = v[i].get<double>();
    }
    return out;
  }

 private:
  const Json& j_;
  std::string path_;
};

Json array_of(const double* v, std::size_t n) {
  Json a = Json::array();
  for (std::size_t i = 0; i < n; ++i) a.push_back(v[i]);
  return a;
}

SweepSchedule parse_schedule(const Reader& parent, const std::string& key, SweepSchedule fallback) {
  if (!parent.has(key)) return fallback;
  const Reader r(parent.at(key), parent.field(key));
  r.allow_only({"values", "first", "last", "fixed"});
  SweepSchedule s = fallback;
  if (r.has("values")) {
    if (r.has("first") || r.has("last")) {
      throw ConfigError(r.field("values") + ": give either values or first/last");
    }
    const Json& v = r.at("values");
    if (!v.is_array()) throw ConfigError(r.field("values") + ": expected an array");
    s.values.clear();
    for (const auto& x : v) {
      if (!x.is_number()) throw ConfigError(r.field("values") + ": expected numbers");
      s.values.push_back(x.get<double>());
    }
  } else if (r.has("first") || r.has("last")) {
    const auto first = r.integer("first", 1), last = r.integer("last", 6);
    if (first > last || last - first > 40) throw ConfigError(r.field("last") + ": bad exponent range");
    s = SweepSchedule::geometric(fallback.parameter, static_cast<int>(first), static_cast<int>(last),
                                 fallback.fixed);
  }
  s.fixed = r.number("fixed", s.fixed);
  try {
    validate(s);
  } catch (const ConfigError& e) {
    throw ConfigError(parent.field(key) + ": " + e.what());
  }
  return s;
}

QuadratureRule parse_quadrature(const Reader& top) {
  if (!top.has("quadrature")) return QuadratureRule::tensor(24);
  const Reader r(top.at("quadrature"), "quadrature");
  r.allow_only({"kind", "order_per_axis", "samples", "seed"});
  const std::string kind = r.text("kind", "gauss_hermite_tensor");
  QuadratureRule q;
  if (kind == "gauss_hermite_tensor") {
    const auto order = r.integer("order_per_axis", 24);
    if (order < 2 || order > SmoothingBudget{}.max_tensor_order) {
      throw ConfigError(r.field("order_per_axis") + ": must be in [2, 64]");
    }
    q = QuadratureRule::tensor(static_cast<int>(order));
  } else if (kind == "monte_carlo") {
    if (!r.has("seed")) throw ConfigError(r.field("seed") + ": required for monte_carlo");
    const auto samples = r.unsigned_integer("samples", 1'000'000);
    if (samples < 1000 || static_cast<double>(samples) > SmoothingBudget{}.max_samples) {
      throw ConfigError(r.field("samples") + ": must be in [1e3, 1e8]");
    }
    q = QuadratureRule::monte_carlo(samples, r.unsigned_integer("seed", 0));
  } else {
    throw ConfigError(r.field("kind") + ": unknown quadrature '" + kind + "'");
  }
  return q;
}

Json schedule_json(const SweepSchedule& s) {
  Json j = to_json(s);
  j.erase("parameter");
  return j;
}

// F(x1, 0, y1, 0) - F_inf(y1, 0): the chain A limit minus the chain B limit.
Grid2D gap_grid(const TestFunction& f, const ProbeSpec& box) {
  Grid2D g{"x1", "y1", "chainA_minus_chainB", {}, {}, {}};
  const int n = 41;
  for (int i = 0; i < n; ++i) g.xs.push_back(box.lo + (box.hi - box.lo) * i / (n - 1));
  g.ys = g.xs;
  for (double y : g.ys) {
    for (double x : g.xs) g.values.push_back(f({x, 0.0, y, 0.0}) - f.asymptote_y(y, 0.0));
  }
  return g;
}

Grid2D reduction_grid(const TestFunction& f, const ParamSet& p, int order, const ProbeSpec& box) {
  Grid2D g{"y1", "y2", "static_reduction", {}, {}, {}};
  const int n = 41;
  for (int i = 0; i < n; ++i) g.xs.push_back(box.lo + (box.hi - box.lo) * i / (n - 1));
  g.ys = g.xs;
  const auto red = hbar0_static_reduction(f, p, order);
  for (double y2 : g.ys) {
    for (double y1 : g.xs) g.values.push_back(red(y1, y2));
  }
  return g;
}

void write_heatmap(const std::filesystem::path& dir, const Grid2D& g, const std::string& title) {
  write_grid_csv(dir / "grid.csv", g);
  write_text(dir / "heatmap.svg", render_heatmap_svg(g, title));
}

}  // namespace

TestFunction function_from_json(const Json& spec, const std::string& where) {
  const Json n = normalised_function_spec(spec, where);
  const std::string kind = n["kind"].get<std::string>();
  auto arr = [&](const char* key, auto& out) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = n[key][i].get<double>();
  };
  if (kind == "gaussian_bump") {
    std::array<double, 4> c{}, w{};
    arr("center", c);
    arr("widths", w);
    return gaussian_bump({c[0], c[1], c[2], c[3]}, w);
  }
  if (kind == "sigmoid_times_gaussian") {
    std::array<double, 2> c{}, w{};
    arr("y_center", c);
    arr("y_widths", w);
    return sigmoid_times_gaussian(n["x_scale"].get<double>(), Vec2(c[0], c[1]), Vec2(w[0], w[1]));
  }
  return constant(n["value"].get<double>());
}

Json normalised_function_spec(const Json& spec, const std::string& where) {
  const Reader r(spec, where);
  const std::string kind = r.text("kind", "");
  Json out;
  out["kind"] = kind;
  auto positive = [&](const char* key, const double* v, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!(v[i] > 0.0)) throw ConfigError(r.field(key) + ": entries must be positive");
    }
  };
  if (kind == "gaussian_bump") {
    r.allow_only({"kind", "center", "widths"});
    const auto c = r.numbers<4>("center", {0, 0, 0, 0});
    const auto w = r.numbers<4>("widths", {1, 1, 1, 1});
    positive("widths", w.data(), 4);
    out["center"] = array_of(c.data(), 4);
    out["widths"] = array_of(w.data(), 4);
  } else if (kind == "sigmoid_times_gaussian") {
    r.allow_only({"kind", "x_scale", "y_center", "y_widths"});
    const double s = r.number("x_scale", 1.0);
    positive("x_scale", &s, 1);
    const auto c = r.numbers<2>("y_center", {0, 0});
    const auto w = r.numbers<2>("y_widths", {1, 1});
    positive("y_widths", w.data(), 2);
    out["x_scale"] = s;
    out["y_center"] = array_of(c.data(), 2);
    out["y_widths"] = array_of(w.data(), 2);
  } else if (kind == "constant") {
    r.allow_only({"kind", "value"});
    out["value"] = r.number("value", 1.0);
  } else {
    throw ConfigError(r.field("kind") + ": unknown test function '" + kind + "'");
  }
  return out;
}

const std::vector<std::string>& known_experiments() {
  static const std::vector<std::string> names = {"chain_a",  "chain_b",      "noncommutation",
                                                 "dynamics", "appendix",     "localization",
                                                 "diagonal"};
  return names;
}

RunConfig parse_config(const Json& j, const std::filesystem::path& base_dir) {
  const Reader top(j, "");
  top.allow_only({"params", "schedules", "quadrature", "test_functions", "probes", "outputs",
                  "experiments", "tolerance", "t_values", "diagonal_ratio", "appendix",
                  "localization", "reduction_order", "y_probes", "x_probes"});
  RunConfig c;
  if (top.has("params")) {
    const Reader p(top.at("params"), "params");
    p.allow_only({"m", "omega", "hbar", "theta"});
    c.params = {p.number("m", 1.0), p.number("omega", 1.0), p.number("hbar", 0.1), p.number("theta", 1.0)};
    try {
      validate(c.params);
    } catch (const Error& e) {
      throw ConfigError(std::string("params: ") + e.what());
    }
    if (!(c.params.theta > 0.0)) throw ConfigError("params.theta: must be positive");
  }
  ChainConfig& ch = c.chain;
  ch.m = c.params.m;
  ch.omega = c.params.omega;
  ch.hbar_fixed = c.params.hbar;
  ch.theta_fixed = c.params.theta;
  if (top.has("schedules")) {
    const Reader s(top.at("schedules"), "schedules");
    s.allow_only({"theta", "hbar_a", "hbar_b"});
    ch.theta_schedule = parse_schedule(s, "theta", ch.theta_schedule);
    ch.hbar_schedule_a = parse_schedule(s, "hbar_a", ch.hbar_schedule_a);
    ch.hbar_schedule_b = parse_schedule(s, "hbar_b", ch.hbar_schedule_b);
  }
  ch.rule = parse_quadrature(top);
  ch.tolerance = top.number("tolerance", 1e-2);
  if (!(ch.tolerance > 0.0)) throw ConfigError("tolerance: must be positive");
  const auto order = top.integer("reduction_order", 64);
  if (order < 2 || order > 256) throw ConfigError("reduction_order: must be in [2, 256]");
  ch.reduction_order = static_cast<int>(order);
  const auto yp = top.integer("y_probes", 20), xp = top.integer("x_probes", 5);
  if (yp < 1 || xp < 2) throw ConfigError("y_probes/x_probes: need y_probes >= 1, x_probes >= 2");
  ch.y_probes = static_cast<std::size_t>(yp);
  ch.x_probes = static_cast<std::size_t>(xp);

  if (top.has("probes")) {
    const Reader p(top.at("probes"), "probes");
    p.allow_only({"count", "seed", "lo", "hi"});
    const auto count = p.integer("count", 100);
    if (count < 1 || count > 100000) throw ConfigError("probes.count: must be in [1, 100000]");
    c.probes = {static_cast<std::size_t>(count), p.unsigned_integer("seed", 42), p.number("lo", -3.0),
                p.number("hi", 3.0)};
    if (!(c.probes.lo < c.probes.hi)) throw ConfigError("probes.hi: must exceed probes.lo");
  }
  ch.probes = probe_cloud(c.probes.count, c.probes.seed, c.probes.lo, c.probes.hi);

  if (top.has("test_functions")) {
    const Json& fs = top.at("test_functions");
    if (!fs.is_array() || fs.empty()) throw ConfigError("test_functions: expected a non-empty array");
    for (std::size_t i = 0; i < fs.size(); ++i) {
      c.function_specs.push_back(normalised_function_spec(fs[i], "test_functions[" + std::to_string(i) + "]"));
    }
  } else {
    c.function_specs.push_back(normalised_function_spec(Json{{"kind", "gaussian_bump"}}));
  }

  c.t_values = {std::numbers::pi / 4, std::numbers::pi / 2};
  if (top.has("t_values")) {
    const Json& t = top.at("t_values");
    if (!t.is_array() || t.empty()) throw ConfigError("t_values: expected a non-empty array");
    c.t_values.clear();
    for (const auto& v : t) {
      if (!v.is_number() || !std::isfinite(v.get<double>())) throw ConfigError("t_values: expected numbers");
      c.t_values.push_back(v.get<double>());
    }
  }
  c.diagonal_ratio = top.number("diagonal_ratio", 1.0);
  if (!(c.diagonal_ratio > 0.0)) throw ConfigError("diagonal_ratio: must be positive");

  if (top.has("appendix")) {
    const Reader a(top.at("appendix"), "appendix");
    a.allow_only({"first", "last", "hbar", "theta"});
    c.appendix = {static_cast<int>(a.integer("first", 1)), static_cast<int>(a.integer("last", 6)),
                  a.number("hbar", 1.0), a.number("theta", 1.0)};
    if (c.appendix.first_exp > c.appendix.last_exp || c.appendix.last_exp > 12) {
      throw ConfigError("appendix.last: bad exponent range");
    }
    if (!(c.appendix.fixed_hbar > 0.0) || !(c.appendix.fixed_theta > 0.0)) {
      throw ConfigError("appendix.hbar/theta: must be positive");
    }
  }
  c.localization.m = c.params.m;
  c.localization.omega = c.params.omega;
  if (top.has("localization")) {
    const Reader l(top.at("localization"), "localization");
    l.allow_only({"hbar", "theta", "slope_tolerance"});
    c.localization.hbar_schedule = parse_schedule(l, "hbar", c.localization.hbar_schedule);
    c.localization.theta_schedule = parse_schedule(l, "theta", c.localization.theta_schedule);
    c.localization.slope_tolerance = l.number("slope_tolerance", 0.02);
  }

  if (top.has("outputs")) {
    if (!top.at("outputs").is_string()) throw ConfigError("outputs: expected a directory path");
    c.outputs = top.at("outputs").get<std::string>();
  }
  if (c.outputs.is_relative() && !base_dir.empty()) c.outputs = base_dir / c.outputs;

  if (!top.has("experiments")) throw ConfigError("experiments: required");
  const Json& ex = top.at("experiments");
  if (!ex.is_array() || ex.empty()) throw ConfigError("experiments: expected a non-empty array");
  const auto& known = known_experiments();
  for (const auto& e : ex) {
    if (!e.is_string()) throw ConfigError("experiments: expected strings");
    const std::string name = e.get<std::string>();
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw ConfigError("experiments: unknown experiment '" + name + "'");
    }
    c.experiments.push_back(name);
  }
  try {
    ch = resolved(ch);
  } catch (const Error& e) {
    throw ConfigError(std::string("schedules: ") + e.what());
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: malformed JSON: ") + e.what());
  }
  return parse_config(j, path.parent_path());
}

Json resolved_json(const RunConfig& c) {
  const ChainConfig& ch = c.chain;
  Json j;
  j["params"] = {{"m", c.params.m}, {"omega", c.params.omega}, {"hbar", c.params.hbar}, {"theta", c.params.theta}};
  j["schedules"] = {{"theta", schedule_json(ch.theta_schedule)},
                    {"hbar_a", schedule_json(ch.hbar_schedule_a)},
                    {"hbar_b", schedule_json(ch.hbar_schedule_b)}};
  if (ch.rule.kind == QuadratureRule::Kind::GaussHermiteTensor) {
    j["quadrature"] = {{"kind", "gauss_hermite_tensor"}, {"order_per_axis", ch.rule.order_per_axis}};
  } else {
    j["quadrature"] = {{"kind", "monte_carlo"}, {"samples", ch.rule.samples}, {"seed", ch.rule.seed}};
  }
  j["test_functions"] = c.function_specs;
  j["probes"] = {{"count", c.probes.count}, {"seed", c.probes.seed}, {"lo", c.probes.lo}, {"hi", c.probes.hi}};
  j["tolerance"] = ch.tolerance;
  j["reduction_order"] = ch.reduction_order;
  j["y_probes"] = ch.y_probes;
  j["x_probes"] = ch.x_probes;
  j["t_values"] = c.t_values;
  j["diagonal_ratio"] = c.diagonal_ratio;
  j["appendix"] = {{"first", c.appendix.first_exp},
                   {"last", c.appendix.last_exp},
                   {"hbar", c.appendix.fixed_hbar},
                   {"theta", c.appendix.fixed_theta}};
  j["localization"] = {{"hbar", schedule_json(c.localization.hbar_schedule)},
                       {"theta", schedule_json(c.localization.theta_schedule)},
                       {"slope_tolerance", c.localization.slope_tolerance}};
  j["outputs"] = c.outputs.string();
  j["experiments"] = c.experiments;
  return j;
}

bool write_experiment(const std::filesystem::path& dir, const std::string& name, const Json& config,
                      const std::vector<LimitReport>& reports, const Json& summary) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  bool passed = true;
  Json list = Json::array();
  for (const auto& r : reports) {
    if (!r.exploratory && r.verdict != Verdict::Converged) passed = false;
    list.push_back(to_json(r));
  }
  Json doc;
  doc["experiment"] = name;
  doc["passed"] = passed;
  doc["report_count"] = reports.size();
  if (!summary.empty()) doc["summary"] = summary;
  doc["config"] = config;
  doc["reports"] = list;
  write_text(dir / "report.json", doc.dump(2) + "\n");
  write_errors_csv(dir / "errors.csv", reports);
  return passed;
}

RunSummary run(const RunConfig& c, const std::string& only) {
  if (!only.empty()) {
    const auto& known = known_experiments();
    if (std::find(known.begin(), known.end(), only) == known.end()) {
      throw ConfigError("experiment: unknown experiment '" + only + "'");
    }
  }
  std::error_code ec;
  std::filesystem::create_directories(c.outputs, ec);
  if (ec || !std::filesystem::is_directory(c.outputs)) {
    throw ConfigError("outputs: cannot create " + c.outputs.string());
  }
  const Json config = resolved_json(c);
  std::vector<TestFunction> functions;
  for (std::size_t i = 0; i < c.function_specs.size(); ++i) {
    functions.push_back(function_from_json(c.function_specs[i]));
  }
  const std::vector<std::string> names = only.empty() ? c.experiments : std::vector<std::string>{only};
  RunSummary summary;
  for (const auto& name : names) {
    const auto dir = c.outputs / name;
    std::vector<LimitReport> reports;
    Json extra = Json::object();
    auto tagged = [](LimitReport r, std::size_t i) {
      r.experiment += "[" + std::to_string(i) + "]";
      return r;
    };
    if (name == "chain_a") {
      for (std::size_t i = 0; i < functions.size(); ++i) {
        reports.push_back(tagged(chain_theta_then_hbar(functions[i], c.chain), i));
      }
    } else if (name == "chain_b") {
      for (std::size_t i = 0; i < functions.size(); ++i) {
        reports.push_back(tagged(chain_hbar_then_theta(functions[i], c.chain), i));
      }
    } else if (name == "noncommutation") {
      Json gaps = Json::array();
      for (std::size_t i = 0; i < functions.size(); ++i) {
        auto a = chain_theta_then_hbar(functions[i], c.chain);
        auto b = chain_hbar_then_theta(functions[i], c.chain);
        gaps.push_back({{"function", c.function_specs[i]},
                        {"gap", b.scalars.at("gap_at_center")},
                        {"gap_sup_over_probes", b.scalars.at("gap_sup_over_probes")},
                        {"gap_numeric_at_center", b.scalars.at("gap_numeric_at_center")},
                        {"chain_a_verdict", std::string(to_string(a.verdict))},
                        {"chain_b_verdict", std::string(to_string(b.verdict))}});
        reports.push_back(tagged(std::move(a), i));
        reports.push_back(tagged(std::move(b), i));
      }
      extra["gaps"] = gaps;
    } else if (name == "dynamics") {
      for (std::size_t i = 0; i < functions.size(); ++i) {
        auto d = dynamics_chain_reports(functions[i], c.chain, c.t_values);
        reports.push_back(tagged(std::move(d.chain_a), i));
        reports.push_back(tagged(std::move(d.chain_b), i));
      }
    } else if (name == "appendix") {
      reports = appendix_report(c.params.m, c.params.omega, c.appendix.first_exp, c.appendix.last_exp,
                                c.appendix.fixed_hbar, c.appendix.fixed_theta);
    } else if (name == "localization") {
      reports.push_back(localization_report(c.localization));
    } else if (name == "diagonal") {
      for (std::size_t i = 0; i < functions.size(); ++i) {
        reports.push_back(tagged(diagonal_report(functions[i], c.chain, c.diagonal_ratio), i));
      }
    }
    ExperimentOutcome out{name, write_experiment(dir, name, config, reports, extra), dir};
    if (name == "noncommutation") {
      write_heatmap(dir, gap_grid(functions.front(), c.probes),
                    "test_functions[0]: chain A limit minus chain B limit");
    } else if (name == "chain_b") {
      write_heatmap(dir, reduction_grid(functions.front(), {c.params.m, c.params.omega, 1.0, c.params.theta},
                                        c.chain.reduction_order, c.probes),
                    "static hbar->0 reduction of test_functions[0]");
    }
    summary.all_passed = summary.all_passed && out.passed;
    summary.experiments.push_back(out);
  }
  return summary;
}

}  // namespace ncphase
