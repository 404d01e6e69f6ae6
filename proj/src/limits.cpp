#include "limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "dynamics.hpp"
#include "error.hpp"
#include "phasemap.hpp"
#include "smoothing.hpp"
#include "wigner.hpp"

namespace ncphase {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<PhasePoint> probes_or_default(const ChainConfig& c) {
  return c.probes.empty() ? probe_cloud(100, 42, -3.0, 3.0) : c.probes;
}

std::vector<double> smoothed_values(const TestFunction& f, const ParamSet& p,
                                    const QuadratureRule& rule, std::span<const PhasePoint> pts,
                                    const Mat4* a = nullptr) {
  const auto d = derive(p);
  const auto pm = build(d);
  const auto sf = a ? smooth_evolved(f, d, pm, *a, rule) : smooth(f, d, pm, rule);
  const auto vals = sf.on(pts);
  std::vector<double> out(vals.size());
  std::transform(vals.begin(), vals.end(), out.begin(), [](const SmoothedValue& v) { return v.value; });
  return out;
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

Verdict combine(std::initializer_list<Verdict> vs) {
  bool all = true;
  for (Verdict v : vs) {
    if (v == Verdict::Diverged) return Verdict::Diverged;
    if (v != Verdict::Converged) all = false;
  }
  return all ? Verdict::Converged : Verdict::Inconclusive;
}

void append(std::vector<double>& dst, const std::vector<double>& src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

PhasePoint center_of(const TestFunction& f) {
  return f.gaussian ? PhasePoint::from(f.gaussian->center) : PhasePoint{};
}

// Points (x1, x2) from the first probes crossed with (y1, y2) from the first probes.
std::vector<PhasePoint> cross_grid(const std::vector<PhasePoint>& probes, std::size_t ny,
                                   std::size_t nx) {
  ny = std::min(ny, probes.size());
  nx = std::min(nx, probes.size());
  std::vector<PhasePoint> out;
  out.reserve(ny * nx);
  for (std::size_t i = 0; i < ny; ++i) {
    for (std::size_t k = 0; k < nx; ++k) {
      out.push_back({probes[k].x1, probes[k].x2, probes[i].y1, probes[i].y2});
    }
  }
  return out;
}

// max over row blocks of (max - min) within the block.
double block_variation(const std::vector<double>& v, std::size_t block) {
  double worst = 0.0;
  for (std::size_t s = 0; s + block <= v.size(); s += block) {
    const auto [lo, hi] = std::minmax_element(v.begin() + s, v.begin() + s + block);
    worst = std::max(worst, *hi - *lo);
  }
  return worst;
}

// Stage 2 of chain A keeps theta / hbar at its stage-1 end value, so the
// theta -> 0 limit stays taken while hbar shrinks.
double stage2_theta(const ChainConfig& c, double hbar) {
  return c.theta_schedule.values.back() * std::min(1.0, hbar / c.hbar_fixed);
}

}  // namespace

SweepSchedule SweepSchedule::geometric(SweepParameter p, int first, int last, double fixed) {
  SweepSchedule s;
  s.parameter = p;
  s.fixed = fixed;
  for (int k = first; k <= last; ++k) s.values.push_back(std::pow(10.0, -k));
  return s;
}

void validate(const SweepSchedule& s) {
  if (s.values.empty()) throw ConfigError("schedule has no values");
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    if (!(s.values[i] > 0.0) || !std::isfinite(s.values[i])) {
      throw ConfigError("schedule values must be positive and finite");
    }
    if (i > 0 && !(s.values[i] < s.values[i - 1])) {
      throw ConfigError("schedule values must be strictly decreasing");
    }
  }
  if (!(s.fixed >= 0.0) || !std::isfinite(s.fixed)) throw ConfigError("schedule fixed value invalid");
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Converged: return "converged";
    case Verdict::Diverged: return "diverged";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string_view to_string(SweepParameter p) {
  return p == SweepParameter::Hbar ? "hbar" : "theta";
}

bool tail_monotone(const std::vector<double>& e, double floor_level) {
  if (e.size() < 3) return false;
  for (std::size_t i = e.size() - 2; i < e.size(); ++i) {
    const bool floor = std::max(e[i], e[i - 1]) <= std::max(floor_level, kNoiseFloor);
    if (!(e[i] <= e[i - 1]) && !floor) return false;
  }
  return true;
}

Verdict judge(const std::vector<double>& errors, double tolerance) {
  if (errors.empty()) return Verdict::Inconclusive;
  const double last = errors.back();
  if (!std::isfinite(last)) return Verdict::Diverged;
  if (last < tolerance && tail_monotone(errors, tolerance * kFloorFraction)) return Verdict::Converged;
  if (last >= tolerance && errors.size() >= 2 && last > errors[errors.size() - 2]) {
    return Verdict::Diverged;
  }
  return Verdict::Inconclusive;
}

double fitted_slope(const std::vector<double>& params, const std::vector<double>& errors) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < std::min(params.size(), errors.size()); ++i) {
    if (!(errors[i] > kNoiseFloor) || !(params[i] > 0.0) || !std::isfinite(errors[i])) continue;
    const double x = std::log(params[i]), y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return kNaN;
  const double den = n * sxx - sx * sx;
  return den == 0.0 ? kNaN : (n * sxy - sx * sy) / den;
}

ChainConfig resolved(ChainConfig c) {
  c.theta_schedule.parameter = SweepParameter::Theta;
  c.theta_schedule.fixed = c.hbar_fixed;
  c.hbar_schedule_a.parameter = SweepParameter::Hbar;
  c.hbar_schedule_b.parameter = SweepParameter::Hbar;
  validate(c.theta_schedule);
  c.hbar_schedule_a.fixed = c.theta_schedule.values.back();
  c.hbar_schedule_b.fixed = c.theta_fixed;
  validate(c.hbar_schedule_a);
  validate(c.hbar_schedule_b);
  validate(ParamSet{c.m, c.omega, c.hbar_fixed, c.theta_fixed});
  validate(c.rule);
  if (!(c.tolerance > 0.0)) throw ConfigError("tolerance must be positive");
  return c;
}

LimitReport chain_theta_then_hbar(const TestFunction& f, const ChainConfig& cfg) {
  const ChainConfig c = resolved(cfg);
  const auto probes = probes_or_default(c);
  std::vector<double> target(probes.size());
  for (std::size_t i = 0; i < probes.size(); ++i) target[i] = f(probes[i]);

  LimitReport r;
  r.experiment = "chain_theta_then_hbar";
  r.target_description = "F itself: sup over probes of |F_{hbar,theta} - F|";
  r.schedules = {c.theta_schedule, c.hbar_schedule_a};
  r.probe_points = probes;
  r.tolerance = c.tolerance;

  const auto theta0_map = smoothed_values(f, {c.m, c.omega, c.hbar_fixed, 0.0}, c.rule, probes);
  Series s1{"stage1_error_vs_F", c.theta_schedule.values, {}};
  Series s1d{"stage1_distance_to_theta0_map", c.theta_schedule.values, {}};
  for (double th : c.theta_schedule.values) {
    const auto v = smoothed_values(f, {c.m, c.omega, c.hbar_fixed, th}, c.rule, probes);
    s1.errors.push_back(sup_diff(v, target));
    s1d.errors.push_back(sup_diff(v, theta0_map));
  }
  Series s2{"stage2_error_vs_F", c.hbar_schedule_a.values, {}};
  for (double h : c.hbar_schedule_a.values) {
    s2.errors.push_back(
        sup_diff(smoothed_values(f, {c.m, c.omega, h, stage2_theta(c, h)}, c.rule, probes), target));
  }
  append(r.errors_per_step, s1.errors);
  append(r.errors_per_step, s2.errors);
  r.fitted_rate = fitted_slope(s2.params, s2.errors);
  r.verdict = judge(s2.errors, c.tolerance);
  r.scalars["final_error"] = s2.errors.back();
  r.scalars["stage1_distance_to_theta0_map_final"] = s1d.errors.back();
  r.scalars["stage1_distance_fitted_rate"] = fitted_slope(s1d.params, s1d.errors);
  r.series = {s1, s1d, s2};
  r.notes.push_back("stage 2 runs at theta = theta_min * hbar / hbar_fixed so theta / hbar never grows");
  return r;
}

LimitReport chain_hbar_then_theta(const TestFunction& f, const ChainConfig& cfg) {
  if (!f.has_asymptote_y()) throw MissingAsymptoteError(f.label + " declares no F_inf(y1,y2)");
  const ChainConfig c = resolved(cfg);
  const auto probes = probes_or_default(c);
  const auto grid = cross_grid(probes, c.y_probes, c.x_probes);
  const std::size_t block = std::min(c.x_probes, probes.size());

  LimitReport r;
  r.experiment = "chain_hbar_then_theta";
  r.target_description =
      "stage 1: x-variation and distance to the static hbar->0 reduction; stage 2: "
      "distance of the reduction to F_inf(y1,y2)";
  r.schedules = {c.hbar_schedule_b, c.theta_schedule};
  r.probe_points = probes;
  r.tolerance = c.tolerance;

  const ParamSet pb{c.m, c.omega, 1.0, c.theta_fixed};
  const auto red = hbar0_static_reduction(f, pb, c.reduction_order);
  std::vector<double> red_vals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) red_vals[i] = red(grid[i].y1, grid[i].y2);

  Series xvar{"stage1_x_variation", c.hbar_schedule_b.values, {}};
  Series dist{"stage1_distance_to_static_reduction", c.hbar_schedule_b.values, {}};
  Series s1{"stage1_error", c.hbar_schedule_b.values, {}};
  for (double h : c.hbar_schedule_b.values) {
    const auto v = smoothed_values(f, {c.m, c.omega, h, c.theta_fixed}, c.rule, grid);
    xvar.errors.push_back(block_variation(v, block));
    dist.errors.push_back(sup_diff(v, red_vals));
    s1.errors.push_back(std::max(xvar.errors.back(), dist.errors.back()));
  }

  Series s2{"stage2_reduction_vs_F_inf", c.theta_schedule.values, {}};
  const std::size_t ny = std::min(c.y_probes, probes.size());
  for (double th : c.theta_schedule.values) {
    const auto rt = hbar0_static_reduction(f, {c.m, c.omega, 1.0, th}, c.reduction_order);
    double worst = 0.0;
    for (std::size_t i = 0; i < probes.size(); ++i) {
      const auto& p = probes[i];
      worst = std::max(worst, std::abs(rt(p.y1, p.y2) - f.asymptote_y(p.y1, p.y2)));
    }
    s2.errors.push_back(worst);
  }
  (void)ny;
  append(r.errors_per_step, s1.errors);
  append(r.errors_per_step, s2.errors);
  r.fitted_rate = fitted_slope(s2.params, s2.errors);
  r.verdict = combine({judge(s1.errors, c.tolerance), judge(s2.errors, c.tolerance)});
  r.series = {xvar, dist, s1, s2};

  // Non-commutation gap between the two limit objects: chain A ends at F,
  // chain B at F_inf(y1, y2).
  const PhasePoint ctr = center_of(f);
  double gap_sup = 0.0;
  for (const auto& p : probes) gap_sup = std::max(gap_sup, std::abs(f(p) - f.asymptote_y(p.y1, p.y2)));
  r.scalars["gap_at_center"] = std::abs(f(ctr) - f.asymptote_y(ctr.y1, ctr.y2));
  r.scalars["gap_sup_over_probes"] = gap_sup;
  r.scalars["center_x1"] = ctr.x1;
  r.scalars["center_x2"] = ctr.x2;
  r.scalars["center_y1"] = ctr.y1;
  r.scalars["center_y2"] = ctr.y2;
  // Same gap from the last computed step of each chain.
  const double theta_min = c.theta_schedule.values.back();
  const PhasePoint one[] = {ctr};
  const double h_min = c.hbar_schedule_a.values.back();
  const double a_final =
      smoothed_values(f, {c.m, c.omega, h_min, stage2_theta(c, h_min)}, c.rule, one)[0];
  const double b_final =
      hbar0_static_reduction(f, {c.m, c.omega, 1.0, theta_min}, c.reduction_order)(ctr.y1, ctr.y2);
  r.scalars["gap_numeric_at_center"] = std::abs(a_final - b_final);
  r.scalars["chain_a_final_at_center"] = a_final;
  r.scalars["chain_b_final_at_center"] = b_final;
  r.scalars["stage1_final_x_variation"] = xvar.errors.back();
  r.scalars["stage1_final_distance"] = dist.errors.back();
  r.scalars["final_error"] = s2.errors.back();
  return r;
}

DynamicsReports dynamics_chain_reports(const TestFunction& f, const ChainConfig& cfg,
                                       const std::vector<double>& t_values) {
  if (t_values.empty()) throw ConfigError("dynamics needs at least one time value");
  const ChainConfig c = resolved(cfg);
  const auto probes = probes_or_default(c);
  DynamicsReports out;

  // Chain A: smooth_evolved with A_{-t} tends to the classical pullback F(A_{-t} r).
  LimitReport& a = out.chain_a;
  a.experiment = "dynamics_chain_a";
  a.target_description = "classical pullback F(A_{-t} r), sup over probes and t";
  a.schedules = {c.theta_schedule, c.hbar_schedule_a};
  a.probe_points = probes;
  a.tolerance = c.tolerance;
  std::vector<double> s1_max(c.theta_schedule.values.size(), 0.0);
  std::vector<double> s2_max(c.hbar_schedule_a.values.size(), 0.0);
  for (double t : t_values) {
    const Mat4 classical = evolution_theta0(c.omega, -t).a_t;
    std::vector<double> target(probes.size());
    for (std::size_t i = 0; i < probes.size(); ++i) {
      target[i] = f(PhasePoint::from(classical * probes[i].vec()));
    }
    std::ostringstream tag;
    tag.precision(6);
    tag << "t=" << t;
    const ParamSet p0{c.m, c.omega, c.hbar_fixed, 0.0};
    const Mat4 a0 = evolution(derive(p0), -t).a_t;
    const auto theta0_map = smoothed_values(f, p0, c.rule, probes, &a0);
    Series s1{"stage1_error " + tag.str(), c.theta_schedule.values, {}};
    Series s1d{"stage1_distance_to_theta0_map " + tag.str(), c.theta_schedule.values, {}};
    for (std::size_t k = 0; k < c.theta_schedule.values.size(); ++k) {
      const ParamSet p{c.m, c.omega, c.hbar_fixed, c.theta_schedule.values[k]};
      const Mat4 at = evolution(derive(p), -t).a_t;
      const auto v = smoothed_values(f, p, c.rule, probes, &at);
      s1.errors.push_back(sup_diff(v, target));
      s1d.errors.push_back(sup_diff(v, theta0_map));
      s1_max[k] = std::max(s1_max[k], s1.errors.back());
    }
    Series s2{"stage2_error " + tag.str(), c.hbar_schedule_a.values, {}};
    for (std::size_t k = 0; k < c.hbar_schedule_a.values.size(); ++k) {
      const double h = c.hbar_schedule_a.values[k];
      const ParamSet p{c.m, c.omega, h, stage2_theta(c, h)};
      const Mat4 at = evolution(derive(p), -t).a_t;
      s2.errors.push_back(sup_diff(smoothed_values(f, p, c.rule, probes, &at), target));
      s2_max[k] = std::max(s2_max[k], s2.errors.back());
    }
    a.scalars["final_error " + tag.str()] = s2.errors.back();
    a.series.push_back(s1);
    a.series.push_back(s1d);
    a.series.push_back(s2);
  }
  append(a.errors_per_step, s1_max);
  append(a.errors_per_step, s2_max);
  a.fitted_rate = fitted_slope(c.hbar_schedule_a.values, s2_max);
  a.verdict = judge(s2_max, c.tolerance);
  a.scalars["final_error"] = s2_max.back();
  a.notes.push_back("stage 2 runs at theta = theta_min * hbar / hbar_fixed so theta / hbar never grows");

  // Chain B: the hbar -> 0 reduction forgets t; theta -> 0 then gives F_inf(y2).
  LimitReport& b = out.chain_b;
  b.experiment = "dynamics_chain_b";
  b.target_description =
      "t-independence of the hbar->0 reduction; stage 1: evolved smoothing vs the reduction "
      "at generic t; stage 2: reduction vs F_inf(y2)";
  b.schedules = {c.hbar_schedule_b, c.theta_schedule};
  b.probe_points = probes;
  b.tolerance = c.tolerance;
  if (!f.has_asymptote_y2()) throw MissingAsymptoteError(f.label + " declares no F_inf(y2)");
  const ParamSet pb{c.m, c.omega, 1.0, c.theta_fixed};
  const auto ref = hbar0_dynamic_reduction(f, pb, t_values.front(), c.reduction_order);
  double spread = 0.0;
  for (double t : t_values) {
    const auto rt = hbar0_dynamic_reduction(f, pb, t, c.reduction_order);
    for (const auto& p : probes) spread = std::max(spread, std::abs(rt(p.y2) - ref(p.y2)));
  }
  b.scalars["t_spread"] = spread;

  // Stage 1 needs cos(wt) and sin(wt) both away from 0 so that x1, x2 and y1
  // all leave every bounded set under A_{-t}(r + h(w)).
  std::vector<double> generic;
  for (double t : t_values) {
    if (std::abs(std::sin(c.omega * t)) > 0.05 && std::abs(std::cos(c.omega * t)) > 0.05) {
      generic.push_back(t);
    }
  }
  if (generic.empty()) generic.push_back(1.0 / c.omega);
  b.notes.push_back(
      "stage 1 uses only t with |sin wt|, |cos wt| > 0.05; at multiples of pi/(2w) one of "
      "x1, y1 stays finite and the hbar->0 limit is not a function of y2 alone");
  // (x1, x2, y1) from the first x probes, y2 from the first y probes
  std::vector<PhasePoint> grid;
  const std::size_t ny = std::min(c.y_probes, probes.size());
  const std::size_t nx = std::min(c.x_probes, probes.size());
  for (std::size_t i = 0; i < ny; ++i) {
    for (std::size_t k = 0; k < nx; ++k) {
      grid.push_back({probes[k].x1, probes[k].x2, probes[k].y1, probes[i].y2});
    }
  }
  std::vector<double> red_vals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) red_vals[i] = ref(grid[i].y2);
  std::vector<double> s1_err(c.hbar_schedule_b.values.size(), 0.0);
  for (double t : generic) {
    std::ostringstream tag;
    tag.precision(6);
    tag << "t=" << t;
    Series var{"stage1_variation " + tag.str(), c.hbar_schedule_b.values, {}};
    Series dist{"stage1_distance_to_dynamic_reduction " + tag.str(), c.hbar_schedule_b.values, {}};
    for (std::size_t k = 0; k < c.hbar_schedule_b.values.size(); ++k) {
      const ParamSet p{c.m, c.omega, c.hbar_schedule_b.values[k], c.theta_fixed};
      const Mat4 at = evolution(derive(p), -t).a_t;
      const auto v = smoothed_values(f, p, c.rule, grid, &at);
      var.errors.push_back(block_variation(v, nx));
      dist.errors.push_back(sup_diff(v, red_vals));
      s1_err[k] = std::max(s1_err[k], std::max(var.errors.back(), dist.errors.back()));
    }
    b.series.push_back(var);
    b.series.push_back(dist);
  }
  Series s2{"stage2_reduction_vs_F_inf", c.theta_schedule.values, {}};
  for (double th : c.theta_schedule.values) {
    const auto rt = hbar0_dynamic_reduction(f, {c.m, c.omega, 1.0, th}, 0.0, c.reduction_order);
    double worst = 0.0;
    for (const auto& p : probes) worst = std::max(worst, std::abs(rt(p.y2) - f.asymptote_y2(p.y2)));
    s2.errors.push_back(worst);
  }
  b.series.push_back(s2);
  append(b.errors_per_step, s1_err);
  append(b.errors_per_step, s2.errors);
  b.fitted_rate = fitted_slope(s2.params, s2.errors);
  const Verdict spread_ok = spread == 0.0 ? Verdict::Converged : Verdict::Diverged;
  b.verdict = combine({spread_ok, judge(s1_err, c.tolerance), judge(s2.errors, c.tolerance)});
  b.scalars["stage1_final_error"] = s1_err.back();
  b.scalars["final_error"] = s2.errors.back();
  return out;
}

namespace {

struct AppendixCtx {
  double m, omega;
  SweepSchedule theta_s, hbar_s;
  double tol = 1e-5;
};

// Leading-order forms as listed in the appendix, evaluated independently of
// params::asymptote so the two code paths can be compared.
double appendix_formula(const ParamSet& p, Quantity q, Direction dir) {
  const double mw = p.m_omega(), h = p.hbar, t = p.theta;
  if (dir == Direction::ThetaToZero) {
    switch (q) {
      case Quantity::LambdaPlus:
      case Quantity::LambdaMinus: return mw * h;
      case Quantity::SumLambda: return 2 * mw * h;
      case Quantity::Mu: return h;
      case Quantity::KPlus:
      case Quantity::KMinus: return 4 * mw * h;
      case Quantity::OmegaPlus:
      case Quantity::OmegaMinus: return p.omega;
      case Quantity::GammaPm: return 0.5;
    }
  }
  switch (q) {
    case Quantity::LambdaPlus:
    case Quantity::SumLambda: return mw * mw * t;
    case Quantity::LambdaMinus: return h * h / t;
    case Quantity::Mu: return mw * t;
    case Quantity::KPlus: return 2 * mw * mw * mw * mw * t * t * t / (h * h);
    case Quantity::KMinus: return 2 * h * h / t;
    case Quantity::OmegaPlus: return p.omega;
    case Quantity::OmegaMinus: return p.omega * h * h / (mw * mw * t * t);
    case Quantity::GammaPm: return 0.5 * (1 + 1 / std::numbers::sqrt2);
  }
  return kNaN;
}

ParamSet at_step(const AppendixCtx& c, Direction dir, double s) {
  return dir == Direction::ThetaToZero ? ParamSet{c.m, c.omega, c.theta_s.fixed, s}
                                       : ParamSet{c.m, c.omega, s, c.hbar_s.fixed};
}

const SweepSchedule& schedule_for(const AppendixCtx& c, Direction dir) {
  return dir == Direction::ThetaToZero ? c.theta_s : c.hbar_s;
}

// Builds one report from per-direction error functions.
template <class ErrFn>
LimitReport appendix_entry(const AppendixCtx& c, const std::string& label,
                           const std::string& target, std::vector<Direction> dirs, ErrFn err) {
  LimitReport r;
  r.experiment = "appendix_" + label;
  r.target_description = target;
  r.tolerance = c.tol;
  std::vector<Verdict> vs;
  for (Direction dir : dirs) {
    const auto& sched = schedule_for(c, dir);
    Series s{std::string(to_string(dir)), sched.values, {}};
    double cross = 0.0;
    for (double v : sched.values) {
      const auto [e, x] = err(at_step(c, dir, v), dir);
      s.errors.push_back(e);
      cross = std::max(cross, x);
    }
    r.schedules.push_back(sched);
    append(r.errors_per_step, s.errors);
    r.scalars["cross_check_" + std::string(to_string(dir))] = cross;
    r.scalars["final_error_" + std::string(to_string(dir))] = s.errors.back();
    vs.push_back(judge(s.errors, c.tol));
    if (cross > 1e-9) vs.push_back(Verdict::Diverged);
    r.fitted_rate = fitted_slope(s.params, s.errors);
    r.series.push_back(std::move(s));
  }
  r.verdict = Verdict::Converged;
  for (Verdict v : vs) {
    if (v == Verdict::Diverged) r.verdict = Verdict::Diverged;
    else if (v == Verdict::Inconclusive && r.verdict == Verdict::Converged) r.verdict = Verdict::Inconclusive;
  }
  return r;
}

// max |ratio - 1| over the quantities, and the largest disagreement with params::asymptote_ratio.
std::pair<double, double> ratio_error(const ParamSet& p, Direction dir,
                                      std::initializer_list<Quantity> qs) {
  const auto d = derive(p);
  double e = 0.0, x = 0.0;
  for (Quantity q : qs) {
    const double ratio = quantity_value(d, q) / appendix_formula(p, q, dir);
    e = std::max(e, std::abs(ratio - 1.0));
    x = std::max(x, std::abs(ratio - asymptote_ratio(p, q, dir)));
  }
  return {e, x};
}

}  // namespace

std::vector<LimitReport> appendix_report(double m, double omega, int first_exp, int last_exp,
                                         double fixed_hbar, double fixed_theta) {
  AppendixCtx c{m, omega,
                SweepSchedule::geometric(SweepParameter::Theta, first_exp, last_exp, fixed_hbar),
                SweepSchedule::geometric(SweepParameter::Hbar, first_exp, last_exp, fixed_theta)};
  validate(c.theta_s);
  validate(c.hbar_s);
  validate(ParamSet{m, omega, fixed_hbar, fixed_theta});
  const auto T = Direction::ThetaToZero;
  const auto H = Direction::HbarToZero;
  std::vector<LimitReport> out;
  auto quantity_entry = [&](const std::string& label, const std::string& target, Direction dir,
                            std::initializer_list<Quantity> qs) {
    out.push_back(appendix_entry(c, label, target, {dir}, [qs](const ParamSet& p, Direction d) {
      return ratio_error(p, d, qs);
    }));
  };
  quantity_entry("A1", "lambda_pm ~ m omega hbar", T, {Quantity::LambdaPlus, Quantity::LambdaMinus});
  quantity_entry("A2", "lambda_+ + lambda_- ~ 2 m omega hbar", T, {Quantity::SumLambda});
  quantity_entry("A3", "mu ~ hbar", T, {Quantity::Mu});
  quantity_entry("A4", "K_pm ~ 4 m omega hbar", T, {Quantity::KPlus, Quantity::KMinus});
  quantity_entry("A5", "lambda_+ ~ m^2 omega^2 theta", H, {Quantity::LambdaPlus});
  quantity_entry("A6", "lambda_- ~ hbar^2 / theta", H, {Quantity::LambdaMinus});
  quantity_entry("A7", "lambda_+ + lambda_- ~ m^2 omega^2 theta", H, {Quantity::SumLambda});
  quantity_entry("A8", "mu ~ m omega theta", H, {Quantity::Mu});
  quantity_entry("A9", "K_+ ~ 2 m^4 omega^4 theta^3 / hbar^2", H, {Quantity::KPlus});
  quantity_entry("A10", "K_- ~ 2 hbar^2 / theta", H, {Quantity::KMinus});

  out.push_back(appendix_entry(
      c, "A13", "gamma_pm ~ 1/2 (theta->0), (1 +- 1/sqrt2)/2 (hbar->0)", {T, H},
      [](const ParamSet& p, Direction dir) {
        const auto d = derive(p);
        const double gp = appendix_formula(p, Quantity::GammaPm, dir);
        const double gm = 1.0 - gp;
        const double e = std::max(std::abs(d.gamma_plus / gp - 1), std::abs(d.gamma_minus / gm - 1));
        const double x = std::abs(d.gamma_plus / gp - asymptote_ratio(p, Quantity::GammaPm, dir));
        return std::pair{e, x};
      }));

  static constexpr std::pair<double, double> kArgs[] = {{1, 0}, {0, 1}, {0.3, -0.7}, {2, 0.5}};
  auto fg_entry = [&](const std::string& label, const std::string& target, bool is_f) {
    out.push_back(appendix_entry(c, label, target, {T, H}, [is_f](const ParamSet& p, Direction dir) {
      const auto d = derive(p);
      double worst = 0.0, scale = 0.0;
      for (auto [x, y] : kArgs) {
        const double exact = is_f ? f_fun(d, x, y) : g_fun(d, x, y);
        double lim;
        if (dir == Direction::ThetaToZero) {
          lim = is_f ? f_theta0(p, x, y) : g_theta0(p, x, y);
        } else {
          lim = is_f ? f_hbar0(p, x, y) : g_hbar0(p, x, y);
        }
        worst = std::max(worst, std::abs(exact - lim));
        scale = std::max(scale, std::abs(lim));
      }
      return std::pair{worst / scale, 0.0};
    }));
  };
  fg_entry("A14", "f_{hbar,theta} ~ f_{hbar,0} (theta->0), f_{0,theta} (hbar->0); relative", true);
  fg_entry("A15", "g_{hbar,theta} ~ g_{hbar,0} (theta->0), g_{0,theta} (hbar->0); relative", false);

  quantity_entry("A20", "omega_pm ~ omega", T, {Quantity::OmegaPlus, Quantity::OmegaMinus});
  static constexpr double kTimes[] = {0.5, 1.0, 2.0};
  out.push_back(appendix_entry(c, "A21", "A_t ~ A^{hbar,0}_t entrywise, t in {0.5,1,2}", {T},
                               [](const ParamSet& p, Direction) {
                                 const auto d = derive(p);
                                 double e = 0.0, x = 0.0;
                                 for (double t : kTimes) {
                                   const Mat4 lim = block_rotation(p.omega, p.omega, t);
                                   e = std::max(e, max_abs_entry(evolution(d, t).a_t - lim));
                                   x = std::max(x, max_abs_entry(evolution_theta0(p.omega, t).a_t - lim));
                                 }
                                 return std::pair{e, x};
                               }));
  quantity_entry("A22", "omega_+ ~ omega", H, {Quantity::OmegaPlus});
  quantity_entry("A23", "omega_- ~ omega hbar^2 / (m^2 omega^2 theta^2)", H, {Quantity::OmegaMinus});
  out.push_back(appendix_entry(c, "A24", "A_t ~ A^{0,theta}_t entrywise, t in {0.5,1,2}", {H},
                               [](const ParamSet& p, Direction) {
                                 const auto d = derive(p);
                                 double e = 0.0, x = 0.0;
                                 for (double t : kTimes) {
                                   Mat4 lim = Mat4::Identity();
                                   lim(0, 0) = lim(2, 2) = std::cos(p.omega * t);
                                   lim(0, 2) = std::sin(p.omega * t);
                                   lim(2, 0) = -std::sin(p.omega * t);
                                   e = std::max(e, max_abs_entry(evolution(d, t).a_t - lim));
                                   x = std::max(x, max_abs_entry(evolution_hbar0(p.omega, t).a_t - lim));
                                 }
                                 return std::pair{e, x};
                               }));
  return out;
}

LimitReport localization_report(const LocalizationConfig& c) {
  validate(c.hbar_schedule);
  validate(c.theta_schedule);
  LimitReport r;
  r.experiment = "localization";
  r.target_description =
      "log-log slopes of Wigner widths: 0.5 vs hbar (1-dof, theta->0 4D), 0.5 vs theta "
      "(marginal families), negative x-width slope vs hbar at fixed theta";
  r.schedules = {c.hbar_schedule, c.theta_schedule};
  r.tolerance = c.slope_tolerance;
  const auto& hs = c.hbar_schedule.values;
  const auto& ts = c.theta_schedule.values;
  const double mw = c.m * c.omega;

  Series one{"width_1dof_vs_hbar", hs, {}};
  Series four{"width_x1_4d_theta_small_vs_hbar", hs, {}};
  Series xdiv{"width_x1_4d_vs_hbar_fixed_theta", hs, {}};
  for (double h : hs) {
    one.errors.push_back(localization_widths(wigner_1dof_gaussian(h, 0, 0))(0));
    const double th_small = 1e-6 * h;
    four.errors.push_back(localization_widths(wigner_4d(build(derive({c.m, c.omega, h, th_small})), {}))(0));
    xdiv.errors.push_back(
        localization_widths(wigner_4d(build(derive({c.m, c.omega, h, c.hbar_schedule.fixed})), {}))(0));
  }
  Series rth{"width_R_theta_vs_theta", ts, {}};
  Series exact{"width_exact_marginal_small_hbar_vs_theta", ts, {}};
  Series fin{"variance_final_1d_vs_theta", ts, {}};
  for (double th : ts) {
    const ParamSet p{c.m, c.omega, 1.0, th};
    rth.errors.push_back(localization_widths(wigner_marginal_hbar0(p, Vec2::Zero()))(0));
    const double h_small = 1e-6 * th;
    exact.errors.push_back(
        localization_widths(wigner_marginal_y(derive({c.m, c.omega, h_small, th}), Vec2::Zero()))(0));
    const double w = localization_widths(wigner_final_1d_gaussian(p, 0.0))(0);
    fin.errors.push_back(w * w);
  }
  const double s_one = fitted_slope(hs, one.errors);
  const double s_four = fitted_slope(hs, four.errors);
  const double s_xdiv = fitted_slope(hs, xdiv.errors);
  const double s_rth = fitted_slope(ts, rth.errors);
  const double s_exact = fitted_slope(ts, exact.errors);
  const double s_fin = fitted_slope(ts, fin.errors);
  r.scalars["slope_1dof_vs_hbar"] = s_one;
  r.scalars["slope_4d_theta_small_vs_hbar"] = s_four;
  r.scalars["slope_x_width_vs_hbar_fixed_theta"] = s_xdiv;
  r.scalars["slope_R_theta_vs_theta"] = s_rth;
  r.scalars["slope_exact_marginal_vs_theta"] = s_exact;
  r.scalars["slope_final_1d_variance_vs_theta"] = s_fin;
  r.scalars["final_1d_variance_over_theta"] = fin.errors.back() / ts.back() / (mw * mw);
  append(r.errors_per_step, one.errors);
  append(r.errors_per_step, rth.errors);
  r.fitted_rate = s_one;
  auto near = [&](double s, double target) { return std::abs(s - target) <= c.slope_tolerance; };
  const bool ok = near(s_one, 0.5) && near(s_four, 0.5) && near(s_rth, 0.5) && near(s_exact, 0.5) &&
                  near(s_fin, 1.0) && s_xdiv < 0.0;
  r.verdict = ok ? Verdict::Converged : Verdict::Diverged;
  if (s_xdiv < 0.0) {
    r.notes.push_back("x-widths of the 4D Wigner function grow as hbar -> 0 at fixed theta");
  }
  r.series = {one, four, xdiv, rth, exact, fin};
  return r;
}

LimitReport diagonal_report(const TestFunction& f, const ChainConfig& cfg, double ratio) {
  const ChainConfig c = resolved(cfg);
  if (!(ratio > 0.0)) throw ConfigError("diagonal ratio must be positive");
  const auto probes = probes_or_default(c);
  std::vector<double> target(probes.size());
  for (std::size_t i = 0; i < probes.size(); ++i) target[i] = f(probes[i]);
  LimitReport r;
  r.experiment = "diagonal";
  r.exploratory = true;
  r.target_description = "F along theta = ratio * hbar (exploratory, no acceptance claim)";
  SweepSchedule s = c.hbar_schedule_a;
  s.fixed = ratio;
  r.schedules = {s};
  r.probe_points = probes;
  r.tolerance = c.tolerance;
  Series e{"error_vs_F", s.values, {}};
  for (double h : s.values) {
    e.errors.push_back(sup_diff(smoothed_values(f, {c.m, c.omega, h, ratio * h}, c.rule, probes), target));
  }
  r.errors_per_step = e.errors;
  r.fitted_rate = fitted_slope(e.params, e.errors);
  r.verdict = judge(e.errors, c.tolerance);
  r.scalars["ratio"] = ratio;
  r.series = {e};
  return r;
}

}  // namespace ncphase
