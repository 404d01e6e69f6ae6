#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "funcspace.hpp"
#include "params.hpp"
#include "quadrature.hpp"

namespace ncphase {

enum class SweepParameter { Hbar, Theta };

struct SweepSchedule {
  SweepParameter parameter = SweepParameter::Hbar;
  std::vector<double> values;  // strictly decreasing, positive
  double fixed = 1.0;          // value of the other parameter

  // 10^{-first}, ..., 10^{-last}
  static SweepSchedule geometric(SweepParameter p, int first, int last, double fixed);
};

void validate(const SweepSchedule& s);

enum class Verdict { Converged, Diverged, Inconclusive };

// A named error sequence evaluated along one schedule.
struct Series {
  std::string name;
  std::vector<double> params;
  std::vector<double> errors;
};

struct LimitReport {
  std::string experiment;
  std::string target_description;
  std::vector<SweepSchedule> schedules;
  std::vector<PhasePoint> probe_points;
  std::vector<double> errors_per_step;  // concatenated over schedules
  std::vector<Series> series;           // per-stage breakdown and side quantities
  double fitted_rate = 0.0;             // log-log slope on the last schedule; NaN if unfit
  double tolerance = 1e-2;
  Verdict verdict = Verdict::Inconclusive;
  bool exploratory = false;
  std::map<std::string, double> scalars;
  std::vector<std::string> notes;
};

std::string_view to_string(Verdict v);
std::string_view to_string(SweepParameter p);

// Errors at or below this are treated as exact zeros by the monotonicity test.
inline constexpr double kNoiseFloor = 1e-13;
// Discretisation floor as a fraction of the tolerance: once two consecutive
// errors sit below tolerance * kFloorFraction, their order is quadrature noise.
inline constexpr double kFloorFraction = 1e-4;

// The last three errors non-increasing, ignoring pairs below `floor`.
bool tail_monotone(const std::vector<double>& errors, double floor = kNoiseFloor);
Verdict judge(const std::vector<double>& errors, double tolerance);
// Least-squares slope of log(error) against log(param); NaN with < 2 usable points.
double fitted_slope(const std::vector<double>& params, const std::vector<double>& errors);

struct ChainConfig {
  double m = 1.0;
  double omega = 1.0;
  double hbar_fixed = 0.1;   // chain A, stage 1
  double theta_fixed = 1.0;  // chain B, stage 1
  SweepSchedule theta_schedule = SweepSchedule::geometric(SweepParameter::Theta, 1, 6, 0.1);
  SweepSchedule hbar_schedule_a = SweepSchedule::geometric(SweepParameter::Hbar, 1, 6, 1e-6);
  SweepSchedule hbar_schedule_b = SweepSchedule::geometric(SweepParameter::Hbar, 1, 4, 1.0);
  QuadratureRule rule = QuadratureRule::tensor(24);
  std::vector<PhasePoint> probes;
  double tolerance = 1e-2;
  int reduction_order = 64;
  // Chain B x-variation: first `y_probes` probes supply (y1, y2), first
  // `x_probes` probes supply (x1, x2).
  std::size_t y_probes = 20;
  std::size_t x_probes = 5;
};

// Fills the schedules' fixed values so they agree with hbar_fixed / theta_fixed.
ChainConfig resolved(ChainConfig c);

// theta -> 0 at hbar_fixed, then hbar -> 0 at theta_min; target F.
LimitReport chain_theta_then_hbar(const TestFunction& f, const ChainConfig& c);

// hbar -> 0 at theta_fixed (x-variation, distance to the static reduction),
// then theta -> 0 of the reduction against F_inf(y1, y2); carries the gap.
LimitReport chain_hbar_then_theta(const TestFunction& f, const ChainConfig& c);

struct DynamicsReports {
  LimitReport chain_a;
  LimitReport chain_b;
};

DynamicsReports dynamics_chain_reports(const TestFunction& f, const ChainConfig& c,
                                       const std::vector<double>& t_values);

// One report per appendix formula: A1..A10, A13..A15, A20..A24.
std::vector<LimitReport> appendix_report(double m, double omega, int first_exp, int last_exp,
                                         double fixed_hbar, double fixed_theta);

struct LocalizationConfig {
  double m = 1.0;
  double omega = 1.0;
  SweepSchedule hbar_schedule = SweepSchedule::geometric(SweepParameter::Hbar, 1, 6, 1.0);
  SweepSchedule theta_schedule = SweepSchedule::geometric(SweepParameter::Theta, 1, 6, 1e-6);
  double slope_tolerance = 0.02;
};

LimitReport localization_report(const LocalizationConfig& c);

// theta = ratio * hbar along the hbar schedule; no acceptance claim.
LimitReport diagonal_report(const TestFunction& f, const ChainConfig& c, double ratio);

}  // namespace ncphase
