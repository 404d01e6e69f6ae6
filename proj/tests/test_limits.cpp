#include <cmath>
#include <numbers>

#include "doctest.h"
#include "error.hpp"
#include "limits.hpp"

using namespace ncphase;

namespace {

ChainConfig quick_config() {
  ChainConfig c;
  c.probes = probe_cloud(20, 42, -3.0, 3.0);
  return c;
}

const TestFunction& bump() {
  static const TestFunction f = gaussian_bump({}, {1, 1, 1, 1});
  return f;
}

}  // namespace

TEST_CASE("schedules") {
  const auto s = SweepSchedule::geometric(SweepParameter::Hbar, 1, 6, 1.0);
  REQUIRE(s.values.size() == 6);
  CHECK(s.values.front() == doctest::Approx(0.1));
  CHECK(s.values.back() == doctest::Approx(1e-6));
  CHECK_NOTHROW(validate(s));
  SweepSchedule bad = s;
  bad.values = {1e-2, 1e-1};
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad.values = {1.0, -1.0};
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad.values.clear();
  CHECK_THROWS_AS(validate(bad), ConfigError);
}

TEST_CASE("verdict rule") {
  CHECK(judge({1e-1, 1e-2, 1e-3, 1e-4}, 1e-2) == Verdict::Converged);
  CHECK(judge({1e-1, 1e-3, 1e-2, 1e-4}, 1e-2) == Verdict::Inconclusive);
  CHECK(judge({1e-1, 1e-2, 1e-3, 2e-3}, 1e-2) == Verdict::Inconclusive);
  CHECK(judge({1e-1, 1e-1, 1.0}, 1e-2) == Verdict::Diverged);
  CHECK(judge({1e-3, 1e-4}, 1e-2) == Verdict::Inconclusive);
  // rounding-level wiggles below the noise floor do not break the tail
  CHECK(judge({1e-15, 3e-16, 5e-16}, 1e-2) == Verdict::Converged);
  CHECK(fitted_slope({1e-1, 1e-2, 1e-3}, {1e-2, 1e-4, 1e-6}) == doctest::Approx(2.0));
  CHECK(std::isnan(fitted_slope({1.0}, {1.0})));
}

TEST_CASE("chain A on gaussian_bump converges to F") {
  const auto r = chain_theta_then_hbar(bump(), quick_config());
  CHECK(r.verdict == Verdict::Converged);
  CHECK(r.errors_per_step.size() == 12);
  CHECK(r.errors_per_step.back() < 1e-2);
}

TEST_CASE("chain A on a constant stays exact") {
  const auto r = chain_theta_then_hbar(constant(1.0), quick_config());
  for (double e : r.errors_per_step) CHECK(e <= 1e-12);
  CHECK(r.verdict == Verdict::Converged);
}

TEST_CASE("chain A on sigmoid_times_gaussian converges to F") {
  const auto f = sigmoid_times_gaussian(1.0, Vec2(0, 0), Vec2(1, 1));
  const auto r = chain_theta_then_hbar(f, quick_config());
  CHECK(r.verdict == Verdict::Converged);
}

TEST_CASE("chain B on gaussian_bump: limit 0, gap at centre") {
  const auto r = chain_hbar_then_theta(bump(), quick_config());
  CHECK(r.verdict == Verdict::Converged);
  CHECK(r.scalars.at("gap_at_center") >= 0.9);
  CHECK(r.scalars.at("gap_numeric_at_center") >= 0.9);
  CHECK(r.scalars.at("stage1_final_x_variation") < 1e-2);
  CHECK(r.scalars.at("stage1_final_distance") < 1e-2);
}

TEST_CASE("chain B on sigmoid_times_gaussian reaches its declared asymptote") {
  const auto f = sigmoid_times_gaussian(1.0, Vec2(0, 0), Vec2(1, 1));
  const auto r = chain_hbar_then_theta(f, quick_config());
  CHECK(r.verdict == Verdict::Converged);
  CHECK(r.scalars.at("final_error") < 1e-2);
}

TEST_CASE("chain B on a constant: the limits commute") {
  const auto r = chain_hbar_then_theta(constant(1.0), quick_config());
  CHECK(r.scalars.at("gap_at_center") == 0.0);
  CHECK(r.scalars.at("gap_sup_over_probes") == 0.0);
  CHECK(r.verdict == Verdict::Converged);
}

TEST_CASE("chain B needs a declared asymptote") {
  TestFunction f = bump();
  f.asymptote_y = nullptr;
  CHECK_THROWS_AS(chain_hbar_then_theta(f, quick_config()), MissingAsymptoteError);
}

TEST_CASE("dynamics chains") {
  const auto f = sigmoid_times_gaussian(1.0, Vec2(0, 0), Vec2(1, 1));
  ChainConfig c = quick_config();
  c.probes = probe_cloud(10, 42, -3.0, 3.0);
  // a deeper theta sweep pushes the frequency-shift floor theta/hbar below the tail
  c.theta_schedule = SweepSchedule::geometric(SweepParameter::Theta, 1, 8, 0.1);
  const auto r = dynamics_chain_reports(f, c, {std::numbers::pi / 4, std::numbers::pi / 2});
  CHECK(r.chain_a.verdict == Verdict::Converged);
  CHECK(r.chain_b.scalars.at("t_spread") == 0.0);
  CHECK(r.chain_b.verdict == Verdict::Converged);
}

TEST_CASE("dynamics at t = 0 matches the static chain A") {
  ChainConfig c = quick_config();
  c.probes = probe_cloud(10, 42, -3.0, 3.0);
  const auto f = sigmoid_times_gaussian(1.0, Vec2(0, 0), Vec2(1, 1));
  const auto dyn = dynamics_chain_reports(f, c, {0.0});
  const auto stat = chain_theta_then_hbar(f, c);
  REQUIRE(dyn.chain_a.errors_per_step.size() == stat.errors_per_step.size());
  for (std::size_t i = 0; i < stat.errors_per_step.size(); ++i) {
    CHECK(dyn.chain_a.errors_per_step[i] == doctest::Approx(stat.errors_per_step[i]).epsilon(1e-12));
  }
}

TEST_CASE("appendix reports") {
  const auto reports = appendix_report(1.0, 1.0, 1, 6, 1.0, 1.0);
  CHECK(reports.size() == 18);
  for (const auto& r : reports) {
    INFO(r.experiment);
    CHECK(r.verdict == Verdict::Converged);
    for (const auto& [k, v] : r.scalars) {
      if (k.rfind("cross_check", 0) == 0) CHECK(v < 1e-9);
    }
  }
  auto find = [&](const std::string& name) -> const LimitReport& {
    for (const auto& r : reports) {
      if (r.experiment == name) return r;
    }
    FAIL("missing " << name);
    return reports.front();
  };
  CHECK(find("appendix_A6").verdict == Verdict::Converged);
  CHECK(find("appendix_A21").errors_per_step.back() < 1e-5);
  // hbar = 1e-4 is the fourth step
  CHECK(find("appendix_A24").errors_per_step[3] < 1e-3);
}

TEST_CASE("localization slopes") {
  const auto r = localization_report({});
  CHECK(r.scalars.at("slope_1dof_vs_hbar") == doctest::Approx(0.5).epsilon(0.04));
  CHECK(r.scalars.at("slope_R_theta_vs_theta") == doctest::Approx(0.5).epsilon(0.04));
  CHECK(r.scalars.at("slope_x_width_vs_hbar_fixed_theta") < 0.0);
  CHECK(r.scalars.at("slope_final_1d_variance_vs_theta") == doctest::Approx(1.0).epsilon(0.02));
  CHECK(r.verdict == Verdict::Converged);
}

TEST_CASE("diagonal schedule is exploratory") {
  ChainConfig c = quick_config();
  c.probes = probe_cloud(5, 42, -3.0, 3.0);
  const auto r = diagonal_report(bump(), c, 1.0);
  CHECK(r.exploratory);
  CHECK(r.errors_per_step.size() == c.hbar_schedule_a.values.size());
}
