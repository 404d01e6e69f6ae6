#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "dynamics.hpp"
#include "error.hpp"
#include "smoothing.hpp"

using namespace ncphase;

namespace {

struct Setup {
  DerivedParams d;
  PhaseMap pm;
  explicit Setup(const ParamSet& p) : d(derive(p)), pm(build(d)) {}
};

TestFunction gauss_y(double c) {
  // F with F_inf(y1, y2) = exp(-y1^2 - y2^2) and F_inf(y2) = c exp(-y2^2)
  TestFunction f;
  f.label = "gauss_y";
  f.eval = [](const PhasePoint& r) { return std::exp(-r.y1 * r.y1 - r.y2 * r.y2); };
  f.asymptote_y = [](double y1, double y2) { return std::exp(-y1 * y1 - y2 * y2); };
  f.asymptote_y2 = [c](double y2) { return c * std::exp(-y2 * y2); };
  return f;
}

}  // namespace

TEST_CASE("smoothing the constant 1 gives 1") {
  const auto probes = probe_cloud(20, 42, -3, 3);
  for (double h : {1e-3, 0.1, 1.0, 10.0}) {
    for (double t : {0.0, 1e-3, 1.0, 10.0}) {
      Setup s({1, 1, h, t});
      const auto sm = smooth(constant(1.0), s.d, s.pm, QuadratureRule::tensor(8));
      for (const auto& v : sm.on(probes)) CHECK(std::abs(v.value - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("tensor quadrature matches the closed form on a bump") {
  Setup s({1, 1, 1, 0.1});
  const auto f = gaussian_bump({0, 0, 0, 0}, {1, 1, 1, 1});
  const auto probes = probe_cloud(100, 42, -3, 3);
  const auto vals = smooth(f, s.d, s.pm, QuadratureRule::tensor(32)).on(probes);
  double worst = 0;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    worst = std::max(worst, std::abs(vals[i].value - closed_form_smooth(*f.gaussian, s.pm.h(), probes[i])));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("Monte Carlo and kernel form agree with the tensor rule") {
  Setup s({1, 1, 1, 0.1});
  const auto f = gaussian_bump({0, 0, 0, 0}, {1, 1, 1, 1});
  const auto probes = probe_cloud(4, 42, -1.5, 1.5);
  const auto tensor = smooth(f, s.d, s.pm, QuadratureRule::tensor(32)).on(probes);
  const auto mc = smooth(f, s.d, s.pm, QuadratureRule::monte_carlo(1'000'000, 42)).on(probes);
  const auto kern =
      smooth_kernel_form(f, s.d, s.pm, QuadratureRule::monte_carlo(1'000'000, 42)).on(probes);
  for (std::size_t i = 0; i < probes.size(); ++i) {
    CHECK(mc[i].std_error > 0);
    CHECK(std::abs(mc[i].value - tensor[i].value) < 3 * mc[i].std_error);
    CHECK(std::abs(kern[i].value - tensor[i].value) < 3 * kern[i].std_error);
  }
  const auto again = smooth(f, s.d, s.pm, QuadratureRule::monte_carlo(1'000'000, 42)).on(probes);
  CHECK(again[0].value == mc[0].value);
}

TEST_CASE("kernel form is unital") {
  Setup s({1, 1, 0.7, 0.3});
  const auto v =
      smooth_kernel_form(constant(1.0), s.d, s.pm, QuadratureRule::monte_carlo(1000, 1)).at({0, 1, 2, 3});
  CHECK(std::abs(v.value - 1.0) < 1e-12);
  CHECK_THROWS_AS(smooth_kernel_form(constant(1.0), s.d, s.pm, QuadratureRule::tensor(4)),
                  DomainError);
}

TEST_CASE("translation covariance") {
  Setup s({1, 1, 1, 0.1});
  const Vec4 shift(0.4, -0.3, 1.1, 0.2);
  const auto f = gaussian_bump({0, 0, 0, 0}, {1, 1.5, 1, 0.8});
  const auto g = gaussian_bump(PhasePoint::from(shift), {1, 1.5, 1, 0.8});
  const auto sf = smooth(f, s.d, s.pm, QuadratureRule::tensor(24));
  const auto sg = smooth(g, s.d, s.pm, QuadratureRule::tensor(24));
  double worst = 0;
  for (const auto& p : probe_cloud(20, 5, -2, 2)) {
    worst = std::max(worst, std::abs(sg(PhasePoint::from(p.vec() + shift)) - sf(p)));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("positivity bounds") {
  Setup s({1, 1, 0.5, 2});
  const auto f = sigmoid_times_gaussian(1.0, {0, 0}, {1, 1});
  for (const auto& v : smooth(f, s.d, s.pm, QuadratureRule::tensor(12)).on(probe_cloud(20, 9, -3, 3))) {
    CHECK(v.value >= 0.0);
    CHECK(v.value <= 1.0);
  }
}

TEST_CASE("evolved smoothing at t = 0 equals plain smoothing") {
  Setup s({1, 1, 0.5, 0.2});
  const auto f = gaussian_bump({0.2, 0, -0.1, 0.3}, {1, 1, 1, 1});
  const auto a = smooth(f, s.d, s.pm, QuadratureRule::tensor(12));
  const auto b = smooth_evolved(f, s.d, s.pm, evolution(s.d, 0.0).a_t, QuadratureRule::tensor(12));
  for (const auto& p : probe_cloud(10, 1, -2, 2)) CHECK(a(p) == b(p));
  CHECK_THROWS_AS(smooth_evolved(f, s.d, s.pm, 2.0 * Mat4::Identity(), QuadratureRule::tensor(4)),
                  DomainError);
}

TEST_CASE("evolved smoothing matches the closed form") {
  Setup s({1, 1, 0.5, 0.2});
  const auto f = gaussian_bump({0.2, 0, -0.1, 0.3}, {1, 0.7, 1, 1.3});
  const Mat4 a = evolution(s.d, -0.9).a_t;
  const auto sm = smooth_evolved(f, s.d, s.pm, a, QuadratureRule::tensor(24));
  for (const auto& p : probe_cloud(10, 1, -2, 2)) {
    CHECK(std::abs(sm(p) - closed_form_smooth(*f.gaussian, s.pm.h(), p, &a)) < 5e-8);
  }
}

TEST_CASE("closed form tends to F along both schedules") {
  const auto f = gaussian_bump({0, 0, 0, 0}, {1, 1, 1, 1});
  const auto probes = probe_cloud(100, 42, -3, 3);
  auto sup_err = [&](const ParamSet& p) {
    const auto pm = build(derive(p));
    double worst = 0;
    for (const auto& r : probes) worst = std::max(worst, std::abs(closed_form_smooth(*f.gaussian, pm.h(), r) - f(r)));
    return worst;
  };
  double prev = 1e300;
  for (int k = 1; k <= 6; ++k) {
    const double e = sup_err({1, 1, std::pow(10.0, -k), 0.0});
    CHECK(e < prev);
    prev = e;
  }
  CHECK(prev < 1e-5);
}

TEST_CASE("budget guard") {
  Setup s({1, 1, 1, 1});
  CHECK_THROWS_AS(smooth(constant(1), s.d, s.pm, QuadratureRule::tensor(65)), BudgetError);
  CHECK_THROWS_AS(smooth(constant(1), s.d, s.pm, QuadratureRule::monte_carlo(200'000'000, 1)),
                  BudgetError);
  SmoothingBudget tight;
  tight.max_tensor_order = 8;
  CHECK_THROWS_AS(smooth(constant(1), s.d, s.pm, QuadratureRule::tensor(10), tight), BudgetError);
}

TEST_CASE("static hbar -> 0 reduction") {
  const auto c = hbar0_static_reduction(constant(0.7), {1, 1, 1, 0.5});
  CHECK(std::abs(c(0.3, -1.0) - 0.7) < 1e-15);
  for (double th : {0.05, 0.25, 1.0}) {
    const auto red = hbar0_static_reduction(gauss_y(1), {1, 1, 1, th});
    const double s2 = 1 + 4 * th;
    for (auto [y1, y2] : {std::pair{0.0, 0.0}, {1.0, -0.5}, {2.0, 2.5}}) {
      const double exact = std::exp(-(y1 * y1 + y2 * y2) / s2) / s2;
      CHECK(std::abs(red(y1, y2) - exact) < 1e-8);
    }
  }
  // sup |reduction - F_inf| falls linearly in theta
  std::vector<double> errs;
  for (int k = 2; k <= 5; ++k) {
    const auto red = hbar0_static_reduction(gauss_y(1), {1, 1, 1, std::pow(10.0, -k)});
    double worst = 0;
    for (double y = -3; y <= 3; y += 0.25) worst = std::max(worst, std::abs(red(y, 0.5) - std::exp(-y * y - 0.25)));
    errs.push_back(worst);
  }
  for (std::size_t i = 1; i < errs.size(); ++i) {
    CHECK(std::log10(errs[i - 1] / errs[i]) == doctest::Approx(1.0).epsilon(0.05));
  }
  TestFunction bare;
  bare.eval = [](const PhasePoint&) { return 0.0; };
  CHECK_THROWS_AS(hbar0_static_reduction(bare, {1, 1, 1, 1}), MissingAsymptoteError);
  CHECK_THROWS_AS(hbar0_static_reduction(constant(1), {1, 1, 1, 0}), DomainError);
}

TEST_CASE("dynamic hbar -> 0 reduction") {
  const auto red = hbar0_dynamic_reduction(gauss_y(1), {1, 1, 1, 0.25}, 0.0);
  for (double y = -3; y <= 3; y += 0.125) {
    CHECK(std::abs(red(y) - std::exp(-y * y / 2) / std::numbers::sqrt2) < 1e-12);
  }
  const auto r0 = hbar0_dynamic_reduction(gauss_y(0.5), {1, 1, 1, 0.3}, 0.0);
  const auto r1 = hbar0_dynamic_reduction(gauss_y(0.5), {1, 1, 1, 0.3}, 1.0);
  const auto r17 = hbar0_dynamic_reduction(gauss_y(0.5), {1, 1, 1, 0.3}, 17.0);
  for (double y = -3; y <= 3; y += 0.5) {
    CHECK(r0(y) == r1(y));
    CHECK(r0(y) == r17(y));
  }
  CHECK(std::abs(hbar0_dynamic_reduction(constant(2.5), {1, 1, 1, 1}, 3.0)(0.4) - 2.5) < 1e-14);
}
