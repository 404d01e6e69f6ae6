#include <cmath>
#include <numbers>

#include "doctest.h"
#include "dynamics.hpp"
#include "error.hpp"
#include "quadrature.hpp"
#include "wigner.hpp"

using namespace ncphase;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("single degree of freedom Wigner function") {
  for (double h : {0.1, 1.0, 2.5}) {
    CHECK(wigner_1dof(h, 0.3, -0.2, 0.3, -0.2) == doctest::Approx(1 / (kPi * h)).epsilon(1e-15));
    const auto w = wigner_1dof_gaussian(h, 0.3, -0.2);
    CHECK(std::abs(integrate_density(w) - 1) < 1e-12);
    CHECK(w(Eigen::Vector2d(1.0, 0.5)) == doctest::Approx(wigner_1dof(h, 0.3, -0.2, 1.0, 0.5)).epsilon(1e-14));
    const auto widths = localization_widths(w);
    CHECK(widths(0) == doctest::Approx(std::sqrt(h / 2)).epsilon(1e-14));
    CHECK(widths(1) == doctest::Approx(std::sqrt(h / 2)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(wigner_1dof(0, 0, 0, 0, 0), DomainError);
}

TEST_CASE("4D Wigner normalisation and theta -> 0 limit") {
  const PhasePoint r0{0.2, -0.4, 0.1, 0.5};
  for (double th : {0.0, 0.1, 1.0, 5.0}) {
    const auto d = derive({1, 1, 0.8, th});
    const auto w = wigner_4d(build(d), r0);
    CHECK(std::abs(integrate_density(w) - 1) < 1e-8);
    CHECK(w.norm_const * (kPi * kPi / 4) / j_determinant(d) == doctest::Approx(1.0).epsilon(1e-15));
  }
  const ParamSet p{1, 1, 0.7, 1e-6};
  const auto w = wigner_4d(build(derive(p)), r0);
  const auto lim = wigner_4d_theta0(p, r0);
  CHECK(lim.norm_const == doctest::Approx(1 / (kPi * 0.7 * kPi * 0.7)).epsilon(1e-15));
  CHECK(4 * limit_maps(p).j_theta0.determinant() / (kPi * kPi) ==
        doctest::Approx(1 / (kPi * 0.7 * kPi * 0.7)).epsilon(1e-13));
  for (const auto& q : probe_cloud(50, 3, -1.5, 1.5)) {
    const double a = w(q.vec()), b = lim(q.vec());
    CHECK(std::abs(a - b) <= 1e-4 * std::max(b, 1e-12) + 1e-14);
  }
  const auto widths = localization_widths(lim);
  CHECK(widths(0) == doctest::Approx(std::sqrt(0.7 / 2)).epsilon(1e-14));
  CHECK(widths(2) == doctest::Approx(std::sqrt(0.7 / 2)).epsilon(1e-14));
  const auto w4 = localization_widths(wigner_4d_theta0({2, 1, 0.7, 0}, r0));
  CHECK(w4(0) == doctest::Approx(std::sqrt(0.7 / 4)).epsilon(1e-14));
  CHECK(w4(3) == doctest::Approx(std::sqrt(0.7)).epsilon(1e-14));
}

TEST_CASE("a and b coefficients") {
  for (double h : {1e-3, 0.1, 1.0}) {
    for (double th : {0.0, 0.1, 3.0}) {
      const auto [a, b] = ab_coeffs(derive({1, 1, h, th}));
      CHECK(a > 0);
      CHECK(b > 0);
    }
  }
  const auto [a0, b0] = ab_coeffs(derive({1.3, 0.6, 0.9, 0}));
  CHECK(a0 == doctest::Approx(b0).epsilon(1e-15));
  // Measured limit of J / (a^2 + b^2) as hbar -> 0 is 1 / (4 m^2 w^2 theta).
  for (double th : {0.5, 1.0, 2.0}) {
    const auto d = derive({1, 1, 1e-3, th});
    const auto [a, b] = ab_coeffs(d);
    CHECK(j_determinant(d) / (a * a + b * b) * th == doctest::Approx(0.25).epsilon(1e-3));
  }
}

TEST_CASE("exact marginal matches direct x-integration of the 4D density") {
  const auto d = derive({1, 1, 0.6, 0.8});
  const PhasePoint r0{0.3, -0.1, 0.4, -0.2};
  const auto w4 = wigner_4d(build(d), r0);
  const auto wm = wigner_marginal_y(d, Vec2(r0.y1, r0.y2));
  CHECK(std::abs(integrate_density(wm) - 1) < 1e-12);
  // x-integral by trapezoid on a wide box
  for (auto [y1, y2] : {std::pair{0.4, -0.2}, {1.0, 0.5}, {-0.6, -1.1}}) {
    const int n = 241;
    const double lo = -12, hi = 12, hstep = (hi - lo) / (n - 1);
    double acc = 0;
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) {
        double wt = hstep * hstep;
        if (i == 0 || i == n - 1) wt *= 0.5;
        if (k == 0 || k == n - 1) wt *= 0.5;
        acc += wt * w4(Eigen::Vector4d(lo + i * hstep, lo + k * hstep, y1, y2));
      }
    }
    CHECK(std::abs(acc - wm(Eigen::Vector2d(y1, y2))) < 1e-7);
  }
}

TEST_CASE("hbar -> 0 behaviour of the exact marginal and of R^theta") {
  const double th = 0.5;
  const auto wm = wigner_marginal_y(derive({1, 1, 1e-5, th}), Vec2(0.1, 0.2));
  // the exact marginal keeps variance m^2 w^2 theta per axis
  CHECK(localization_widths(wm)(0) == doctest::Approx(std::sqrt(th)).epsilon(1e-6));
  const auto r = wigner_marginal_hbar0({1, 1, 1e-5, th}, Vec2(0.1, 0.2));
  CHECK(r(Eigen::Vector2d(0.1, 0.2)) == doctest::Approx(1 / (kPi * th)).epsilon(1e-15));
  CHECK(localization_widths(r)(0) == doctest::Approx(std::sqrt(th / 2)).epsilon(1e-15));
  CHECK(std::abs(integrate_density(r) - 1) < 1e-12);
  CHECK(wigner_marginal_hbar0({1, 1, 1, 0.25}, Vec2(0, 0))(Eigen::Vector2d(0, 0)) ==
        doctest::Approx(1 / (kPi * 0.25)).epsilon(1e-15));
}

TEST_CASE("evolved Wigner function") {
  const auto d = derive({1, 1, 0.5, 1e-7});
  const auto pm = build(d);
  const PhasePoint r0{0.7, -0.3, 0.2, 0.9};
  const auto w0 = wigner_evolved(pm, evolution(d, 0).a_t, r0);
  const auto plain = wigner_4d(pm, r0);
  CHECK((w0.center - plain.center).norm() == 0.0);
  CHECK((w0.precision - plain.precision).norm() == 0.0);
  for (double t : {0.5, 2.0}) {
    const auto wt = wigner_evolved(pm, evolution(d, -t).a_t, r0);
    const Vec4 classical = evolution_theta0(1.0, -t).a_t * r0.vec();
    CHECK((wt.center - Eigen::VectorXd(classical)).norm() < 1e-6);
    CHECK(std::abs(integrate_density(wt) - 1) < 1e-8);
    CHECK((wt.precision - plain.precision).norm() == 0.0);
  }
}

TEST_CASE("evolved marginals") {
  const PhasePoint r0{0.7, -0.3, 0.2, 0.9};
  const auto d = derive({1, 1, 0.5, 0.4});
  const auto m0 = wigner_evolved_marginal(d, evolution(d, 0).a_t, r0);
  CHECK(m0.center(0) == 0.2);
  CHECK(m0.center(1) == 0.9);
  const ParamSet p{1, 1, 1e-6, 0.4};
  const auto mh = wigner_evolved_marginal_hbar0(p, kPi / 2, r0);
  CHECK(std::abs(mh.center(0) - r0.x1) < 1e-15);
  CHECK(mh.center(1) == r0.y2);
  PhasePoint shifted = r0;
  shifted.x2 += 5;
  CHECK((wigner_evolved_marginal_hbar0(p, 1.3, shifted).center - wigner_evolved_marginal_hbar0(p, 1.3, r0).center).norm() == 0.0);
  // sign cross-check: y1 mean of the evolved 4D density at small hbar
  const auto dsmall = derive(p);
  const auto w4 = wigner_evolved(build(dsmall), evolution(dsmall, -kPi / 2).a_t, r0);
  PhaseFunction y1{4, [](const Eigen::VectorXd& x) { return x(2); }};
  CHECK(std::abs(expectation(y1, w4, QuadratureRule::tensor(4)) - mh.center(0)) < 1e-6);
  CHECK(marginal_evolution_gap(p, 0.0, r0) == 0.0);
  CHECK(marginal_evolution_gap(p, kPi / 2, r0) == doctest::Approx(std::abs(r0.x1)).epsilon(1e-14));
}

TEST_CASE("final one-dimensional distribution") {
  for (double th : {0.1, 0.5, 2.0}) {
    const ParamSet p{1, 1, 1e-6, th};
    const auto g = wigner_final_1d_gaussian(p, 0.3);
    CHECK(std::abs(integrate_density(g) - 1) < 1e-12);
    CHECK(localization_widths(g)(0) * localization_widths(g)(0) == doctest::Approx(th / 2).epsilon(1e-14));
    for (double t : {0.0, 1.0, 17.0}) {
      const auto m = wigner_evolved_marginal_hbar0(p, t, {0.8, 0.1, -0.5, 0.3});
      // integrate out y1 numerically
      for (double y2 : {-1.0, 0.3, 1.7}) {
        const int n = 401;
        const double lo = -15, hi = 15, h = (hi - lo) / (n - 1);
        double acc = 0;
        for (int i = 0; i < n; ++i) {
          const double wt = (i == 0 || i == n - 1) ? 0.5 * h : h;
          acc += wt * m(Eigen::Vector2d(lo + i * h, y2));
        }
        CHECK(std::abs(acc - wigner_final_1d(p, 0.3, y2)) < 1e-8);
        CHECK(marginalise_last(m)(Eigen::VectorXd::Constant(1, y2)) ==
              doctest::Approx(wigner_final_1d(p, 0.3, y2)).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("expectations") {
  const auto d = derive({1, 1, 0.6, 0.3});
  const auto pm = build(d);
  const PhasePoint r0{0.2, 0.1, -0.3, 0.4};
  const auto w = wigner_4d(pm, r0);
  PhaseFunction one{4, [](const Eigen::VectorXd&) { return 1.0; }};
  CHECK(std::abs(expectation(one, w, QuadratureRule::tensor(6)) - 1) < 1e-13);
  const auto bump = gaussian_bump(r0, {1, 0.8, 1.2, 1});
  const double exact = gaussian_expectation(*bump.gaussian, w);
  CHECK(std::abs(expectation(as_phase_function(bump), w, QuadratureRule::tensor(24)) - exact) < 1e-8);
  const auto off = gaussian_bump({1, -1, 0.5, 0}, {1, 0.8, 1.2, 1});
  CHECK(std::abs(expectation(as_phase_function(off), w, QuadratureRule::tensor(24)) -
                 gaussian_expectation(*off.gaussian, w)) < 1e-8);
  CHECK(std::abs(expectation(as_phase_function(off), w, QuadratureRule::monte_carlo(200000, 5)) -
                 gaussian_expectation(*off.gaussian, w)) < 5e-3);
  PhaseFunction two{2, [](const Eigen::VectorXd&) { return 1.0; }};
  CHECK_THROWS_AS(expectation(two, w, QuadratureRule::tensor(4)), DimensionError);
  // x-dependent bump averages to zero as hbar -> 0; y-only functions do not
  double prev = 1e300;
  for (double h : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const auto wh = wigner_4d(build(derive({1, 1, h, 1})), {0, 0, 0, 0});
    const double e = gaussian_expectation(*gaussian_bump({0, 0, 0, 0}, {1, 1, 1, 1}).gaussian, wh);
    CHECK(e < prev);
    prev = e;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("x widths of the 4D density diverge as hbar -> 0") {
  double prev = 0;
  for (double h : {1e-1, 1e-2, 1e-3}) {
    const auto wd = localization_widths(wigner_4d(build(derive({1, 1, h, 1})), {0, 0, 0, 0}));
    CHECK(wd(0) > prev);
    prev = wd(0);
  }
  const auto lim = make_gaussian(Eigen::Vector4d::Zero(),
                                 4.0 * limit_maps({1, 1, 1, 0.5}).j_hbar0.transpose() *
                                     limit_maps({1, 1, 1, 0.5}).j_hbar0);
  const auto wl = localization_widths(lim);
  CHECK(std::isinf(wl(0)));
  CHECK(std::isinf(wl(1)));
  CHECK(wl(2) == doctest::Approx(std::sqrt(0.25)).epsilon(1e-14));
}
