#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "dynamics.hpp"

using namespace ncphase;

TEST_CASE("frequencies") {
  auto [a, b] = frequencies(derive({1, 1, 1, 0}));
  CHECK(a == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(b == doctest::Approx(1.0).epsilon(1e-15));
  auto [c, e] = frequencies(derive({1, 1, 1e-9, 1e-12}));
  (void)c;
  (void)e;
  const auto d = derive({1, 1, 1e-3, 1});
  auto [wp, wm] = frequencies(d);
  CHECK(std::abs(wp - 1) < 1e-5);
  CHECK(std::abs(wm - 1e-6) < 1e-5);
  CHECK(wp * 1.0 * d.mu == doctest::Approx(d.lambda_plus).epsilon(1e-15));
}

TEST_CASE("evolution matrices") {
  const auto d = derive({1, 1, 0.3, 0.8});
  CHECK(max_abs_entry(evolution(d, 0).a_t - Mat4::Identity()) == 0.0);
  const auto ex = evolution(derive({1, 1, 1e-4, 1}), 1.0);
  CHECK(max_abs_entry(ex.a_t - evolution_hbar0(1.0, 1.0).a_t) < 1e-4);
  const auto full = evolution_theta0(1.0, 2 * std::numbers::pi);
  CHECK(max_abs_entry(full.a_t - Mat4::Identity()) < 1e-10);
  CHECK(max_abs_entry(evolution(derive({1, 1, 1, 1e-6}), 1.0).a_t -
                      evolution_theta0(1.0, 1.0).a_t) < 1e-5);
}

TEST_CASE("group law, determinant, orthogonality, symplecticity") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(-10, 10);
  const Mat4 omega = symplectic_form();
  for (double h : {1e-3, 0.1, 1.0}) {
    for (double th : {0.0, 0.1, 1.0, 10.0}) {
      const auto d = derive({1.2, 0.9, h, th});
      for (int s = 0; s < 20; ++s) {
        const double t1 = u(gen), t2 = u(gen);
        const Mat4 a = evolution(d, t1).a_t;
        const Mat4 b = evolution(d, t2).a_t;
        CHECK(std::abs(a.determinant() - 1) < 1e-12);
        CHECK(max_abs_entry(a * evolution(d, -t1).a_t - Mat4::Identity()) < 1e-12);
        CHECK(max_abs_entry(a.transpose() * a - Mat4::Identity()) < 1e-12);
        CHECK(max_abs_entry(evolution(d, t1 + t2).a_t - a * b) < 1e-10);
        CHECK(max_abs_entry(a.transpose() * omega * a - omega) < 1e-10);
      }
    }
  }
}

TEST_CASE("hbar0 regime freezes the second plane") {
  const Mat4 a = evolution_hbar0(1.3, 0.7).a_t;
  for (int k = 0; k < 4; ++k) {
    CHECK(a(1, k) == (k == 1 ? 1.0 : 0.0));
    CHECK(a(3, k) == (k == 3 ? 1.0 : 0.0));
    CHECK(a(k, 1) == (k == 1 ? 1.0 : 0.0));
    CHECK(a(k, 3) == (k == 3 ? 1.0 : 0.0));
  }
}
