#include <cmath>
#include <numbers>

#include "doctest.h"
#include "error.hpp"
#include "params.hpp"

using namespace ncphase;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
}  // namespace

TEST_CASE("derive at theta = 0 collapses to the commutative oscillator") {
  const auto d = derive({1, 1, 1, 0});
  CHECK(d.lambda_plus == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(d.lambda_minus == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(d.mu == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(d.k_plus == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(d.k_minus == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(d.omega_plus == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(d.omega_minus == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(d.gamma_plus == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(d.gamma_minus == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("derive at theta = 2") {
  const auto d = derive({1, 1, 1, 2});
  const double r2 = std::numbers::sqrt2;
  CHECK(rel(d.lambda_plus, r2 + 1) < 1e-14);
  CHECK(rel(d.lambda_minus, r2 - 1) < 1e-14);
  CHECK(rel(d.lambda_plus * d.lambda_minus, 1.0) < 1e-14);
  CHECK(rel(d.beta, std::log(3 - 2 * r2)) < 1e-13);
  CHECK(rel(d.beta, -std::log(3 + 2 * r2)) < 1e-13);
  CHECK(rel(d.mu, r2 + 1) < 1e-14);
  CHECK(rel(d.mu * 1.0, d.lambda_plus) < 1e-15);
}

TEST_CASE("derived invariants on a log grid") {
  for (int i = 0; i < 10; ++i) {
    for (int k = 0; k < 10; ++k) {
      const double h = std::pow(10.0, -3.0 + 4.0 * i / 9.0);
      const double t = std::pow(10.0, -3.0 + 4.0 * k / 9.0);
      const ParamSet p{1.3, 0.7, h, t};
      const auto d = derive(p);
      const double mw = p.m_omega();
      CHECK(rel(d.lambda_plus * d.lambda_minus, mw * mw * h * h) < 1e-12);
      // the difference is only as accurate as its larger term
      CHECK(std::abs(d.lambda_plus - d.lambda_minus - mw * mw * t) < 1e-12 * d.lambda_plus);
      CHECK(rel(d.lambda_plus + d.lambda_minus, mw * std::sqrt(4 * h * h + mw * mw * t * t)) <
            1e-12);
      const double lhs = d.ground_ratio * (1 + t * d.lambda_plus / (h * h));
      // the naive form loses digits to cancellation; agreement is only loose
      CHECK(rel(d.ground_ratio, 1 - t * d.lambda_minus / (h * h)) < 1e-7);
      CHECK(rel(std::exp(d.beta), d.ground_ratio) < 1e-12);
      CHECK(rel(lhs, 1.0) < 1e-12);
      CHECK(d.gamma_plus + d.gamma_minus == doctest::Approx(1.0).epsilon(1e-15));
      CHECK(d.gamma_plus > 0);
      CHECK(d.gamma_plus < 1);
      CHECK(d.gamma_minus > 0);
      CHECK(d.n_norm > 0);
      CHECK(d.k_plus > 0);
      CHECK(d.k_minus > 0);
      CHECK(rel(d.omega_plus * d.mu * p.m, d.lambda_plus) < 1e-15);
    }
  }
}

TEST_CASE("derive rejects invalid inputs") {
  CHECK_THROWS_AS(derive({1, 1, 0, 1}), DomainError);
  CHECK_THROWS_AS(derive({1, 1, -1, 1}), DomainError);
  CHECK_THROWS_AS(derive({1, 1, 1, -0.1}), DomainError);
  CHECK_THROWS_AS(derive({0, 1, 1, 1}), DomainError);
  CHECK_THROWS_AS(derive({1, 1, 1e-200, 1e200}), OverflowError);
}

TEST_CASE("mu_limits") {
  auto [a, b] = mu_limits({1, 1, 0.3, 0.7});
  CHECK(a == doctest::Approx(0.3));
  CHECK(b == doctest::Approx(0.7));
  auto [c, e] = mu_limits({2, 3, 1, 1});
  CHECK(c == doctest::Approx(1.0));
  CHECK(e == doctest::Approx(6.0));
  double prev = 1e300;
  for (int k = 1; k <= 8; ++k) {
    const double err = std::abs(derive({1, 1, 1, std::pow(10.0, -k)}).mu - 1.0);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-8);
}

TEST_CASE("asymptote_ratio examples") {
  CHECK(std::abs(asymptote_ratio({1, 1, 1e-4, 1}, Quantity::LambdaMinus, Direction::HbarToZero) -
                 1) < 1e-6);
  CHECK(std::abs(asymptote_ratio({1, 1, 1e-4, 1}, Quantity::KPlus, Direction::HbarToZero) - 1) <
        1e-6);
  // mu / hbar - 1 = m omega theta / (2 hbar) + O(theta^2), so 5e-7 here
  const double mu_err =
      asymptote_ratio({1, 1, 1, 1e-6}, Quantity::Mu, Direction::ThetaToZero) - 1;
  CHECK(mu_err == doctest::Approx(5e-7).epsilon(1e-5));
}

TEST_CASE("asymptote_ratio converges with slope at least one") {
  const Quantity all[] = {Quantity::LambdaPlus, Quantity::LambdaMinus, Quantity::SumLambda,
                          Quantity::Mu,         Quantity::KPlus,       Quantity::KMinus,
                          Quantity::OmegaPlus,  Quantity::OmegaMinus,  Quantity::GammaPm};
  for (auto dir : {Direction::ThetaToZero, Direction::HbarToZero}) {
    for (auto q : all) {
      double prev = 1e300;
      for (int k = 2; k <= 5; ++k) {
        const double s = std::pow(10.0, -k);
        const ParamSet p = dir == Direction::ThetaToZero ? ParamSet{1, 1, 1, s} : ParamSet{1, 1, s, 1};
        const double err = std::abs(asymptote_ratio(p, q, dir) - 1);
        CAPTURE(to_string(q));
        CAPTURE(to_string(dir));
        CHECK(err <= prev);
        if (prev < 1e300 && err > 1e-14) CHECK(prev / err >= 9.0);
        prev = err;
      }
    }
  }
}

TEST_CASE("asymptote_ratio needs a positive shrinking regime") {
  CHECK_THROWS_AS(asymptote_ratio({1, 1, 1, 0}, Quantity::Mu, Direction::HbarToZero), Error);
}
