#include "quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>

#include "error.hpp"

namespace ncphase {

namespace {

GaussHermiteRule compute_gauss_hermite(int n) {
  // Golub-Welsch for starting values, then Newton on the orthonormal
  // Hermite recurrence to get nodes and weights to full precision.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = std::sqrt(0.5 * k);
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd guess = eig.eigenvalues();

  const double pim4 = std::pow(std::numbers::pi, -0.25);
  GaussHermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double z = guess(i);
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = pim4;
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt(static_cast<double>(j - 1) / j) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    rule.nodes[i] = z;
    rule.weights[i] = 2.0 / (pp * pp);
  }
  // symmetrise against rounding so odd moments vanish exactly
  for (int i = 0; i < n / 2; ++i) {
    const double x = 0.5 * (rule.nodes[n - 1 - i] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[n - 1 - i] + rule.weights[i]);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

double radical_inverse(std::uint64_t i, unsigned base) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

}  // namespace

const GaussHermiteRule& gauss_hermite(int order) {
  if (order < 1 || order > 256) {
    std::ostringstream os;
    os << "Gauss-Hermite order " << order << " outside [1, 256]";
    throw DomainError(os.str());
  }
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussHermiteRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[order];
  if (!slot) slot = std::make_unique<GaussHermiteRule>(compute_gauss_hermite(order));
  return *slot;
}

double integrate_gh_1d(const std::function<double(double)>& f, int order) {
  const auto& rule = gauss_hermite(order);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(rule.nodes[i]);
  return sum;
}

void validate(const QuadratureRule& rule) {
  if (rule.kind == QuadratureRule::Kind::GaussHermiteTensor) {
    if (rule.order_per_axis < 2) throw DomainError("tensor quadrature needs order_per_axis >= 2");
  } else if (rule.samples < 1000) {
    throw DomainError("Monte Carlo quadrature needs at least 1000 samples");
  }
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<PhasePoint> probe_cloud(std::size_t count, std::uint64_t seed, double lo, double hi) {
  if (!(hi > lo)) throw DomainError("probe box needs hi > lo");
  constexpr std::array<unsigned, 4> bases{2, 3, 5, 7};
  std::array<double, 4> shift{0.0, 0.0, 0.0, 0.0};
  if (seed != 0) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (auto& s : shift) s = uni(gen);
  }
  std::vector<PhasePoint> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::array<double, 4> u{};
    for (int k = 0; k < 4; ++k) {
      double v = radical_inverse(i + 1, bases[k]) + shift[k];
      if (v >= 1.0) v -= 1.0;
      u[k] = lo + (hi - lo) * v;
    }
    out.push_back({u[0], u[1], u[2], u[3]});
  }
  return out;
}

}  // namespace ncphase
