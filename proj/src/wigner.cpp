#include "wigner.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "dynamics.hpp"
#include "error.hpp"

namespace ncphase {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::MatrixXd iso(int dim, double p) { return p * Eigen::MatrixXd::Identity(dim, dim); }

// Precision 2 / (m^2 w^2 theta) per axis, the R^theta shape.
double r_theta_precision(const ParamSet& p) {
  validate(p);
  if (!(p.theta > 0.0)) throw DomainError("R^theta needs theta > 0");
  const double mw = p.m_omega();
  return 2.0 / (mw * mw * p.theta);
}

}  // namespace

double WignerGaussian::operator()(const Eigen::VectorXd& x) const {
  if (x.size() != dim) throw DimensionError("point dimension does not match the Wigner function");
  const Eigen::VectorXd u = x - center;
  return norm_const * std::exp(-0.5 * u.dot(precision * u));
}

WignerGaussian make_gaussian(Eigen::VectorXd center, Eigen::MatrixXd precision) {
  WignerGaussian w;
  w.dim = static_cast<int>(center.size());
  if (precision.rows() != w.dim || precision.cols() != w.dim) {
    throw DimensionError("precision shape does not match the centre");
  }
  w.center = std::move(center);
  w.precision = 0.5 * (precision + precision.transpose());
  const double det = (w.precision / (2.0 * kPi)).determinant();
  w.norm_const = det > 0.0 ? std::sqrt(det) : 0.0;
  return w;
}

double wigner_1dof(double hbar, double q0, double p0, double q, double p) {
  if (!(hbar > 0.0)) throw DomainError("hbar must be positive");
  const double dq = q - q0, dp = p - p0;
  return std::exp(-(dq * dq + dp * dp) / hbar) / (kPi * hbar);
}

WignerGaussian wigner_1dof_gaussian(double hbar, double q0, double p0) {
  if (!(hbar > 0.0)) throw DomainError("hbar must be positive");
  return make_gaussian(Eigen::Vector2d(q0, p0), iso(2, 2.0 / hbar));
}

WignerGaussian wigner_4d(const PhaseMap& pm, const PhasePoint& r0) {
  if (!(pm.j_det() > 0.0)) throw SingularityError("Wigner density needs j_det > 0");
  const Eigen::MatrixXd p = 4.0 * pm.j().transpose() * pm.j();
  WignerGaussian w = make_gaussian(r0.vec(), p);
  // closed form 4 J / pi^2 is exact where det() of an ill-conditioned P is not
  w.norm_const = 4.0 * pm.j_det() / (kPi * kPi);
  return w;
}

WignerGaussian wigner_4d_theta0(const ParamSet& p, const PhasePoint& r0) {
  validate(p);
  const double mw = p.m_omega();
  Eigen::MatrixXd prec = Eigen::MatrixXd::Zero(4, 4);
  prec(0, 0) = prec(1, 1) = 2.0 * mw / p.hbar;
  prec(2, 2) = prec(3, 3) = 2.0 / (p.hbar * mw);
  WignerGaussian w = make_gaussian(r0.vec(), prec);
  w.norm_const = 1.0 / (kPi * p.hbar * kPi * p.hbar);
  return w;
}

std::pair<double, double> ab_coeffs(const DerivedParams& d) {
  const double c = 1.0 / (2.0 * d.mu * (d.lambda_plus + d.lambda_minus));
  return {c * d.lambda_minus * std::sqrt(d.k_plus), c * d.lambda_plus * std::sqrt(d.k_minus)};
}

WignerGaussian wigner_marginal_y(const DerivedParams& d, const Vec2& y0) {
  // Integrating x out of 2|j u|^2 leaves 2 J / (a^2 + b^2) |y - y0|^2.
  const auto [a, b] = ab_coeffs(d);
  const double jdet = j_determinant(d);
  if (!(jdet > 0.0)) throw SingularityError("marginal needs j_det > 0");
  WignerGaussian w = make_gaussian(Eigen::Vector2d(y0), iso(2, 4.0 * jdet / (a * a + b * b)));
  return w;
}

WignerGaussian wigner_marginal_hbar0(const ParamSet& p, const Vec2& y0) {
  return make_gaussian(Eigen::Vector2d(y0), iso(2, r_theta_precision(p)));
}

WignerGaussian wigner_evolved(const PhaseMap& pm, const Mat4& a_minus_t, const PhasePoint& r0) {
  return wigner_4d(pm, PhasePoint::from(a_minus_t * r0.vec()));
}

WignerGaussian wigner_evolved_marginal(const DerivedParams& d, const Mat4& a_minus_t,
                                       const PhasePoint& r0) {
  const Vec4 c = a_minus_t * r0.vec();
  return wigner_marginal_y(d, Vec2(c(2), c(3)));
}

WignerGaussian wigner_evolved_marginal_hbar0(const ParamSet& p, double t, const PhasePoint& r0) {
  const Vec4 c = evolution_hbar0(p.omega, -t).a_t * r0.vec();
  return wigner_marginal_hbar0(p, Vec2(c(2), c(3)));
}

double wigner_final_1d(const ParamSet& p, double y20, double y2) {
  validate(p);
  if (!(p.theta > 0.0)) throw DomainError("final 1D distribution needs theta > 0");
  const double mw = p.m_omega();
  const double u = y2 - y20;
  return std::exp(-u * u / (mw * mw * p.theta)) / (std::sqrt(kPi * p.theta) * mw);
}

WignerGaussian wigner_final_1d_gaussian(const ParamSet& p, double y20) {
  Eigen::VectorXd c(1);
  c(0) = y20;
  return make_gaussian(c, iso(1, r_theta_precision(p)));
}

double integrate_density(const WignerGaussian& w, int points_per_axis) {
  if (points_per_axis < 3) throw DomainError("integrate_density needs at least 3 points per axis");
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(w.precision);
  if (!(eig.eigenvalues().minCoeff() > 0.0)) throw SingularityError("density has a flat direction");
  // x = c + V diag(sigma) t
  const Eigen::MatrixXd basis =
      eig.eigenvectors() * eig.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal();
  const double jac = std::abs(basis.determinant());
  const double span = 9.0;
  const double step = 2.0 * span / (points_per_axis - 1);
  std::size_t total = 1;
  for (int i = 0; i < w.dim; ++i) total *= static_cast<std::size_t>(points_per_axis);
  double acc = 0.0;
  Eigen::VectorXd t(w.dim);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    double weight = 1.0;
    for (int i = 0; i < w.dim; ++i) {
      const int k = static_cast<int>(rem % points_per_axis);
      rem /= points_per_axis;
      t(i) = -span + step * k;
      if (k == 0 || k == points_per_axis - 1) weight *= 0.5;
    }
    acc += weight * w(w.center + basis * t);
  }
  for (int i = 0; i < w.dim; ++i) acc *= step;
  return acc * jac;
}

WignerGaussian marginalise_last(const WignerGaussian& w) {
  if (w.dim != 2) throw DimensionError("marginalise_last expects a 2D Gaussian");
  // Schur complement of the y1 block.
  const Eigen::MatrixXd& p = w.precision;
  if (!(p(0, 0) > 0.0)) throw SingularityError("flat direction cannot be integrated out");
  Eigen::VectorXd c(1);
  c(0) = w.center(1);
  Eigen::MatrixXd q(1, 1);
  q(0, 0) = p(1, 1) - p(1, 0) * p(0, 1) / p(0, 0);
  return make_gaussian(c, q);
}

PhaseFunction as_phase_function(const TestFunction& f) {
  return {4, [f](const Eigen::VectorXd& x) { return f({x(0), x(1), x(2), x(3)}); }};
}

double expectation(const PhaseFunction& f, const WignerGaussian& w, const QuadratureRule& rule) {
  if (f.dim != w.dim) throw DimensionError("integrand and Wigner function dimensions differ");
  validate(rule);
  const Eigen::LLT<Eigen::MatrixXd> llt(w.precision);
  if (llt.info() != Eigen::Success) throw SingularityError("precision is not positive definite");
  // x = c + L^{-T} s turns the density into the standard normal in s.
  const Eigen::MatrixXd lt = llt.matrixU();
  const int dim = w.dim;
  auto point = [&](const Eigen::VectorXd& s) -> Eigen::VectorXd {
    return w.center + lt.triangularView<Eigen::Upper>().solve(s);
  };
  if (rule.kind == QuadratureRule::Kind::MonteCarlo) {
    std::mt19937_64 gen(rule.seed);
    std::normal_distribution<double> normal;
    double sum = 0.0;
    Eigen::VectorXd s(dim);
    for (std::uint64_t k = 0; k < rule.samples; ++k) {
      for (int i = 0; i < dim; ++i) s(i) = normal(gen);
      sum += f.f(point(s));
    }
    return sum / static_cast<double>(rule.samples);
  }
  const auto& gh = gauss_hermite(rule.order_per_axis);
  const std::size_t n = gh.nodes.size();
  double wsum = 0.0;
  for (double v : gh.weights) wsum += v;
  std::size_t total = 1;
  for (int i = 0; i < dim; ++i) total *= n;
  double acc = 0.0;
  Eigen::VectorXd s(dim);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    double weight = 1.0;
    for (int i = 0; i < dim; ++i) {
      const std::size_t k = rem % n;
      rem /= n;
      s(i) = std::numbers::sqrt2 * gh.nodes[k];
      weight *= gh.weights[k] / wsum;
    }
    acc += weight * f.f(point(s));
  }
  return acc;
}

double gaussian_expectation(const GaussianForm& g, const WignerGaussian& w) {
  if (w.dim != 4) throw DimensionError("closed-form expectation is defined for 4D densities");
  // E exp(-(X-c)^T D (X-c)), X ~ N(r0, P^{-1}):
  //   sqrt(det P / det(P + 2D)) exp(-d^T P (P + 2D)^{-1} D d),  d = r0 - c.
  const Mat4 p = w.precision;
  const Mat4 s = p + 2.0 * g.d;
  const Vec4 d = w.center - g.center;
  const Eigen::FullPivLU<Mat4> lu(s);
  if (!lu.isInvertible()) throw SingularityError("P + 2D is singular");
  const double ratio = p.determinant() / s.determinant();
  const double quad = d.dot(p * lu.solve(g.d * d));
  return g.amplitude * std::sqrt(std::max(ratio, 0.0)) * std::exp(-quad);
}

Eigen::VectorXd localization_widths(const WignerGaussian& w) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(w.precision);
  const Eigen::VectorXd& ev = eig.eigenvalues();
  const Eigen::MatrixXd& v = eig.eigenvectors();
  const double scale = ev.cwiseAbs().maxCoeff();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(w.dim);
  std::vector<bool> flat(w.dim, false);
  for (int k = 0; k < w.dim; ++k) {
    const bool zero = ev(k) <= 1e-14 * scale;
    for (int i = 0; i < w.dim; ++i) {
      if (zero && std::abs(v(i, k)) > 1e-12) {
        flat[i] = true;
      } else if (!zero) {
        out(i) += v(i, k) * v(i, k) / ev(k);
      }
    }
  }
  for (int i = 0; i < w.dim; ++i) {
    out(i) = flat[i] ? std::numeric_limits<double>::infinity() : std::sqrt(out(i));
  }
  return out;
}

double marginal_evolution_gap(const ParamSet& p, double t, const PhasePoint& r0) {
  const auto evolved = wigner_evolved_marginal_hbar0(p, t, r0);
  const PhasePoint y_only{0.0, 0.0, r0.y1, r0.y2};
  const auto forgotten = wigner_evolved_marginal_hbar0(p, t, y_only);
  return (evolved.center - forgotten.center).norm();
}

}  // namespace ncphase
