#include "phasemap.hpp"

#include <cmath>

#include "error.hpp"

namespace ncphase {

namespace {

// Common prefactor of f: mu (4hbar^2 + m^2w^2th^2)^{1/4} / (2 sqrt(m omega) hbar).
double f_scale(const DerivedParams& d) {
  return d.mu * std::sqrt(d.root) / (2.0 * std::sqrt(d.p.m_omega()) * d.p.hbar);
}

// Prefactor of g making h the inverse of j up to an isometry:
// f_scale * 2 hbar m omega / sqrt(4hbar^2 + 2 m^2w^2th^2).
double g_scale(const DerivedParams& d) {
  const double mw = d.p.m_omega();
  const double mwt = mw * d.p.theta;
  const double den = std::sqrt(4.0 * d.p.hbar * d.p.hbar + 2.0 * mwt * mwt);
  return d.mu * mw * std::sqrt(d.root / mw) / den;
}

Mat4 assemble_h(double (*f)(const DerivedParams&, double, double),
                double (*g)(const DerivedParams&, double, double), const DerivedParams& d) {
  Mat4 h = Mat4::Zero();
  // columns are images of the unit vectors e1..e4
  h(0, 0) = f(d, 1.0, 0.0);
  h(0, 1) = f(d, 0.0, 1.0);
  h(1, 2) = f(d, 1.0, 0.0);
  h(1, 3) = f(d, 0.0, 1.0);
  h(2, 2) = g(d, 1.0, 0.0);
  h(2, 3) = g(d, 0.0, 1.0);
  h(3, 0) = -g(d, 1.0, 0.0);
  h(3, 1) = -g(d, 0.0, 1.0);
  return h;
}

double inv_sqrt_gamma_plus_hbar0() { return 1.0 / std::sqrt(0.5 * (1.0 + 1.0 / std::sqrt(2.0))); }
double inv_sqrt_gamma_minus_hbar0() { return 1.0 / std::sqrt(0.5 * (1.0 - 1.0 / std::sqrt(2.0))); }

}  // namespace

double PhaseMap::isometry_defect() const {
  const Mat4 jh = j_ * h_;
  return max_abs_entry(jh.transpose() * jh - Mat4::Identity());
}

Mat4 j_matrix(const DerivedParams& d) {
  const double c = 1.0 / (2.0 * d.mu * (d.lambda_plus + d.lambda_minus));
  const double skp = std::sqrt(d.k_plus);
  const double skm = std::sqrt(d.k_minus);
  const double h = d.p.hbar;
  Mat4 j;
  // clang-format off
  j << d.lambda_minus * skp, 0.0,                  0.0,      -h * skp,
      -d.lambda_plus * skm,  0.0,                  0.0,      -h * skm,
       0.0,                  d.lambda_minus * skp, h * skp,   0.0,
       0.0,                  d.lambda_plus * skm, -h * skm,   0.0;
  // clang-format on
  return c * j;
}

double j_determinant(const DerivedParams& d) {
  const double sum = d.lambda_plus + d.lambda_minus;
  const double mu2 = d.mu * d.mu;
  return d.p.hbar * d.p.hbar * d.k_plus * d.k_minus / (16.0 * mu2 * mu2 * sum * sum);
}

PhaseMap build(const DerivedParams& d) {
  if (!(d.k_plus > 0.0) || !(d.k_minus > 0.0)) {
    throw SingularityError("phase map needs K+ > 0 and K- > 0");
  }
  if (!(d.p.hbar > 0.0)) throw SingularityError("phase map needs hbar > 0");
  return PhaseMap(j_matrix(d), j_determinant(d), assemble_h(&f_fun, &g_fun, d));
}

double f_fun(const DerivedParams& d, double a, double b) {
  return f_scale(d) * (a / std::sqrt(d.gamma_plus) + b / std::sqrt(d.gamma_minus));
}

double g_fun(const DerivedParams& d, double a, double b) {
  return g_scale(d) * (a / std::sqrt(d.gamma_plus) - b / std::sqrt(d.gamma_minus));
}

double g_fun_as_printed(const DerivedParams& d, double a, double b) {
  const double scale = d.mu * std::sqrt(d.p.m_omega()) / std::sqrt(d.root);
  return scale * (a / std::sqrt(d.gamma_plus) - b / std::sqrt(d.gamma_minus));
}

Mat4 h_matrix_as_printed(const DerivedParams& d) {
  return assemble_h(&f_fun, &g_fun_as_printed, d);
}

LimitMaps limit_maps(const ParamSet& p) {
  validate(p);
  const double mw = p.m_omega();
  const double smw = std::sqrt(mw);
  LimitMaps out;
  Mat4 a;
  // clang-format off
  a <<  smw, 0.0, 0.0,       -1.0 / smw,
       -smw, 0.0, 0.0,       -1.0 / smw,
        0.0, smw, 1.0 / smw,  0.0,
        0.0, smw, -1.0 / smw, 0.0;
  // clang-format on
  out.j_theta0 = a / (2.0 * std::sqrt(p.hbar));

  out.j_hbar0 = Mat4::Zero();
  if (p.theta > 0.0) {
    const double k = 1.0 / (mw * std::sqrt(2.0 * p.theta));
    out.j_hbar0(0, 3) = -k;
    out.j_hbar0(2, 2) = k;
  }
  return out;
}

double f_theta0(const ParamSet& p, double a, double b) {
  return std::sqrt(p.hbar / p.m_omega()) * (a + b);
}

double g_theta0(const ParamSet& p, double a, double b) {
  return std::sqrt(p.hbar * p.m_omega()) * (a - b);
}

double f_hbar0(const ParamSet& p, double a, double b) {
  const double mw = p.m_omega();
  return 0.5 * mw * std::pow(p.theta, 1.5) / p.hbar *
         (a * inv_sqrt_gamma_plus_hbar0() + b * inv_sqrt_gamma_minus_hbar0());
}

double g_hbar0(const ParamSet& p, double a, double b) {
  return p.m_omega() * std::sqrt(0.5 * p.theta) *
         (a * inv_sqrt_gamma_plus_hbar0() - b * inv_sqrt_gamma_minus_hbar0());
}

double overlap_kernel(const PhaseMap& pm, const PhasePoint& r, const PhasePoint& r2) {
  const Vec4 u = pm.j() * (r.vec() - r2.vec());
  return std::exp(-u.squaredNorm());
}

}  // namespace ncphase
