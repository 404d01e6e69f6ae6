#pragma once

#include <functional>
#include <utility>

#include "funcspace.hpp"
#include "linalg.hpp"
#include "params.hpp"
#include "phasemap.hpp"
#include "quadrature.hpp"

namespace ncphase {

// density(x) = norm_const * exp(-1/2 (x - center)^T precision (x - center)),
// norm_const = sqrt(det(precision / 2 pi)). A zero-mass direction (flat
// precision) is allowed only for unnormalised limit shapes; norm_const is 0 then.
struct WignerGaussian {
  int dim = 0;
  Eigen::VectorXd center;
  Eigen::MatrixXd precision;
  double norm_const = 0.0;

  double operator()(const Eigen::VectorXd& x) const;
};

WignerGaussian make_gaussian(Eigen::VectorXd center, Eigen::MatrixXd precision);

// (1 / pi hbar) exp(-((q-q0)^2 + (p-p0)^2) / hbar)
double wigner_1dof(double hbar, double q0, double p0, double q, double p);
WignerGaussian wigner_1dof_gaussian(double hbar, double q0, double p0);

// (4J / pi^2) exp(-2 |j (r - r0)|^2)
WignerGaussian wigner_4d(const PhaseMap& pm, const PhasePoint& r0);

// theta -> 0 of wigner_4d: oscillator coherent-state Wigner function.
WignerGaussian wigner_4d_theta0(const ParamSet& p, const PhasePoint& r0);

// a = lambda_- sqrt(K+) / (2 mu (lambda_+ + lambda_-)), b likewise with lambda_+, K-.
std::pair<double, double> ab_coeffs(const DerivedParams& d);

// Exact x1, x2-marginal of wigner_4d: isotropic, variance (a^2 + b^2) / (4J) per axis.
WignerGaussian wigner_marginal_y(const DerivedParams& d, const Vec2& y0);

// R^theta_{y0}(y) = (1 / pi m^2 w^2 theta) exp(-|y - y0|^2 / (m^2 w^2 theta)).
WignerGaussian wigner_marginal_hbar0(const ParamSet& p, const Vec2& y0);

// wigner_4d recentred at A_{-t} r0; `a_minus_t` is A_{-t}.
WignerGaussian wigner_evolved(const PhaseMap& pm, const Mat4& a_minus_t, const PhasePoint& r0);

// x-marginal of wigner_evolved: y-part of A_{-t} r0, marginal shape.
WignerGaussian wigner_evolved_marginal(const DerivedParams& d, const Mat4& a_minus_t,
                                       const PhasePoint& r0);

// R^theta shape centred at the y-part of A^{0,theta}_{-t} r0.
WignerGaussian wigner_evolved_marginal_hbar0(const ParamSet& p, double t, const PhasePoint& r0);

// (1 / (sqrt(pi theta) m omega)) exp(-(y2 - y20)^2 / (m^2 w^2 theta))
double wigner_final_1d(const ParamSet& p, double y20, double y2);
WignerGaussian wigner_final_1d_gaussian(const ParamSet& p, double y20);

// Total mass by a trapezoid rule on [-9, 9] standard deviations along the
// principal axes; evaluates the density itself, so norm_const is tested.
double integrate_density(const WignerGaussian& w, int points_per_axis = 37);

// y1-integral of a 2D Wigner Gaussian, as a function of y2.
WignerGaussian marginalise_last(const WignerGaussian& w);

// Integrand of dimension `dim` for expectation().
struct PhaseFunction {
  int dim = 4;
  std::function<double(const Eigen::VectorXd&)> f;
};

PhaseFunction as_phase_function(const TestFunction& f);

// int F W by tensor Gauss-Hermite (order^dim nodes) or Monte Carlo after
// whitening with the Cholesky factor of the precision.
double expectation(const PhaseFunction& f, const WignerGaussian& w, const QuadratureRule& rule);

// Closed form of int A exp(-(r-c)^T D (r-c)) W(r) dr for a 4D W.
double gaussian_expectation(const GaussianForm& g, const WignerGaussian& w);

// sqrt(diag(precision^{-1})); +inf along flat directions.
Eigen::VectorXd localization_widths(const WignerGaussian& w);

// Distance between the y-centres obtained by evolving then marginalising
// (hbar -> 0 regime) and by marginalising then evolving with x0 forgotten.
double marginal_evolution_gap(const ParamSet& p, double t, const PhasePoint& r0);

}  // namespace ncphase
