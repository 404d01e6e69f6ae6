#include "params.hpp"

#include <cmath>
#include <sstream>

#include "error.hpp"

namespace ncphase {

namespace {

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

void require_finite(double v, const char* name, const ParamSet& p) {
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << name << " is not representable at (m=" << p.m << ", omega=" << p.omega
       << ", hbar=" << p.hbar << ", theta=" << p.theta << ")";
    throw OverflowError(os.str());
  }
}

}  // namespace

void validate(const ParamSet& p) {
  if (!finite_positive(p.m)) throw DomainError("m must be positive and finite");
  if (!finite_positive(p.omega)) throw DomainError("omega must be positive and finite");
  if (!finite_positive(p.hbar)) throw DomainError("hbar must be positive and finite");
  if (!std::isfinite(p.theta) || p.theta < 0.0) {
    throw DomainError("theta must be non-negative and finite");
  }
}

DerivedParams derive(const ParamSet& p) {
  validate(p);
  DerivedParams d;
  d.p = p;

  const double mw = p.m_omega();
  const double mwt = mw * p.theta;
  const double h2 = p.hbar * p.hbar;

  d.root = std::hypot(2.0 * p.hbar, mwt);
  const double s_plus = d.root + mwt;
  d.lambda_plus = 0.5 * mw * s_plus;
  // (s - m omega theta) = 4 hbar^2 / (s + m omega theta), free of cancellation.
  d.lambda_minus = 2.0 * mw * h2 / s_plus;

  d.ground_ratio = 4.0 * h2 / (s_plus * s_plus);
  d.beta = std::log(d.ground_ratio);

  d.k_plus = d.lambda_plus * (4.0 + 2.0 * d.lambda_plus * p.theta / h2);
  // 4 - 2 theta lambda_- / hbar^2 = 2 (1 + exp(beta))
  d.k_minus = 2.0 * d.lambda_minus * (1.0 + d.ground_ratio);
  d.mu = d.lambda_plus / mw;

  if (!(h2 > 0.0) || !(d.lambda_minus > 0.0) || !(d.ground_ratio > 0.0)) {
    std::ostringstream os;
    os << "hbar^2 or lambda_minus leaves the representable range at (hbar=" << p.hbar
       << ", theta=" << p.theta << ")";
    throw OverflowError(os.str());
  }
  require_finite(d.lambda_plus, "lambda_plus", p);
  require_finite(d.k_plus, "k_plus", p);

  // N = hbar^4 / (2 hbar^2 lambda_- - theta lambda_-^2)
  const double n_den = d.lambda_minus * (1.0 + d.ground_ratio) / h2;
  if (!(n_den > 0.0)) {
    std::ostringstream os;
    os << "ground-state normalisation denominator is not positive (" << n_den << ")";
    throw DomainError(os.str());
  }
  d.n_norm = 1.0 / n_den;

  const double gdiff = mwt / std::sqrt(4.0 * h2 + 2.0 * mwt * mwt);
  d.gamma_plus = 0.5 * (1.0 + gdiff);
  d.gamma_minus = 0.5 * (1.0 - gdiff);

  d.omega_plus = d.lambda_plus / (p.m * d.mu);
  d.omega_minus = d.lambda_minus / (p.m * d.mu);

  require_finite(d.lambda_plus, "lambda_plus", p);
  require_finite(d.k_plus, "k_plus", p);
  require_finite(d.k_minus, "k_minus", p);
  require_finite(d.n_norm, "n_norm", p);
  require_finite(d.beta, "beta", p);
  if (!(d.k_plus > 0.0) || !(d.k_minus > 0.0)) {
    throw OverflowError("K+/K- underflowed to zero");
  }
  return d;
}

std::pair<double, double> mu_limits(const ParamSet& p) {
  validate(p);
  if (!(p.theta > 0.0)) throw DomainError("mu_limits requires theta > 0");
  return {p.hbar, p.m_omega() * p.theta};
}

std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::LambdaPlus: return "lambda_plus";
    case Quantity::LambdaMinus: return "lambda_minus";
    case Quantity::SumLambda: return "sum_lambda";
    case Quantity::Mu: return "mu";
    case Quantity::KPlus: return "k_plus";
    case Quantity::KMinus: return "k_minus";
    case Quantity::OmegaPlus: return "omega_plus";
    case Quantity::OmegaMinus: return "omega_minus";
    case Quantity::GammaPm: return "gamma_pm";
  }
  return "?";
}

std::string_view to_string(Direction d) {
  return d == Direction::ThetaToZero ? "theta_to_0" : "hbar_to_0";
}

double quantity_value(const DerivedParams& d, Quantity q) {
  switch (q) {
    case Quantity::LambdaPlus: return d.lambda_plus;
    case Quantity::LambdaMinus: return d.lambda_minus;
    case Quantity::SumLambda: return d.lambda_plus + d.lambda_minus;
    case Quantity::Mu: return d.mu;
    case Quantity::KPlus: return d.k_plus;
    case Quantity::KMinus: return d.k_minus;
    case Quantity::OmegaPlus: return d.omega_plus;
    case Quantity::OmegaMinus: return d.omega_minus;
    case Quantity::GammaPm: return d.gamma_plus;
  }
  return 0.0;
}

double asymptote(const ParamSet& p, Quantity q, Direction dir) {
  validate(p);
  if (!(p.theta > 0.0)) throw DomainError("asymptotes need theta > 0");
  const double mw = p.m_omega();
  const double h = p.hbar;
  const double t = p.theta;
  if (dir == Direction::ThetaToZero) {
    switch (q) {
      case Quantity::LambdaPlus:
      case Quantity::LambdaMinus: return mw * h;
      case Quantity::SumLambda: return 2.0 * mw * h;
      case Quantity::Mu: return h;
      case Quantity::KPlus:
      case Quantity::KMinus: return 4.0 * mw * h;
      case Quantity::OmegaPlus:
      case Quantity::OmegaMinus: return p.omega;
      case Quantity::GammaPm: return 0.5;
    }
  } else {
    switch (q) {
      case Quantity::LambdaPlus:
      case Quantity::SumLambda: return mw * mw * t;
      case Quantity::LambdaMinus: return h * h / t;
      case Quantity::Mu: return mw * t;
      case Quantity::KPlus: return 2.0 * std::pow(mw, 4) * t * t * t / (h * h);
      case Quantity::KMinus: return 2.0 * h * h / t;
      case Quantity::OmegaPlus: return p.omega;
      case Quantity::OmegaMinus: return p.omega * h * h / (mw * mw * t * t);
      case Quantity::GammaPm: return 0.5 * (1.0 + 1.0 / std::sqrt(2.0));
    }
  }
  return 0.0;
}

double asymptote_ratio(const ParamSet& p, Quantity q, Direction dir) {
  const double denom = asymptote(p, q, dir);
  if (denom == 0.0 || !std::isfinite(denom)) {
    std::ostringstream os;
    os << "asymptote of " << to_string(q) << " (" << to_string(dir)
       << ") vanishes or overflows at the evaluation point";
    throw DivisionByZeroError(os.str());
  }
  return quantity_value(derive(p), q) / denom;
}

}  // namespace ncphase
