#pragma once

#include <string_view>
#include <utility>

namespace ncphase {

// Physical inputs. m, omega, hbar > 0 and theta >= 0; hbar = 0 is reached only
// through the dedicated limit operations.
struct ParamSet {
  double m = 1.0;
  double omega = 1.0;
  double hbar = 1.0;
  double theta = 0.0;

  double m_omega() const { return m * omega; }
};

struct DerivedParams {
  ParamSet p;
  double root = 0.0;  // sqrt(4 hbar^2 + m^2 omega^2 theta^2)
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  double k_plus = 0.0;
  double k_minus = 0.0;
  double mu = 0.0;
  // exp(beta) = 1 - theta lambda_- / hbar^2, kept separately because beta
  // itself loses the information when the ratio is close to one.
  double ground_ratio = 1.0;
  double beta = 0.0;
  double n_norm = 0.0;
  double gamma_plus = 0.5;
  double gamma_minus = 0.5;
  double omega_plus = 0.0;
  double omega_minus = 0.0;
};

void validate(const ParamSet& p);

DerivedParams derive(const ParamSet& p);

// (lim_{theta->0} mu, lim_{hbar->0} mu) = (hbar, m omega theta).
std::pair<double, double> mu_limits(const ParamSet& p);

enum class Quantity {
  LambdaPlus,
  LambdaMinus,
  SumLambda,
  Mu,
  KPlus,
  KMinus,
  OmegaPlus,
  OmegaMinus,
  GammaPm,
};

enum class Direction { ThetaToZero, HbarToZero };

std::string_view to_string(Quantity q);
std::string_view to_string(Direction d);

// Leading-order value of `q` when the parameter named by `dir` shrinks.
double asymptote(const ParamSet& p, Quantity q, Direction dir);

// exact / asymptote; tends to 1 as the shrinking parameter goes to 0.
double asymptote_ratio(const ParamSet& p, Quantity q, Direction dir);

double quantity_value(const DerivedParams& d, Quantity q);

}  // namespace ncphase
