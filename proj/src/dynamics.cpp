#include "dynamics.hpp"

#include <cmath>

#include "error.hpp"

namespace ncphase {

std::pair<double, double> frequencies(const DerivedParams& d) {
  if (!(d.mu > 0.0)) throw DomainError("frequencies need mu > 0");
  return {d.omega_plus, d.omega_minus};
}

Mat4 block_rotation(double omega_first, double omega_second, double t) {
  if (!std::isfinite(t)) throw DomainError("evolution time must be finite");
  const double c1 = std::cos(omega_first * t), s1 = std::sin(omega_first * t);
  const double c2 = std::cos(omega_second * t), s2 = std::sin(omega_second * t);
  Mat4 a = Mat4::Zero();
  a(0, 0) = c1;
  a(0, 2) = s1;
  a(2, 0) = -s1;
  a(2, 2) = c1;
  a(1, 1) = c2;
  a(1, 3) = s2;
  a(3, 1) = -s2;
  a(3, 3) = c2;
  return a;
}

EvolutionMatrix evolution(const DerivedParams& d, double t) {
  const auto [wp, wm] = frequencies(d);
  return {block_rotation(wp, wm, t), t, Regime::Exact};
}

EvolutionMatrix evolution_theta0(double omega, double t) {
  return {block_rotation(omega, omega, t), t, Regime::Theta0};
}

EvolutionMatrix evolution_hbar0(double omega, double t) {
  return {block_rotation(omega, 0.0, t), t, Regime::Hbar0};
}

Mat4 symplectic_form() {
  Mat4 o = Mat4::Zero();
  o.block<2, 2>(0, 2) = Mat2::Identity();
  o.block<2, 2>(2, 0) = -Mat2::Identity();
  return o;
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Exact: return "exact";
    case Regime::Theta0: return "theta0";
    case Regime::Hbar0: return "hbar0";
  }
  return "unknown";
}

}  // namespace ncphase
