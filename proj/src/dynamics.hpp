#pragma once

#include <utility>

#include "linalg.hpp"
#include "params.hpp"

namespace ncphase {

enum class Regime { Exact, Theta0, Hbar0 };

// A_t acts on r = (x1, x2, y1, y2) as a rotation by omega_+ t in the (x1, y1)
// plane and by omega_- t in the (x2, y2) plane. Coherent labels move along
// r -> A_{-t} r.
struct EvolutionMatrix {
  Mat4 a_t = Mat4::Identity();
  double t = 0.0;
  Regime regime = Regime::Exact;
};

std::pair<double, double> frequencies(const DerivedParams& d);

Mat4 block_rotation(double omega_first, double omega_second, double t);

EvolutionMatrix evolution(const DerivedParams& d, double t);
// Both planes rotate at omega.
EvolutionMatrix evolution_theta0(double omega, double t);
// Second plane frozen at identity.
EvolutionMatrix evolution_hbar0(double omega, double t);

// [[0, I], [-I, 0]] in the (x1, x2, y1, y2) ordering.
Mat4 symplectic_form();

std::string_view to_string(Regime r);

}  // namespace ncphase
