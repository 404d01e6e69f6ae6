#pragma once

#include "linalg.hpp"
#include "params.hpp"

namespace ncphase {

// The linear map r -> (Re z1, Re z2, Im z1, Im z2) of coherent labels, its
// determinant, and the h-map w -> h(w) used inside the smoothing integral.
// Immutable after build().
class PhaseMap {
 public:
  PhaseMap() = default;
  PhaseMap(const Mat4& j, double j_det, const Mat4& h) : j_(j), j_det_(j_det), h_(h) {}

  const Mat4& j() const { return j_; }
  // closed form hbar^2 K+ K- / (16 mu^4 (lambda+ + lambda-)^2)
  double j_det() const { return j_det_; }
  const Mat4& h() const { return h_; }

  Vec4 apply_h(const Vec4& w) const { return h_ * w; }

  // max |(j h)^T (j h) - 1| entrywise; zero for an exact isometry.
  double isometry_defect() const;

 private:
  Mat4 j_ = Mat4::Zero();
  double j_det_ = 0.0;
  Mat4 h_ = Mat4::Zero();
};

PhaseMap build(const DerivedParams& d);

Mat4 j_matrix(const DerivedParams& d);
double j_determinant(const DerivedParams& d);

// f and g entering h(w) = (f(w1,w2), f(w3,w4), g(w3,w4), -g(w1,w2)).
double f_fun(const DerivedParams& d, double a, double b);
double g_fun(const DerivedParams& d, double a, double b);

// g with the literal published prefactor mu sqrt(m omega) / (4hbar^2+m^2w^2th^2)^{1/4}.
// Only used to report how far it is from the change of variables j^{-1}.
double g_fun_as_printed(const DerivedParams& d, double a, double b);

// h-matrix assembled from g_fun_as_printed, for the diagnostic above.
Mat4 h_matrix_as_printed(const DerivedParams& d);

struct LimitMaps {
  Mat4 j_theta0;  // lim theta->0 at fixed hbar
  Mat4 j_hbar0;   // lim hbar->0 at fixed theta (rank 2)
};

LimitMaps limit_maps(const ParamSet& p);

// theta->0 and hbar->0 forms of f and g.
double f_theta0(const ParamSet& p, double a, double b);
double g_theta0(const ParamSet& p, double a, double b);
double f_hbar0(const ParamSet& p, double a, double b);
double g_hbar0(const ParamSet& p, double a, double b);

// |<z_r|z_r2>|^2 = exp(-|j (r - r2)|^2)
double overlap_kernel(const PhaseMap& pm, const PhasePoint& r, const PhasePoint& r2);

}  // namespace ncphase
