#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "linalg.hpp"

namespace ncphase {

// F(r) = amplitude * exp(-(r - c)^T D (r - c)). Constants are D = 0. Any F of
// this form has a closed-form smoothing, which serves as an oracle.
struct GaussianForm {
  Vec4 center = Vec4::Zero();
  Mat4 d = Mat4::Zero();
  double amplitude = 1.0;

  double operator()(const Vec4& r) const {
    const Vec4 u = r - center;
    return amplitude * std::exp(-u.dot(d * u));
  }
};

// An element of the classical algebra: bounded smooth function on R^4 plus
// the asymptotes the limit experiments rely on. Asymptotes are declared by the
// constructor; check_*_decay validates the declaration numerically.
struct TestFunction {
  std::string label;
  std::function<double(const PhasePoint&)> eval;
  // lim_{x1,x2 -> +-inf} F
  std::function<double(double, double)> asymptote_y;
  // lim_{x1,x2,y1 -> +-inf} F
  std::function<double(double)> asymptote_y2;
  std::optional<GaussianForm> gaussian;

  double operator()(const PhasePoint& r) const { return eval(r); }
  bool has_asymptote_y() const { return static_cast<bool>(asymptote_y); }
  bool has_asymptote_y2() const { return static_cast<bool>(asymptote_y2); }
};

TestFunction gaussian_bump(const PhasePoint& center, const std::array<double, 4>& widths);

// F = S(x1) S(x2) G(y) + (1 - S(x1) S(x2)) H(y), S(x) = tanh^2(x / x_scale),
// G(y) = [1/2 + 1/2 exp(-(y1-c1)^2/w1^2)] exp(-(y2-c2)^2/w2^2), H(y) = exp(-|y|^2)/2.
// S saturates to 1 for x -> +inf and x -> -inf alike, so the asymptotes are
// direction independent: F_inf(y1,y2) = G(y1,y2), F_inf(y2) = exp(-(y2-c2)^2/w2^2)/2.
TestFunction sigmoid_times_gaussian(double x_scale, const Vec2& y_center, const Vec2& y_widths);

TestFunction constant(double c);

// Residuals |F - F_inf| at growing |x|, maximised over the probes' y values and
// over all sign patterns of the diverging arguments.
struct DecayCheck {
  std::vector<double> radii;
  std::vector<double> residuals;
  bool non_increasing = false;
  bool strictly_dropped = false;  // first residual > last residual (or all zero)
};

DecayCheck check_asymptote_y_decay(const TestFunction& f, std::span<const PhasePoint> probes,
                                   std::vector<double> radii = {10.0, 100.0, 1000.0});
DecayCheck check_asymptote_y2_decay(const TestFunction& f, std::span<const PhasePoint> probes,
                                    std::vector<double> radii = {10.0, 100.0, 1000.0});

bool finite_on(const TestFunction& f, std::span<const PhasePoint> probes);

}  // namespace ncphase
