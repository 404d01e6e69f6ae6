#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "funcspace.hpp"
#include "linalg.hpp"
#include "params.hpp"
#include "phasemap.hpp"
#include "quadrature.hpp"

namespace ncphase {

// Per-point evaluation caps. Tensor cost is order^4 evaluations.
struct SmoothingBudget {
  int max_tensor_order = 64;
  std::uint64_t max_samples = 100'000'000;
};

struct SmoothedValue {
  double value = 0.0;
  double std_error = 0.0;  // zero for deterministic rules
};

// F -> F_{hbar,theta}: the quantise-then-dequantise map evaluated pointwise.
class SmoothedFunction {
 public:
  enum class Form { Displacement, Kernel };

  SmoothedFunction(TestFunction f, const DerivedParams& d, const PhaseMap& pm, QuadratureRule rule,
                   std::optional<Mat4> a_t, Form form, SmoothingBudget budget = {});

  // `stream` selects the Monte-Carlo substream; ignored by tensor rules.
  SmoothedValue at(const PhasePoint& r, std::uint64_t stream = 0) const;
  double operator()(const PhasePoint& r) const { return at(r).value; }

  // Evaluates all points in parallel; point i uses MC substream i.
  std::vector<SmoothedValue> on(std::span<const PhasePoint> points) const;

  const std::string& source() const { return f_.label; }
  const ParamSet& params() const { return d_.p; }
  const QuadratureRule& rule() const { return rule_; }

 private:
  SmoothedValue tensor_at(const PhasePoint& r) const;
  SmoothedValue mc_at(const PhasePoint& r, std::uint64_t stream) const;
  SmoothedValue kernel_at(const PhasePoint& r, std::uint64_t stream) const;
  double eval_moved(const Vec4& v) const;

  TestFunction f_;
  DerivedParams d_;
  PhaseMap pm_;
  QuadratureRule rule_;
  std::optional<Mat4> a_t_;
  Form form_;
  // Tensor rule: displacement tables for the (w1, w2) and (w3, w4) pairs.
  // Pair (w1, w2) moves (x1, y2); pair (w3, w4) moves (x2, y1).
  std::vector<double> pair_dx_, pair_dy_, pair_w_;
  double weight_total_ = 0.0;
};

// (1/pi^2) int e^{-|w|^2} F(r + h(w)) dw
SmoothedFunction smooth(const TestFunction& f, const DerivedParams& d, const PhaseMap& pm,
                        const QuadratureRule& rule, SmoothingBudget budget = {});

// (J/pi^2) int F(r') exp(-|j (r - r')|^2) dr', sampled from the kernel Gaussian.
SmoothedFunction smooth_kernel_form(const TestFunction& f, const DerivedParams& d,
                                    const PhaseMap& pm, const QuadratureRule& rule,
                                    SmoothingBudget budget = {});

// (1/pi^2) int e^{-|w|^2} F(A (r + h(w))) dw
SmoothedFunction smooth_evolved(const TestFunction& f, const DerivedParams& d, const PhaseMap& pm,
                                const Mat4& a, const QuadratureRule& rule,
                                SmoothingBudget budget = {});

// Exact value of the displacement form for F = amplitude exp(-(r-c)^T D (r-c)),
// optionally composed with A. Works for any linear h, including limit maps.
double closed_form_smooth(const GaussianForm& g, const Mat4& h, const PhasePoint& r,
                          const Mat4* a = nullptr);

// hbar -> 0 at fixed theta of the smoothed function: F_inf(y1, y2) averaged over
// independent Gaussian shifts 2 m omega sqrt(theta) v_i, v_i ~ e^{-v^2}/sqrt(pi).
std::function<double(double, double)> hbar0_static_reduction(const TestFunction& f,
                                                             const ParamSet& p,
                                                             int order = 64);

// hbar -> 0 of the evolved smoothed function: (1/sqrt(pi)) int e^{-v^2}
// F_inf(y2 + 2 m omega sqrt(theta) v) dv. t is accepted and ignored.
std::function<double(double)> hbar0_dynamic_reduction(const TestFunction& f, const ParamSet& p,
                                                      double t, int order = 64);

}  // namespace ncphase
