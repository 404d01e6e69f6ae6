#include "smoothing.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "error.hpp"
#include "parallel.hpp"

namespace ncphase {

namespace {

void check_budget(const QuadratureRule& rule, const SmoothingBudget& budget) {
  validate(rule);
  if (rule.kind == QuadratureRule::Kind::GaussHermiteTensor) {
    if (rule.order_per_axis > budget.max_tensor_order) {
      std::ostringstream os;
      os << "tensor order " << rule.order_per_axis << " exceeds cap " << budget.max_tensor_order
         << " (order^4 evaluations per point)";
      throw BudgetError(os.str());
    }
  } else if (rule.samples > budget.max_samples) {
    std::ostringstream os;
    os << "Monte Carlo samples " << rule.samples << " exceed cap " << budget.max_samples;
    throw BudgetError(os.str());
  }
}

SmoothedValue mean_and_error(double sum, double sum_sq, std::uint64_t n) {
  const double nn = static_cast<double>(n);
  const double mean = sum / nn;
  const double var = std::max(0.0, sum_sq / nn - mean * mean) * nn / (nn - 1.0);
  return {mean, std::sqrt(var / nn)};
}

// Normalising by the discrete weight sum keeps constants fixed to rounding.
double weight_sum(const GaussHermiteRule& gh) {
  double s = 0.0;
  for (double w : gh.weights) s += w;
  return s;
}

}  // namespace

SmoothedFunction::SmoothedFunction(TestFunction f, const DerivedParams& d, const PhaseMap& pm,
                                   QuadratureRule rule, std::optional<Mat4> a_t, Form form,
                                   SmoothingBudget budget)
    : f_(std::move(f)), d_(d), pm_(pm), rule_(rule), a_t_(std::move(a_t)), form_(form) {
  check_budget(rule_, budget);
  if (a_t_) {
    const double det = a_t_->determinant();
    if (std::abs(det - 1.0) > 1e-10) throw DomainError("evolution matrix must have det 1");
  }
  if (form_ == Form::Kernel && rule_.kind != QuadratureRule::Kind::MonteCarlo) {
    throw DomainError("kernel form is only available with Monte Carlo quadrature");
  }
  if (rule_.kind == QuadratureRule::Kind::GaussHermiteTensor) {
    const auto& gh = gauss_hermite(rule_.order_per_axis);
    const Mat4& h = pm_.h();
    const std::size_t n = gh.nodes.size();
    pair_dx_.resize(2 * n * n);
    pair_dy_.resize(2 * n * n);
    pair_w_.resize(n * n);
    double wsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        const double a = gh.nodes[i], b = gh.nodes[k];
        const std::size_t idx = i * n + k;
        // (w1, w2) -> x1 and y2
        pair_dx_[idx] = h(0, 0) * a + h(0, 1) * b;
        pair_dy_[idx] = h(3, 0) * a + h(3, 1) * b;
        // (w3, w4) -> x2 and y1
        pair_dx_[n * n + idx] = h(1, 2) * a + h(1, 3) * b;
        pair_dy_[n * n + idx] = h(2, 2) * a + h(2, 3) * b;
        pair_w_[idx] = gh.weights[i] * gh.weights[k];
        wsum += pair_w_[idx];
      }
    }
    weight_total_ = wsum * wsum;
  }
}

double SmoothedFunction::eval_moved(const Vec4& v) const {
  if (a_t_) return f_(PhasePoint::from(*a_t_ * v));
  return f_(PhasePoint::from(v));
}

SmoothedValue SmoothedFunction::tensor_at(const PhasePoint& r) const {
  const std::size_t nn = pair_w_.size();
  const double* dx12 = pair_dx_.data();
  const double* dy12 = pair_dy_.data();
  const double* dx34 = pair_dx_.data() + nn;
  const double* dy34 = pair_dy_.data() + nn;
  double total = 0.0;
  for (std::size_t p = 0; p < nn; ++p) {
    const double x1 = r.x1 + dx12[p];
    const double y2 = r.y2 + dy12[p];
    double inner = 0.0;
    for (std::size_t q = 0; q < nn; ++q) {
      inner += pair_w_[q] * eval_moved(Vec4(x1, r.x2 + dx34[q], r.y1 + dy34[q], y2));
    }
    total += pair_w_[p] * inner;
  }
  return {total / weight_total_, 0.0};
}

SmoothedValue SmoothedFunction::mc_at(const PhasePoint& r, std::uint64_t stream) const {
  std::mt19937_64 gen(split_seed(rule_.seed, stream));
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  const Vec4 base = r.vec();
  double sum = 0.0, sum_sq = 0.0;
  for (std::uint64_t s = 0; s < rule_.samples; ++s) {
    const Vec4 w(normal(gen), normal(gen), normal(gen), normal(gen));
    const double v = eval_moved(base + pm_.h() * w);
    sum += v;
    sum_sq += v * v;
  }
  return mean_and_error(sum, sum_sq, rule_.samples);
}

SmoothedValue SmoothedFunction::kernel_at(const PhasePoint& r, std::uint64_t stream) const {
  // Proposal r' = r + j^{-1} u with u ~ e^{-|u|^2}/pi^2, whose density is
  // |det j| e^{-|j(r'-r)|^2}/pi^2. The importance weight of the integrand
  // (J/pi^2) F(r') e^{-|j(r-r')|^2} is then J/|det j| times F(r').
  const Mat4 j_inv = pm_.j().inverse();
  const double det = std::abs(pm_.j().determinant());
  if (!(det > 0.0)) throw SingularityError("kernel form needs an invertible j");
  std::mt19937_64 gen(split_seed(rule_.seed, stream));
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  const Vec4 base = r.vec();
  double sum = 0.0, sum_sq = 0.0;
  for (std::uint64_t s = 0; s < rule_.samples; ++s) {
    const Vec4 u(normal(gen), normal(gen), normal(gen), normal(gen));
    const Vec4 rp = base + j_inv * u;
    const double kernel = std::exp(-(pm_.j() * (base - rp)).squaredNorm());
    const double proposal = det * std::exp(-u.squaredNorm());
    const double v = pm_.j_det() * kernel / proposal * f_(PhasePoint::from(rp));
    sum += v;
    sum_sq += v * v;
  }
  return mean_and_error(sum, sum_sq, rule_.samples);
}

SmoothedValue SmoothedFunction::at(const PhasePoint& r, std::uint64_t stream) const {
  if (form_ == Form::Kernel) return kernel_at(r, stream);
  if (rule_.kind == QuadratureRule::Kind::GaussHermiteTensor) return tensor_at(r);
  return mc_at(r, stream);
}

std::vector<SmoothedValue> SmoothedFunction::on(std::span<const PhasePoint> points) const {
  std::vector<SmoothedValue> out(points.size());
  parallel_for(points.size(), [&](std::size_t i) { out[i] = at(points[i], i); });
  return out;
}

SmoothedFunction smooth(const TestFunction& f, const DerivedParams& d, const PhaseMap& pm,
                        const QuadratureRule& rule, SmoothingBudget budget) {
  return SmoothedFunction(f, d, pm, rule, std::nullopt, SmoothedFunction::Form::Displacement,
                          budget);
}

SmoothedFunction smooth_kernel_form(const TestFunction& f, const DerivedParams& d,
                                    const PhaseMap& pm, const QuadratureRule& rule,
                                    SmoothingBudget budget) {
  return SmoothedFunction(f, d, pm, rule, std::nullopt, SmoothedFunction::Form::Kernel, budget);
}

SmoothedFunction smooth_evolved(const TestFunction& f, const DerivedParams& d, const PhaseMap& pm,
                                const Mat4& a, const QuadratureRule& rule,
                                SmoothingBudget budget) {
  return SmoothedFunction(f, d, pm, rule, a, SmoothedFunction::Form::Displacement, budget);
}

double closed_form_smooth(const GaussianForm& g, const Mat4& h, const PhasePoint& r,
                          const Mat4* a) {
  // (1/pi^2) int e^{-|w|^2 - (u + H w)^T D (u + H w)} dw with u = A r - c, H = A h
  //   = det(M)^{-1/2} exp(-u^T (D - D H M^{-1} H^T D) u),  M = 1 + H^T D H.
  const Mat4 am = a ? *a : Mat4::Identity();
  const Vec4 u = am * r.vec() - g.center;
  const Mat4 hh = am * h;
  const Mat4 m = Mat4::Identity() + hh.transpose() * g.d * hh;
  const Eigen::LLT<Mat4> llt(m);
  if (llt.info() != Eigen::Success) throw SingularityError("closed-form smoothing: M not SPD");
  const Vec4 dhu = hh.transpose() * (g.d * u);
  const double quad = u.dot(g.d * u) - dhu.dot(llt.solve(dhu));
  const Mat4 l = llt.matrixL();
  double det = 1.0;
  for (int i = 0; i < 4; ++i) det *= l(i, i) * l(i, i);
  return g.amplitude / std::sqrt(det) * std::exp(-quad);
}

std::function<double(double, double)> hbar0_static_reduction(const TestFunction& f,
                                                             const ParamSet& p, int order) {
  if (!f.has_asymptote_y()) throw MissingAsymptoteError(f.label + " declares no F_inf(y1,y2)");
  validate(p);
  if (!(p.theta > 0.0)) throw DomainError("static reduction needs theta > 0");
  const auto& gh = gauss_hermite(order);
  const double spread = 2.0 * p.m_omega() * std::sqrt(p.theta);
  auto asym = f.asymptote_y;
  const double norm = weight_sum(gh) * weight_sum(gh);
  return [&gh, spread, asym, norm](double y1, double y2) {
    double total = 0.0;
    for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
      double inner = 0.0;
      for (std::size_t k = 0; k < gh.nodes.size(); ++k) {
        inner += gh.weights[k] * asym(y1 + spread * gh.nodes[i], y2 + spread * gh.nodes[k]);
      }
      total += gh.weights[i] * inner;
    }
    return total / norm;
  };
}

std::function<double(double)> hbar0_dynamic_reduction(const TestFunction& f, const ParamSet& p,
                                                      double /*t*/, int order) {
  if (!f.has_asymptote_y2()) throw MissingAsymptoteError(f.label + " declares no F_inf(y2)");
  validate(p);
  if (!(p.theta > 0.0)) throw DomainError("dynamic reduction needs theta > 0");
  const auto& gh = gauss_hermite(order);
  const double spread = 2.0 * p.m_omega() * std::sqrt(p.theta);
  auto asym = f.asymptote_y2;
  const double norm = weight_sum(gh);
  return [&gh, spread, asym, norm](double y2) {
    double total = 0.0;
    for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
      total += gh.weights[i] * asym(y2 + spread * gh.nodes[i]);
    }
    return total / norm;
  };
}

}  // namespace ncphase
