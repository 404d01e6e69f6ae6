#include "funcspace.hpp"

#include <cmath>
#include <sstream>

#include "error.hpp"

namespace ncphase {

namespace {

double tanh_sq(double x) {
  const double t = std::tanh(x);
  return t * t;
}

DecayCheck finish(DecayCheck c) {
  c.non_increasing = true;
  for (std::size_t i = 1; i < c.residuals.size(); ++i) {
    if (c.residuals[i] > c.residuals[i - 1]) c.non_increasing = false;
  }
  c.strictly_dropped = c.residuals.empty() || c.residuals.back() < c.residuals.front() ||
                       c.residuals.front() == 0.0;
  return c;
}

}  // namespace

TestFunction gaussian_bump(const PhasePoint& center, const std::array<double, 4>& widths) {
  GaussianForm g;
  g.center = center.vec();
  for (int i = 0; i < 4; ++i) {
    if (!(widths[i] > 0.0)) throw DomainError("gaussian_bump widths must be positive");
    g.d(i, i) = 1.0 / (widths[i] * widths[i]);
  }
  TestFunction f;
  std::ostringstream os;
  os << "gaussian_bump";
  f.label = os.str();
  f.eval = [g](const PhasePoint& r) { return g(r.vec()); };
  f.asymptote_y = [](double, double) { return 0.0; };
  f.asymptote_y2 = [](double) { return 0.0; };
  f.gaussian = g;
  return f;
}

TestFunction sigmoid_times_gaussian(double x_scale, const Vec2& y_center, const Vec2& y_widths) {
  if (!(x_scale > 0.0) || !(y_widths(0) > 0.0) || !(y_widths(1) > 0.0)) {
    throw DomainError("sigmoid_times_gaussian scales must be positive");
  }
  const double c1 = y_center(0), c2 = y_center(1);
  const double w1 = y_widths(0), w2 = y_widths(1);
  auto big_g = [=](double y1, double y2) {
    const double a = (y1 - c1) / w1;
    const double b = (y2 - c2) / w2;
    return (0.5 + 0.5 * std::exp(-a * a)) * std::exp(-b * b);
  };
  auto big_h = [](double y1, double y2) { return 0.5 * std::exp(-(y1 * y1 + y2 * y2)); };

  TestFunction f;
  f.label = "sigmoid_times_gaussian";
  f.eval = [=](const PhasePoint& r) {
    const double s = tanh_sq(r.x1 / x_scale) * tanh_sq(r.x2 / x_scale);
    return s * big_g(r.y1, r.y2) + (1.0 - s) * big_h(r.y1, r.y2);
  };
  f.asymptote_y = big_g;
  f.asymptote_y2 = [=](double y2) {
    const double b = (y2 - c2) / w2;
    return 0.5 * std::exp(-b * b);
  };
  return f;
}

TestFunction constant(double c) {
  TestFunction f;
  f.label = "constant";
  f.eval = [c](const PhasePoint&) { return c; };
  f.asymptote_y = [c](double, double) { return c; };
  f.asymptote_y2 = [c](double) { return c; };
  GaussianForm g;
  g.amplitude = c;
  f.gaussian = g;
  return f;
}

DecayCheck check_asymptote_y_decay(const TestFunction& f, std::span<const PhasePoint> probes,
                                   std::vector<double> radii) {
  if (!f.has_asymptote_y()) throw MissingAsymptoteError(f.label + " declares no F_inf(y1,y2)");
  DecayCheck c;
  c.radii = std::move(radii);
  for (double rad : c.radii) {
    double worst = 0.0;
    for (const auto& p : probes) {
      const double target = f.asymptote_y(p.y1, p.y2);
      for (double s1 : {-1.0, 1.0}) {
        for (double s2 : {-1.0, 1.0}) {
          worst = std::max(worst, std::abs(f({s1 * rad, s2 * rad, p.y1, p.y2}) - target));
        }
      }
    }
    c.residuals.push_back(worst);
  }
  return finish(std::move(c));
}

DecayCheck check_asymptote_y2_decay(const TestFunction& f, std::span<const PhasePoint> probes,
                                    std::vector<double> radii) {
  if (!f.has_asymptote_y2()) throw MissingAsymptoteError(f.label + " declares no F_inf(y2)");
  DecayCheck c;
  c.radii = std::move(radii);
  for (double rad : c.radii) {
    double worst = 0.0;
    for (const auto& p : probes) {
      const double target = f.asymptote_y2(p.y2);
      for (int signs = 0; signs < 8; ++signs) {
        const double s1 = (signs & 1) ? 1.0 : -1.0;
        const double s2 = (signs & 2) ? 1.0 : -1.0;
        const double s3 = (signs & 4) ? 1.0 : -1.0;
        worst = std::max(worst, std::abs(f({s1 * rad, s2 * rad, s3 * rad, p.y2}) - target));
      }
    }
    c.residuals.push_back(worst);
  }
  return finish(std::move(c));
}

bool finite_on(const TestFunction& f, std::span<const PhasePoint> probes) {
  for (const auto& p : probes) {
    if (!std::isfinite(f(p))) return false;
  }
  return true;
}

}  // namespace ncphase
