#include "heatmap.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "error.hpp"

namespace ncphase {

namespace {

struct Rgb {
  double r, g, b;
};

constexpr std::array<Rgb, 3> kStops = {{{49, 54, 149}, {255, 255, 191}, {165, 0, 38}}};

std::string colour(double s) {
  s = std::clamp(std::isfinite(s) ? s : 0.0, 0.0, 1.0);
  const double pos = s * (kStops.size() - 1);
  const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(pos), kStops.size() - 2);
  const double f = pos - static_cast<double>(i);
  const Rgb& a = kStops[i];
  const Rgb& b = kStops[i + 1];
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(a.r + f * (b.r - a.r))),
                static_cast<int>(std::lround(a.g + f * (b.g - a.g))),
                static_cast<int>(std::lround(a.b + f * (b.b - a.b))));
  return buf;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Cell edges: midpoints between neighbouring coordinates.
std::vector<double> edges(const std::vector<double>& c) {
  std::vector<double> e(c.size() + 1);
  if (c.size() == 1) {
    e[0] = c[0] - 0.5;
    e[1] = c[0] + 0.5;
    return e;
  }
  for (std::size_t i = 1; i < c.size(); ++i) e[i] = 0.5 * (c[i - 1] + c[i]);
  e.front() = c.front() - (e[1] - c.front());
  e.back() = c.back() + (c.back() - e[c.size() - 1]);
  return e;
}

}  // namespace

std::string render_heatmap_svg(const Grid2D& g, const std::string& title) {
  if (g.xs.empty() || g.ys.empty() || g.values.size() != g.xs.size() * g.ys.size()) {
    throw DimensionError("heatmap needs a complete rectangular grid");
  }
  double lo = INFINITY, hi = -INFINITY;
  for (double v : g.values) {
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!std::isfinite(lo)) lo = hi = 0.0;
  const double range = hi > lo ? hi - lo : 1.0;

  const double left = 70, top = 40, plot_w = 420, plot_h = 420, bar_w = 18;
  const double width = left + plot_w + 90, height = top + plot_h + 60;
  const auto ex = edges(g.xs), ey = edges(g.ys);
  auto px = [&](double x) { return left + (x - ex.front()) / (ex.back() - ex.front()) * plot_w; };
  auto py = [&](double y) { return top + plot_h - (y - ey.front()) / (ey.back() - ey.front()) * plot_h; };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << left + plot_w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
    << escape(title) << "</text>\n";
  for (std::size_t iy = 0; iy < g.ys.size(); ++iy) {
    for (std::size_t ix = 0; ix < g.xs.size(); ++ix) {
      const double v = g.values[iy * g.xs.size() + ix];
      const double x0 = px(ex[ix]), x1 = px(ex[ix + 1]);
      const double y0 = py(ey[iy + 1]), y1 = py(ey[iy]);
      s << "<rect x=\"" << fmt(x0) << "\" y=\"" << fmt(y0) << "\" width=\"" << fmt(x1 - x0 + 0.3)
        << "\" height=\"" << fmt(y1 - y0 + 0.3) << "\" fill=\"" << colour((v - lo) / range) << "\"/>\n";
    }
  }
  s << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\"" << plot_h
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  // axis ticks at the ends and the middle
  for (double f : {0.0, 0.5, 1.0}) {
    const double xv = g.xs.front() + f * (g.xs.back() - g.xs.front());
    const double yv = g.ys.front() + f * (g.ys.back() - g.ys.front());
    s << "<text x=\"" << fmt(px(xv)) << "\" y=\"" << top + plot_h + 16 << "\" text-anchor=\"middle\">"
      << fmt(xv) << "</text>\n";
    s << "<text x=\"" << left - 6 << "\" y=\"" << fmt(py(yv) + 4) << "\" text-anchor=\"end\">" << fmt(yv)
      << "</text>\n";
  }
  s << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << top + plot_h + 40
    << "\" text-anchor=\"middle\">" << escape(g.x_name) << "</text>\n";
  s << "<text x=\"18\" y=\"" << top + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
    << top + plot_h / 2 << ")\">" << escape(g.y_name) << "</text>\n";
  // colour bar
  const double bx = left + plot_w + 20;
  const int steps = 64;
  for (int k = 0; k < steps; ++k) {
    const double f = (k + 0.5) / steps;
    s << "<rect x=\"" << bx << "\" y=\"" << fmt(top + plot_h * (1.0 - (k + 1.0) / steps)) << "\" width=\""
      << bar_w << "\" height=\"" << fmt(plot_h / steps + 0.3) << "\" fill=\"" << colour(f) << "\"/>\n";
  }
  s << "<text x=\"" << bx + bar_w + 4 << "\" y=\"" << top + 10 << "\">" << fmt(hi) << "</text>\n";
  s << "<text x=\"" << bx + bar_w + 4 << "\" y=\"" << top + plot_h << "\">" << fmt(lo) << "</text>\n";
  s << "<text x=\"" << bx << "\" y=\"" << top - 8 << "\">" << escape(g.value_name) << "</text>\n";
  s << "</svg>\n";
  return s.str();
}

}  // namespace ncphase
