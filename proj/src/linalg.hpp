#pragma once

#include <Eigen/Dense>

namespace ncphase {

using Mat4 = Eigen::Matrix4d;
using Vec4 = Eigen::Vector4d;
using Mat2 = Eigen::Matrix2d;
using Vec2 = Eigen::Vector2d;

// Phase point r = (x1, x2, y1, y2): position-like coordinates first.
struct PhasePoint {
  double x1 = 0.0;
  double x2 = 0.0;
  double y1 = 0.0;
  double y2 = 0.0;

  Vec4 vec() const { return {x1, x2, y1, y2}; }
  static PhasePoint from(const Vec4& v) { return {v(0), v(1), v(2), v(3)}; }
};

inline double max_abs_entry(const Mat4& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace ncphase
