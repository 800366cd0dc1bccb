#pragma once

#include <cmath>
#include <compare>

namespace skewlab {

/// Wrap a real number into the fundamental domain [0,1) of T = R/Z.
inline double wrap(double v) {
  double w = v - std::floor(v);
  // floor can leave exactly 1.0 for tiny negative inputs
  if (w >= 1.0) w -= 1.0;
  if (w < 0.0) w += 1.0;
  return w;
}

/// Point of the circle T = R/Z, stored as its representative in [0,1).
class CirclePoint {
 public:
  CirclePoint() = default;
  explicit CirclePoint(double v) : v_(wrap(v)) {}

  double value() const { return v_; }

  CirclePoint operator+(double d) const { return CirclePoint(v_ + d); }
  CirclePoint operator-(double d) const { return CirclePoint(v_ - d); }
  auto operator<=>(const CirclePoint&) const = default;

 private:
  double v_ = 0.0;
};

/// Geodesic distance on T, in [0, 1/2].
inline double circle_dist(double a, double b) {
  double d = std::fabs(wrap(a) - wrap(b));
  return d <= 0.5 ? d : 1.0 - d;
}

inline double circle_dist(CirclePoint a, CirclePoint b) {
  return circle_dist(a.value(), b.value());
}

/// Diameter of the 1-D circle with the geodesic metric.
inline constexpr double kCircleDiameter = 0.5;

}  // namespace skewlab
