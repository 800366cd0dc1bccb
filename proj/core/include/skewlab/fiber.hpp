#pragma once

#include <functional>
#include <string>

#include "skewlab/circle.hpp"

namespace skewlab {

/// Parametrized family f_omega of circle maps driving the vertical fiber.
class FiberFamily {
 public:
  enum class Kind { Additive, NsForced, Custom };

  /// f(omega, x) = T(x) + h(omega).
  static FiberFamily additive(std::function<double(double)> T,
                              std::function<double(double)> h,
                              double lipschitz, std::string label = "additive");
  static FiberFamily additive_identity();

  /// f_omega(x) = 2*omega for omega < split, phi(x) + a*omega otherwise,
  /// with phi(x) = x - c*sin(2*pi*x) (attracting fixed point S = 0,
  /// repelling fixed point N = 1/2 for 0 < c < 1/(2*pi)).
  static FiberFamily ns_forced(double c, double a, double split);

  static FiberFamily custom(std::function<double(double, double)> f,
                            double lipschitz, std::string label = "custom");

  CirclePoint eval(CirclePoint omega, CirclePoint x) const {
    return CirclePoint(f_(omega.value(), x.value()));
  }
  double eval(double omega, double x) const { return wrap(f_(omega, x)); }

  double lipschitz() const { return lipschitz_; }
  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  /// True when f_omega is constant in x (the reset branch of the
  /// ns_forced family).
  bool constant_in_x(double omega) const {
    return kind_ == Kind::NsForced && wrap(omega) < split_;
  }
  double split() const { return split_; }

 private:
  FiberFamily() = default;
  Kind kind_ = Kind::Custom;
  std::string name_;
  std::function<double(double, double)> f_;
  double lipschitz_ = 0.0;
  double split_ = 0.0;
};

}  // namespace skewlab
