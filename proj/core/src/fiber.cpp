#include "skewlab/fiber.hpp"

#include <cmath>
#include <utility>

namespace skewlab {

FiberFamily FiberFamily::additive(std::function<double(double)> T,
                                  std::function<double(double)> h,
                                  double lipschitz, std::string label) {
  FiberFamily f;
  f.kind_ = Kind::Additive;
  f.name_ = std::move(label);
  f.f_ = [T = std::move(T), h = std::move(h)](double w, double x) {
    return T(x) + h(w);
  };
  f.lipschitz_ = lipschitz;
  return f;
}

FiberFamily FiberFamily::additive_identity() {
  return additive([](double x) { return x; }, [](double w) { return w; }, 1.0,
                  "additive(id,id)");
}

FiberFamily FiberFamily::ns_forced(double c, double a, double split) {
  FiberFamily f;
  f.kind_ = Kind::NsForced;
  f.name_ = "ns_forced(c=" + std::to_string(c) + ",a=" + std::to_string(a) + ")";
  f.split_ = split;
  f.f_ = [c, a, split](double w, double x) {
    w = wrap(w);
    if (w < split) return 2.0 * w;
    return x - c * std::sin(2.0 * M_PI * x) + a * w;
  };
  // per-variable quotients: 2 in omega on the reset branch,
  // 1 + 2*pi*c + a on the drift branch
  f.lipschitz_ = std::max(2.0, 1.0 + 2.0 * M_PI * c + a);
  return f;
}

FiberFamily FiberFamily::custom(std::function<double(double, double)> f,
                                double lipschitz, std::string label) {
  FiberFamily out;
  out.kind_ = Kind::Custom;
  out.name_ = std::move(label);
  out.f_ = std::move(f);
  out.lipschitz_ = lipschitz;
  return out;
}

}  // namespace skewlab
