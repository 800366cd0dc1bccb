#include "skewlab/skew.hpp"

#include <cmath>
#include <stdexcept>

namespace skewlab {

std::vector<State> orbit(const SkewProduct& F, const State& state, int n) {
  if (n < 0) throw RejectedInputError("orbit length must be >= 0");
  std::vector<State> out;
  out.reserve(n + 1);
  out.push_back(state);
  for (int k = 0; k < n; ++k) out.push_back(F.step(out.back()));
  return out;
}

SystemConstants estimate_constants(const SkewProduct& F, int grid_n) {
  if (grid_n < 10) throw RejectedInputError("estimate_constants needs grid_n >= 10");
  SystemConstants c;

  if (F.base.is_affine()) {
    c.sigma_hat = F.base.sigma_min();
    c.D_hat = F.base.distortion();
  } else {
    double smin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < grid_n; ++k) {
      double der = F.base.abs_derivative((k + 0.5) / grid_n);
      if (!std::isfinite(der))
        throw std::runtime_error("non-finite base derivative sample");
      smin = std::min(smin, der);
    }
    c.sigma_hat = smin;
    c.D_hat = F.base.distortion();
  }

  switch (F.fiber.kind()) {
    case FiberFamily::Kind::Additive:
    case FiberFamily::Kind::NsForced:
      c.L_hat = F.fiber.lipschitz();
      break;
    default: {
      // per-variable difference quotients on a grid, skipping pairs that
      // straddle a reset-branch discontinuity
      double L = 0.0;
      const double h = 1.0 / grid_n;
      for (int i = 0; i < grid_n; ++i) {
        for (int j = 0; j + 1 < grid_n; ++j) {
          double w = (i + 0.5) * h, x = (j + 0.5) * h;
          double dx = circle_dist(F.fiber.eval(w, x), F.fiber.eval(w, x + h));
          L = std::max(L, dx / h);
          if (i + 1 < grid_n) {
            double dw = circle_dist(F.fiber.eval(w, x), F.fiber.eval(w + h, x));
            L = std::max(L, dw / h);
          }
        }
      }
      c.L_hat = L;
      break;
    }
  }
  return c;
}

}  // namespace skewlab
