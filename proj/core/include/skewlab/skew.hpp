#pragma once

#include <utility>
#include <vector>

#include "skewlab/base_map.hpp"
#include "skewlab/fiber.hpp"

namespace skewlab {

using State = std::pair<CirclePoint, CirclePoint>;  // (omega, x)

/// Skew product F(omega, x) = (g(omega), f(omega, x)).
struct SkewProduct {
  BaseMap base;
  FiberFamily fiber;

  State step(const State& s) const {
    return {base.eval(s.first), fiber.eval(s.first, s.second)};
  }
};

/// s[0] = state, s[k+1] = F(s[k]); length n+1.
std::vector<State> orbit(const SkewProduct& F, const State& state, int n);

struct SystemConstants {
  double sigma_hat = 0.0;  // minimal base expansion
  double D_hat = 0.0;      // distortion of log|Dg| along inverse branches
  double L_hat = 0.0;      // fiber Lipschitz constant
};

/// Closed-form constants for catalog kinds, sampled estimates otherwise.
SystemConstants estimate_constants(const SkewProduct& F, int grid_n);

}  // namespace skewlab
