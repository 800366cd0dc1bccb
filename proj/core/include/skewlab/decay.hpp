#pragma once

#include <utility>
#include <vector>

#include "skewlab/base_map.hpp"

namespace skewlab {

/// Sampled decay curve: (n, y_n) pairs, n >= 0.
using DecayCurve = std::vector<std::pair<int, double>>;

struct DecayFit {
  double C_hat = 0.0;
  double lambda_hat = 0.0;
  double eps_hat = 0.0;  // noise floor
  double rmse = 0.0;
  bool degenerate = false;  // flat curve, rate unidentifiable
};

/// Least-squares fit of y_n ~ C * lambda^n + eps. For fixed lambda the
/// model is linear in (C, eps), so the rate is found by a 1-D search on
/// the profiled residual and (C, eps) come out of a 2x2 solve. A flat
/// curve is reported as degenerate with C = 0, lambda = 1/2.
DecayFit fit_decay(const DecayCurve& curve);

}  // namespace skewlab
