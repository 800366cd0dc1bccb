#include "skewlab/decay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace skewlab {

namespace {

struct ProfileResult {
  double C = 0.0;
  double eps = 0.0;
  double sse = std::numeric_limits<double>::infinity();
};

double sse_at(const DecayCurve& curve, double lambda, double C, double eps) {
  double sse = 0.0;
  for (const auto& [n, y] : curve) {
    const double e = C * std::pow(lambda, n) + eps - y;
    sse += e * e;
  }
  return sse;
}

// best (C, eps) for a fixed rate: least squares on [lambda^n, 1],
// constrained to C >= 0, eps >= 0
ProfileResult profile(const DecayCurve& curve, double lambda) {
  double s_pp = 0, s_p = 0, s_py = 0, s_y = 0;
  const double n_pts = double(curve.size());
  for (const auto& [n, y] : curve) {
    const double p = std::pow(lambda, n);
    s_pp += p * p;
    s_p += p;
    s_py += p * y;
    s_y += y;
  }
  ProfileResult r;
  const double det = s_pp * n_pts - s_p * s_p;
  if (std::fabs(det) > 1e-300) {
    r.C = (s_py * n_pts - s_p * s_y) / det;
    r.eps = (s_pp * s_y - s_p * s_py) / det;
  }
  if (r.C < 0.0 || r.eps < 0.0) {
    // fall back to the best boundary solution
    const double c_only = std::max(0.0, s_pp > 0.0 ? s_py / s_pp : 0.0);
    const double eps_only = std::max(0.0, s_y / n_pts);
    if (sse_at(curve, lambda, c_only, 0.0) <= sse_at(curve, lambda, 0.0, eps_only)) {
      r.C = c_only;
      r.eps = 0.0;
    } else {
      r.C = 0.0;
      r.eps = eps_only;
    }
  }
  r.sse = sse_at(curve, lambda, r.C, r.eps);
  return r;
}

}  // namespace

DecayFit fit_decay(const DecayCurve& curve) {
  if (curve.size() < 4)
    throw RejectedInputError("fit_decay needs at least 4 points");
  for (const auto& [n, y] : curve)
    if (n < 0 || !std::isfinite(y))
      throw RejectedInputError("fit_decay: points need n >= 0 and finite y");

  double lo = curve.front().second, hi = lo;
  for (const auto& [n, y] : curve) {
    lo = std::min(lo, y);
    hi = std::max(hi, y);
  }
  DecayFit fit;
  const double scale = std::max(std::fabs(hi), std::fabs(lo));
  if (hi - lo <= 1e-13 * std::max(1.0, scale)) {
    fit.degenerate = true;
    fit.lambda_hat = 0.5;
    fit.eps_hat = 0.5 * (hi + lo);
    return fit;
  }

  // coarse scan, then golden-section refinement around the best rate
  const double lam_min = 1e-6, lam_max = 1.0 - 1e-6;
  double best_lam = lam_min, best_sse = profile(curve, lam_min).sse;
  const int coarse = 400;
  for (int k = 1; k <= coarse; ++k) {
    const double lam = lam_min + (lam_max - lam_min) * k / coarse;
    const double sse = profile(curve, lam).sse;
    if (sse < best_sse) {
      best_sse = sse;
      best_lam = lam;
    }
  }
  double a = std::max(lam_min, best_lam - (lam_max - lam_min) / coarse);
  double b = std::min(lam_max, best_lam + (lam_max - lam_min) / coarse);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = profile(curve, c).sse, fd = profile(curve, d).sse;
  while (b - a > 1e-13) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = profile(curve, c).sse;
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = profile(curve, d).sse;
    }
  }
  fit.lambda_hat = 0.5 * (a + b);
  const auto best = profile(curve, fit.lambda_hat);
  fit.C_hat = best.C;
  fit.eps_hat = best.eps;
  fit.rmse = std::sqrt(best.sse / curve.size());
  return fit;
}

}  // namespace skewlab
