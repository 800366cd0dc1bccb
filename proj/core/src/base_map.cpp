#include "skewlab/base_map.hpp"

#include <algorithm>
#include <cmath>

namespace skewlab {
namespace {

constexpr double kBoundaryEps = 1e-13;

double tent_unit(double x) { return x < 0.5 ? 2.0 * x : 2.0 - 2.0 * x; }

double logistic_unit(double x) { return 4.0 * x * (1.0 - x); }

// h in the tent/logistic conjugacy: logistic = h o tent o h^-1.
double sin_sq_half(double x) {
  double s = std::sin(M_PI * x / 2.0);
  return s * s;
}

double sin_sq_half_inv(double y) {
  y = std::clamp(y, 0.0, 1.0);
  return 2.0 / M_PI * std::asin(std::sqrt(y));
}

}  // namespace

void BaseMap::finalize_affine() {
  d_ = static_cast<int>(branches_.size());
  sigma_min_ = std::numeric_limits<double>::infinity();
  double max_log_ratio = 0.0;
  for (const auto& br : branches_) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto& p : br) {
      double s = std::fabs(p.slope);
      sigma_min_ = std::min(sigma_min_, s);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    max_log_ratio = std::max(max_log_ratio, std::log(hi / lo));
  }
  distortion_ = 0.0;  // affine pieces
  // exp(D * diam) must cover the within-branch derivative ratio; diam = 1/2.
  minorization_distortion_ = max_log_ratio / kCircleDiameter;
}

BaseMap BaseMap::linear(int sigma) {
  if (sigma < 2) throw RejectedInputError("linear base map needs sigma >= 2");
  BaseMap m;
  m.kind_ = Kind::Linear;
  m.name_ = "linear(" + std::to_string(sigma) + ")";
  for (int i = 0; i < sigma; ++i) {
    double lo = static_cast<double>(i) / sigma;
    double hi = static_cast<double>(i + 1) / sigma;
    m.branches_.push_back({AffinePiece{lo, hi, double(sigma), -double(i)}});
  }
  m.finalize_affine();
  return m;
}

BaseMap BaseMap::gmk(int M, double kappa) {
  if (M < 1 || kappa <= 0.0 || kappa >= 1.0)
    throw RejectedInputError("gmk base map needs M >= 1 and kappa in (0,1)");
  BaseMap m;
  m.kind_ = Kind::Gmk;
  m.name_ = "gmk(" + std::to_string(M) + "," + std::to_string(kappa) + ")";
  const double kp = 1.0 - kappa;
  const double twoM = 2.0 * M;
  for (int j = 0; j < 2 * M; ++j) {
    std::vector<AffinePiece> br;
    if (j < M) {
      br.push_back({j / twoM, (j + kappa) / twoM, M / kappa, -j / (2.0 * kappa)});
      br.push_back({(j + kappa) / twoM, (j + 1) / twoM, M / kp,
                    -(j + kappa - kp) / (2.0 * kp)});
    } else {
      br.push_back({j / twoM, (j + kp) / twoM, M / kp, -j / (2.0 * kp)});
      br.push_back({(j + kp) / twoM, (j + 1) / twoM, M / kappa,
                    -(j + kp - kappa) / (2.0 * kappa)});
    }
    m.branches_.push_back(std::move(br));
  }
  m.finalize_affine();
  return m;
}

BaseMap BaseMap::tent_power(int n) {
  if (n < 1) throw RejectedInputError("tent_power needs n >= 1");
  BaseMap m;
  m.kind_ = Kind::TentPower;
  m.name_ = "tent_power(" + std::to_string(n) + ")";
  const int d = 1 << n;
  for (int k = 0; k < d; ++k) {
    double lo = static_cast<double>(k) / d;
    double hi = static_cast<double>(k + 1) / d;
    // endpoint values are exact 0/1 dyadic iterates
    double ylo = lo, yhi = hi;
    for (int it = 0; it < n; ++it) {
      ylo = tent_unit(ylo);
      yhi = tent_unit(yhi);
    }
    double slope = (yhi - ylo) * d;  // +-2^n
    m.branches_.push_back({AffinePiece{lo, hi, slope, ylo - slope * lo}});
  }
  m.finalize_affine();
  return m;
}

BaseMap BaseMap::logistic_power(int n) {
  if (n < 1) throw RejectedInputError("logistic_power needs n >= 1");
  BaseMap m;
  m.kind_ = Kind::LogisticPower;
  m.name_ = "logistic_power(" + std::to_string(n) + ")";
  m.power_ = n;
  m.d_ = 1 << n;
  // Derivative vanishes at critical points; report the sampled interior
  // minimum rather than pretending to uniform expansion.
  double smin = std::numeric_limits<double>::infinity();
  double dmax = 0.0;
  for (int k = 1; k < 4096; ++k) {
    double x = k / 4096.0;
    double deriv = 1.0;
    for (int it = 0; it < n; ++it) {
      deriv *= std::fabs(4.0 - 8.0 * x);
      x = logistic_unit(x);
    }
    smin = std::min(smin, deriv);
    dmax = std::max(dmax, deriv);
  }
  m.sigma_min_ = smin;
  m.distortion_ = 2.0 * std::log(std::max(dmax, 1e-300) / std::max(smin, 1e-300));
  m.minorization_distortion_ = m.distortion_;
  return m;
}

BaseMap BaseMap::conjugated(const BaseMap& g, std::function<double(double)> h,
                            std::function<double(double)> h_inv) {
  for (int k = 0; k < 128; ++k) {
    double x = (k + 0.5) / 128.0;
    if (circle_dist(h(h_inv(x)), x) > 1e-10)
      throw RejectedInputError("conjugacy check failed: h o h_inv != id");
  }
  BaseMap m;
  m.kind_ = Kind::Custom;
  m.name_ = "conjugated(" + g.name() + ")";
  m.d_ = g.branch_count();
  m.conj_h_ = std::move(h);
  m.conj_hinv_ = std::move(h_inv);
  m.inner_.push_back(g);
  // sampled constants; kinks of g make these estimates, not bounds
  double smin = std::numeric_limits<double>::infinity();
  double dmax = 0.0;
  for (int k = 0; k < 2048; ++k) {
    double x = (k + 0.5) / 2048.0;
    double der = m.abs_derivative(x);
    if (std::isfinite(der) && der > 0) {
      smin = std::min(smin, der);
      dmax = std::max(dmax, der);
    }
  }
  m.sigma_min_ = smin;
  m.distortion_ = 2.0 * std::log(std::max(dmax, 1e-300) / std::max(smin, 1e-300));
  m.minorization_distortion_ = m.distortion_;
  return m;
}

CirclePoint BaseMap::eval(CirclePoint omega) const {
  const double w = omega.value();
  switch (kind_) {
    case Kind::LogisticPower: {
      double x = w;
      for (int it = 0; it < power_; ++it) x = logistic_unit(x);
      return CirclePoint(x);
    }
    case Kind::Custom:
      return CirclePoint(conj_hinv_(inner_[0].eval(wrap(conj_h_(w)))));
    default: {
      for (const auto& br : branches_) {
        for (const auto& p : br) {
          if (w >= p.lo - kBoundaryEps && w < p.hi - kBoundaryEps)
            return CirclePoint(p.slope * w + p.intercept);
        }
      }
      // w in the final sliver before 1.0
      const auto& p = branches_.back().back();
      return CirclePoint(p.slope * w + p.intercept);
    }
  }
}

InverseBranches BaseMap::inverse_branches(CirclePoint omega) const {
  const double w = omega.value();
  InverseBranches out;
  switch (kind_) {
    case Kind::LogisticPower: {
      // preimages via the tent conjugacy h(x) = sin^2(pi x / 2)
      BaseMap tent = BaseMap::tent_power(power_);
      auto tpre = tent.inverse_branches(CirclePoint(sin_sq_half_inv(w)));
      out.boundary_hit = tpre.boundary_hit;
      for (const auto& pre : tpre.preimages) {
        double t = sin_sq_half(pre.point.value());
        double x = t, deriv = 1.0;
        for (int it = 0; it < power_; ++it) {
          deriv *= std::fabs(4.0 - 8.0 * x);
          x = logistic_unit(x);
        }
        out.preimages.push_back({CirclePoint(t), deriv});
      }
      break;
    }
    case Kind::Custom: {
      auto gpre = inner_[0].inverse_branches(CirclePoint(conj_h_(w)));
      out.boundary_hit = gpre.boundary_hit;
      for (const auto& pre : gpre.preimages) {
        double t = wrap(conj_hinv_(pre.point.value()));
        // sampled derivative of the composed map
        const double eps = 1e-6;
        double y1 = eval(t - eps), y2 = eval(t + eps);
        double dy = circle_dist(y1, y2);
        out.preimages.push_back({CirclePoint(t), dy / (2.0 * eps)});
      }
      break;
    }
    default: {
      for (const auto& br : branches_) {
        // exactly one piece of a monotone branch covers w
        bool found = false;
        for (const auto& p : br) {
          double ylo = p.slope * p.lo + p.intercept;
          double yhi = p.slope * p.hi + p.intercept;
          double a = std::min(ylo, yhi), b = std::max(ylo, yhi);
          if (w < a - kBoundaryEps || w > b + kBoundaryEps) continue;
          double t = (w - p.intercept) / p.slope;
          t = std::clamp(t, p.lo, p.hi);
          if (std::fabs(t - p.lo) < kBoundaryEps ||
              std::fabs(t - p.hi) < kBoundaryEps)
            out.boundary_hit = true;
          // left-closed convention: t == hi belongs to the next branch
          if (t >= p.hi - kBoundaryEps && &p == &br.back()) t = p.hi;
          out.preimages.push_back({CirclePoint(t), std::fabs(p.slope)});
          found = true;
          break;
        }
        (void)found;
      }
      break;
    }
  }
  return out;
}

std::pair<double, double> BaseMap::branch_domain(int i) const {
  switch (kind_) {
    case Kind::LogisticPower: {
      const int d = 1 << power_;
      return {sin_sq_half(double(i) / d), sin_sq_half(double(i + 1) / d)};
    }
    case Kind::Custom: {
      // induced from the inner map through h_inv; valid for monotone h
      auto [lo, hi] = inner_[0].branch_domain(i);
      return {wrap(conj_hinv_(lo)), i + 1 == d_ ? 1.0 : wrap(conj_hinv_(hi))};
    }
    default:
      return {branches_[i].front().lo, branches_[i].back().hi};
  }
}

double BaseMap::abs_derivative(double omega) const {
  const double w = wrap(omega);
  switch (kind_) {
    case Kind::LogisticPower: {
      double x = w, deriv = 1.0;
      for (int it = 0; it < power_; ++it) {
        deriv *= std::fabs(4.0 - 8.0 * x);
        x = logistic_unit(x);
      }
      return deriv;
    }
    case Kind::Custom: {
      const double eps = 1e-6;
      double y1 = eval(w - eps), y2 = eval(w + eps);
      return circle_dist(y1, y2) / (2.0 * eps);
    }
    default: {
      for (const auto& br : branches_)
        for (const auto& p : br)
          if (w >= p.lo - kBoundaryEps && w < p.hi - kBoundaryEps)
            return std::fabs(p.slope);
      return std::fabs(branches_.back().back().slope);
    }
  }
}

}  // namespace skewlab
