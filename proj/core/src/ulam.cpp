#include "skewlab/ulam.hpp"

#include <algorithm>
#include <cmath>

#include "skewlab/rng.hpp"

namespace skewlab {

namespace {

constexpr double kFixedPointTol = 1e-10;
constexpr int kMaxPowerIters = 100000;

/// Spread `mass` uniformly over the value interval [u, v] across bins.
void spread_interval(std::vector<double>& col, double u, double v, double mass) {
  const int bins = static_cast<int>(col.size());
  u = std::clamp(u, 0.0, 1.0);
  v = std::clamp(v, 0.0, 1.0);
  if (v < u) std::swap(u, v);
  if (v - u < 1e-15) {
    col[GridMeasure::bin_of(bins, u)] += mass;
    return;
  }
  int first = std::min(bins - 1, static_cast<int>(u * bins));
  int last = std::min(bins - 1, static_cast<int>(v * bins));
  for (int i = first; i <= last; ++i) {
    double lo = std::max(u, double(i) / bins);
    double hi = std::min(v, double(i + 1) / bins);
    if (hi > lo) col[i] += mass * (hi - lo) / (v - u);
  }
}

std::vector<double> power_to_fixed_point(const UlamOperator& P,
                                         std::vector<double> masses,
                                         const char* what) {
  for (int it = 0; it < kMaxPowerIters; ++it) {
    std::vector<double> next = P.apply(masses);
    double residual = tv_distance(next, masses);
    masses = std::move(next);
    if (residual < kFixedPointTol) return masses;
  }
  double residual = tv_distance(P.apply(masses), masses);
  throw ConvergenceError(std::string(what) + ": power iteration did not settle",
                         residual);
}

}  // namespace

UlamOperator::UlamOperator(int bins, std::vector<double> matrix)
    : bins_(bins), m_(std::move(matrix)) {
  if (bins_ < 1 || m_.size() != std::size_t(bins_) * bins_)
    throw RejectedInputError("UlamOperator needs a square bins x bins matrix");
  for (double v : m_)
    if (v < 0.0 || !std::isfinite(v))
      throw RejectedInputError("UlamOperator entries must be finite and >= 0");
}

std::vector<double> UlamOperator::apply(const std::vector<double>& masses) const {
  if (static_cast<int>(masses.size()) != bins_)
    throw RejectedInputError("UlamOperator::apply: size mismatch");
  std::vector<double> out(bins_, 0.0);
  for (int j = 0; j < bins_; ++j) {
    double x = masses[j];
    if (x == 0.0) continue;
    const double* col_base = m_.data() + j;
    for (int i = 0; i < bins_; ++i) out[i] += col_base[std::size_t(i) * bins_] * x;
  }
  return out;
}

GridMeasure UlamOperator::apply(const GridMeasure& mu) const {
  return GridMeasure::from_masses(apply(mu.masses()));
}

double UlamOperator::max_column_sum_error() const {
  double worst = 0.0;
  for (int j = 0; j < bins_; ++j) {
    double s = 0.0;
    for (int i = 0; i < bins_; ++i) s += entry(i, j);
    worst = std::max(worst, std::fabs(s - 1.0));
  }
  return worst;
}

UlamOperator UlamOperator::power(int n) const {
  if (n < 1) throw RejectedInputError("UlamOperator::power needs n >= 1");
  UlamOperator result = *this;
  for (int k = 1; k < n; ++k) {
    std::vector<double> prod(m_.size(), 0.0);
    for (int i = 0; i < bins_; ++i)
      for (int l = 0; l < bins_; ++l) {
        double a = result.entry(i, l);
        if (a == 0.0) continue;
        for (int j = 0; j < bins_; ++j)
          prod[std::size_t(i) * bins_ + j] += a * entry(l, j);
      }
    result.m_ = std::move(prod);
  }
  return result;
}

UlamOperator ulam_matrix_base(const BaseMap& g, int bins) {
  if (bins < 2) throw RejectedInputError("ulam_matrix_base needs bins >= 2");
  std::vector<double> m(std::size_t(bins) * bins, 0.0);
  for (int j = 0; j < bins; ++j) {
    std::vector<double> col(bins, 0.0);
    const double a = double(j) / bins, b = double(j + 1) / bins;
    if (g.is_affine()) {
      // exact pushforward of the uniform mass on bin j
      for (const auto& branch : g.affine_branches())
        for (const auto& p : branch) {
          double lo = std::max(p.lo, a), hi = std::min(p.hi, b);
          if (hi <= lo) continue;
          spread_interval(col, p.slope * lo + p.intercept,
                          p.slope * hi + p.intercept, (hi - lo) / (b - a));
        }
    } else {
      const int k = 256;
      for (int s = 0; s < k; ++s)
        col[GridMeasure::bin_of(bins, g.eval(a + (s + 0.5) * (b - a) / k))] +=
            1.0 / k;
    }
    double sum = 0.0;
    for (double v : col) sum += v;
    for (int i = 0; i < bins; ++i) m[std::size_t(i) * bins + j] = col[i] / sum;
  }
  return UlamOperator(bins, std::move(m));
}

GridMeasure invariant_density_base(const BaseMap& g, int bins) {
  UlamOperator P = ulam_matrix_base(g, bins);
  auto masses = power_to_fixed_point(P, GridMeasure::uniform(bins).masses(),
                                     "invariant_density_base");
  return GridMeasure::from_masses(std::move(masses));
}

namespace {

UlamOperator build_P_on_nodes(const FiberFamily& f, const GridMeasure& rho_g,
                              int fiber_bins,
                              const std::vector<std::pair<double, double>>& nodes) {
  if (fiber_bins < 2) throw RejectedInputError("build_P needs fiber_bins >= 2");
  // normalized quadrature weights, shared by every column
  std::vector<double> w(nodes.size());
  double total = 0.0;
  for (std::size_t q = 0; q < nodes.size(); ++q) {
    w[q] = nodes[q].second *
           rho_g.density()[GridMeasure::bin_of(rho_g.bins(), nodes[q].first)];
    total += w[q];
  }
  if (total <= 0.0)
    throw RejectedInputError("build_P: base density vanishes on the cell");
  for (auto& v : w) v /= total;

  std::vector<double> m(std::size_t(fiber_bins) * fiber_bins, 0.0);
  for (int j = 0; j < fiber_bins; ++j) {
    const double xj = (j + 0.5) / fiber_bins;
    std::vector<double> col(fiber_bins, 0.0);
    for (std::size_t q = 0; q < nodes.size(); ++q)
      col[GridMeasure::bin_of(fiber_bins, f.eval(nodes[q].first, xj))] += w[q];
    double sum = 0.0;
    for (double v : col) sum += v;
    for (int i = 0; i < fiber_bins; ++i)
      m[std::size_t(i) * fiber_bins + j] = col[i] / sum;
  }
  return UlamOperator(fiber_bins, std::move(m));
}

}  // namespace

UlamOperator build_P(const FiberFamily& f, const GridMeasure& rho_g,
                     int fiber_bins, int quad_nodes) {
  if (quad_nodes < fiber_bins)
    throw RejectedInputError("build_P needs quad_nodes >= fiber_bins");
  std::vector<std::pair<double, double>> nodes(quad_nodes);
  for (int q = 0; q < quad_nodes; ++q)
    nodes[q] = {(q + 0.5) / quad_nodes, 1.0 / quad_nodes};
  return build_P_on_nodes(f, rho_g, fiber_bins, nodes);
}

UlamOperator build_P_cell(const FiberFamily& f, const GridMeasure& rho_g,
                          std::pair<double, double> cell, int fiber_bins,
                          int quad_nodes) {
  auto [lo, hi] = cell;
  if (!(hi > lo)) throw RejectedInputError("build_P_cell needs hi > lo");
  if (quad_nodes < 1) throw RejectedInputError("build_P_cell needs quad_nodes >= 1");
  const double h = (hi - lo) / quad_nodes;
  std::vector<std::pair<double, double>> nodes(quad_nodes);
  for (int q = 0; q < quad_nodes; ++q) nodes[q] = {lo + (q + 0.5) * h, h};
  return build_P_on_nodes(f, rho_g, fiber_bins, nodes);
}

GridMeasure stationary_measure(const UlamOperator& P) {
  auto masses = power_to_fixed_point(
      P, GridMeasure::uniform(P.bins()).masses(), "stationary_measure");
  return GridMeasure::from_masses(std::move(masses));
}

ContractionFit contraction_rate(const UlamOperator& P, int n_max, int trials,
                                std::uint64_t seed) {
  if (n_max < 1 || trials < 1)
    throw RejectedInputError("contraction_rate needs n_max, trials >= 1");
  const int bins = P.bins();
  ContractionFit fit;
  std::vector<double> worst(n_max + 1, 0.0);
  for (int t = 0; t < trials; ++t) {
    std::vector<double> mu(bins), nu(bins);
    double tv0 = 0.0;
    for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
      for (int k = 0; k < bins; ++k) {
        mu[k] = uniform01(seed, t, k, 2 * attempt) + 1e-12;
        nu[k] = uniform01(seed, t, k, 2 * attempt + 1) + 1e-12;
      }
      double smu = 0.0, snu = 0.0;
      for (int k = 0; k < bins; ++k) smu += mu[k], snu += nu[k];
      for (int k = 0; k < bins; ++k) mu[k] /= smu, nu[k] /= snu;
      tv0 = tv_distance(mu, nu);
      if (tv0 >= 1e-14) break;  // coincident pair: resample
    }
    if (tv0 < 1e-14) continue;
    for (int n = 1; n <= n_max; ++n) {
      mu = P.apply(mu);
      nu = P.apply(nu);
      worst[n] = std::max(worst[n], tv_distance(mu, nu) / tv0);
    }
  }
  // geometric fit on the log of the worst-case curve
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int n = 1; n <= n_max; ++n) {
    fit.curve.push_back({n, worst[n]});
    double y = std::log(std::max(worst[n], 1e-16));
    sx += n;
    sy += y;
    sxx += double(n) * n;
    sxy += n * y;
  }
  const double denom = n_max * sxx - sx * sx;
  double slope = denom != 0.0 ? (n_max * sxy - sx * sy) / denom : 0.0;
  double intercept = (sy - slope * sx) / n_max;
  fit.lambda_hat = std::exp(slope);
  fit.C_hat = std::exp(intercept);
  fit.contracting = fit.lambda_hat < 1.0 - 1e-12;
  double ss_res = 0.0, ss_tot = 0.0, ybar = sy / n_max;
  for (int n = 1; n <= n_max; ++n) {
    double y = std::log(std::max(worst[n], 1e-16));
    ss_res += (y - (intercept + slope * n)) * (y - (intercept + slope * n));
    ss_tot += (y - ybar) * (y - ybar);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

DoeblinResult doeblin_check(const FiberFamily& f, const GridMeasure& rho_g,
                            int n0, int grid) {
  if (n0 < 1 || grid < 2)
    throw RejectedInputError("doeblin_check needs n0 >= 1, grid >= 2");
  UlamOperator Pn = build_P(f, rho_g, grid, 8 * grid).power(n0);
  // worst-case ratio of the n0-step density to the uniform reference:
  // P^n0(x_j, .) >= epsilon_hat * Leb
  double floor = Pn.entry(0, 0);
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) floor = std::min(floor, Pn.entry(i, j));
  DoeblinResult res;
  res.epsilon_hat = floor * grid;
  res.holds = res.epsilon_hat > 1e-12;
  res.nu = GridMeasure::uniform(grid);
  return res;
}

}  // namespace skewlab
