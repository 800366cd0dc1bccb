#include "skewlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "skewlab/rng.hpp"
#include "skewlab/ulam.hpp"

namespace skewlab {

namespace {

constexpr int kDensityBins = 1024;  // base invariant density resolution

/// Run fn(k) for k in [0, n); particles own disjoint output slots, so the
/// schedule cannot affect results.
void parallel_particles(int n, int threads, const std::function<void(int)>& fn) {
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int k = 0; k < n; ++k) fn(k);
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    const int lo = static_cast<int>(std::int64_t(n) * t / threads);
    const int hi = static_cast<int>(std::int64_t(n) * (t + 1) / threads);
    pool.emplace_back([&fn, lo, hi] {
      for (int k = lo; k < hi; ++k) fn(k);
    });
  }
  for (auto& th : pool) th.join();
}

GridMeasure bin_measure(const EmpiricalMeasure& mu, int bins) {
  std::vector<double> masses(bins, 0.0);
  for (const auto& a : mu.atoms())
    masses[GridMeasure::bin_of(bins, a.position)] += a.weight;
  return GridMeasure::from_masses(std::move(masses));
}

EmpiricalMeasure half_measure(const EmpiricalMeasure& mu, int parity) {
  std::vector<Atom> atoms;
  const auto& all = mu.atoms();
  for (std::size_t k = parity; k < all.size(); k += 2) atoms.push_back(all[k]);
  if (atoms.empty()) atoms.push_back(all.empty() ? Atom{0.0, 1.0} : all[0]);
  return EmpiricalMeasure(std::move(atoms), true);
}

double integral_over_circle(const std::function<double(double)>& f) {
  const int n = 1 << 16;
  double s = 0.0;
  for (int k = 0; k < n; ++k) s += f((k + 0.5) / n);
  return s / n;
}

double integral_against(const GridMeasure& mu,
                        const std::function<double(double)>& f) {
  double s = 0.0;
  for (int i = 0; i < mu.bins(); ++i) s += mu.mass(i) * f(mu.bin_center(i));
  return s;
}

double inverse_cdf(const std::vector<double>& cum, double u) {
  const int bins = static_cast<int>(cum.size());
  int b = static_cast<int>(std::upper_bound(cum.begin(), cum.end(), u) -
                           cum.begin());
  if (b >= bins) b = bins - 1;
  const double before = b > 0 ? cum[b - 1] : 0.0;
  const double mass = cum[b] - before;
  const double frac = mass > 0.0 ? (u - before) / mass : 0.5;
  return (b + std::clamp(frac, 0.0, 1.0)) / bins;
}

}  // namespace

Observable observable(const std::string& name) {
  const double two_pi = 2.0 * std::numbers::pi;
  if (name == "cos2pi")
    return {name, [two_pi](double x) { return std::cos(two_pi * x); }, two_pi,
            2.0 / std::numbers::pi, false, true};
  if (name == "sin2pi")
    return {name, [two_pi](double x) { return std::sin(two_pi * x); }, two_pi,
            2.0 / std::numbers::pi, false, true};
  if (name == "dist0")
    return {name, [](double x) { return circle_dist(x, 0.0); }, 1.0, 0.25,
            false, true};
  if (name == "sign")
    return {name, [](double x) { return wrap(x) < 0.5 ? 1.0 : -1.0; }, 0.0, 1.0,
            false, false};
  if (name == "one")
    return {name, [](double) { return 1.0; }, 0.0, 1.0, true, true};
  throw RejectedInputError("unknown observable '" + name + "'");
}

void ExperimentConfig::validate() const {
  if (samples < 1) throw RejectedInputError("samples must be >= 1");
  if (steps < 0) throw RejectedInputError("steps must be >= 0");
  if (fiber_bins < 2) throw RejectedInputError("fiber_bins must be >= 2");
  if (hist_bins < 2) throw RejectedInputError("hist_bins must be >= 2");
  if (base_bins < 1) throw RejectedInputError("base_bins must be >= 1");
  if (quad_nodes < 1) throw RejectedInputError("quad_nodes must be >= 1");
  if (threads < 1) throw RejectedInputError("threads must be >= 1");
  observable(phi);
  observable(psi);
}

DecayCurve to_decay_curve(const std::vector<CurvePoint>& points) {
  DecayCurve c;
  c.reserve(points.size());
  for (const auto& p : points) c.push_back({p.n, p.value});
  return c;
}

std::vector<WeightedState> uniform_product_cloud(int n, std::uint64_t seed) {
  if (n < 1) throw RejectedInputError("cloud needs n >= 1");
  std::vector<WeightedState> cloud(n);
  for (int k = 0; k < n; ++k)
    cloud[k] = {(k + uniform01(seed, k, 0, 0)) / n, uniform01(seed, k, 0, 1),
                1.0 / n};
  return cloud;
}

std::vector<WeightedState> product_delta_cloud(int n, double x0,
                                               std::uint64_t seed) {
  if (n < 1) throw RejectedInputError("cloud needs n >= 1");
  std::vector<WeightedState> cloud(n);
  for (int k = 0; k < n; ++k)
    cloud[k] = {(k + uniform01(seed, k, 0, 0)) / n, wrap(x0), 1.0 / n};
  return cloud;
}

std::vector<WeightedState> drifting_slice_cloud(int n, double c, double width,
                                                std::uint64_t seed) {
  if (n < 1) throw RejectedInputError("cloud needs n >= 1");
  std::vector<WeightedState> cloud(n);
  for (int k = 0; k < n; ++k) {
    const double omega = (k + uniform01(seed, k, 0, 0)) / n;
    const double jitter = (uniform01(seed, k, 0, 1) - 0.5) * width;
    cloud[k] = {omega, wrap(c * omega + jitter), 1.0 / n};
  }
  return cloud;
}

std::vector<WeightedState> iterate_cloud(const SkewProduct& F,
                                         std::vector<WeightedState> cloud,
                                         int steps, std::uint64_t seed,
                                         int first_step) {
  for (int s = 0; s < steps; ++s)
    for (std::size_t k = 0; k < cloud.size(); ++k) {
      auto& st = cloud[k];
      const double omega = st.omega;
      st.omega = wrap(F.base.eval(omega) +
                      (uniform01(seed, k, first_step + s, 3) - 0.5) * kBaseDither);
      st.x = F.fiber.eval(omega, st.x);
    }
  return cloud;
}

ExperimentCurve correlation_curve(const ExperimentConfig& cfg) {
  cfg.validate();
  const Observable phi = observable(cfg.phi);
  const Observable psi = observable(cfg.psi);
  if (!phi.is_lipschitz)
    throw RejectedInputError("correlation_curve: phi must be Lipschitz");

  ExperimentCurve out;
  out.c_phi_psi = 2.0 * psi.l1_norm * (phi.lipschitz + 1.0);
  if (phi.is_constant && psi.is_constant) {
    // the estimator cancels exactly: E[c1*c2] - c1*c2 = 0
    for (int n = 0; n <= cfg.steps; ++n) out.points.push_back({n, 0.0, 0.0});
    out.fit = fit_decay(to_decay_curve(out.points));
    return out;
  }

  GridMeasure eta_bar;
  try {
    eta_bar = fixed_point_blockL(build_blockL(cfg.base, cfg.fiber,
                                              cfg.fiber_bins, cfg.quad_nodes))
                  .averaged;
  } catch (const ConvergenceError&) {
    const GridMeasure rho = invariant_density_base(cfg.base, kDensityBins);
    eta_bar = stationary_measure(
        build_P(cfg.fiber, rho, cfg.fiber_bins, 4 * cfg.fiber_bins));
    out.eta_bar_fallback = true;
  }
  const double target =
      integral_against(eta_bar, phi.f) * integral_over_circle(psi.f);

  const int n_pts = cfg.steps + 1;
  const int shards = std::max(1, std::min(cfg.threads, cfg.samples));
  std::vector<std::vector<double>> sums(shards, std::vector<double>(n_pts, 0.0));
  std::vector<std::vector<double>> sqs(shards, std::vector<double>(n_pts, 0.0));
  SkewProduct F{cfg.base, cfg.fiber};
  auto shard_work = [&](int t) {
    const int lo = static_cast<int>(std::int64_t(cfg.samples) * t / shards);
    const int hi = static_cast<int>(std::int64_t(cfg.samples) * (t + 1) / shards);
    for (int k = lo; k < hi; ++k) {
      double omega = uniform01(cfg.seed, k, 0, 0);
      double x = uniform01(cfg.seed, k, 0, 1);
      const double psi0 = psi.f(x);
      for (int n = 0; n < n_pts; ++n) {
        const double v = phi.f(x) * psi0;
        sums[t][n] += v;
        sqs[t][n] += v * v;
        const double w = omega;
        omega = wrap(F.base.eval(w) +
                     (uniform01(cfg.seed, k, n, 3) - 0.5) * kBaseDither);
        x = F.fiber.eval(w, x);
      }
    }
  };
  parallel_particles(shards, shards, shard_work);

  for (int n = 0; n < n_pts; ++n) {
    double s = 0.0, sq = 0.0;
    for (int t = 0; t < shards; ++t) {
      s += sums[t][n];
      sq += sqs[t][n];
    }
    const double mean = s / cfg.samples;
    const double var = std::max(0.0, sq / cfg.samples - mean * mean);
    out.points.push_back(
        {n, std::fabs(mean - target), std::sqrt(var / cfg.samples)});
  }
  out.fit = fit_decay(to_decay_curve(out.points));
  return out;
}

ExperimentCurve memory_loss_curve(const ExperimentConfig& cfg,
                                  const std::vector<WeightedState>& mu1,
                                  const std::vector<WeightedState>& mu2) {
  cfg.validate();
  SkewProduct F{cfg.base, cfg.fiber};
  std::vector<WeightedState> c1 = mu1, c2 = mu2;
  ExperimentCurve out;
  for (int n = 0; n <= cfg.steps; ++n) {
    const auto m1 = vertical_marginal(c1);
    const auto m2 = vertical_marginal(c2);
    const double y = wasserstein1_circle(m1, m2);
    const double ya =
        wasserstein1_circle(half_measure(m1, 0), half_measure(m2, 0));
    const double yb =
        wasserstein1_circle(half_measure(m1, 1), half_measure(m2, 1));
    out.points.push_back({n, y, 0.5 * std::fabs(ya - yb)});
    if (n < cfg.steps) {
      c1 = iterate_cloud(F, std::move(c1), 1, cfg.seed, n);
      c2 = iterate_cloud(F, std::move(c2), 1, cfg.seed, n);
    }
  }
  out.fit = fit_decay(to_decay_curve(out.points));
  return out;
}

std::vector<double> delta_vs_L_gap(const ExperimentConfig& cfg, int n) {
  cfg.validate();
  if (n < 0) throw RejectedInputError("delta_vs_L_gap needs n >= 0");
  std::vector<BaseMap> bases = cfg.sweep.empty()
                                   ? std::vector<BaseMap>{cfg.base}
                                   : cfg.sweep;
  std::vector<double> gaps;
  for (const auto& base : bases) {
    const int d = base.branch_count();
    std::vector<std::pair<double, double>> cells;
    for (int i = 0; i < d; ++i) cells.push_back(base.branch_domain(i));
    auto cloud = uniform_product_cloud(cfg.samples, cfg.seed);
    auto require_full = [&](const DisintegrationFamily& fam) {
      for (int i = 0; i < fam.base_bins; ++i)
        if (fam.empty[i])
          throw RejectedInputError(
              "delta_vs_L_gap: empty base cell " + std::to_string(i) +
              " for " + base.name() +
              "; increase samples or reduce the cell count");
    };
    const auto fam0 = disintegrate_cells(cloud, cells);
    require_full(fam0);
    std::vector<GridMeasure> right;
    for (int i = 0; i < d; ++i)
      right.push_back(bin_measure(fam0.slices[i], cfg.fiber_bins));
    if (n > 0) {
      const auto L = build_blockL(base, cfg.fiber, cfg.fiber_bins, cfg.quad_nodes);
      for (int s = 0; s < n; ++s) right = blockL_apply(L, right);
    }
    const auto fam_n = disintegrate_cells(
        iterate_cloud({base, cfg.fiber}, cloud, n, cfg.seed), cells);
    require_full(fam_n);
    double gap = 0.0;
    for (int i = 0; i < d; ++i)
      gap = std::max(gap, wasserstein1_circle(
                              bin_measure(fam_n.slices[i], cfg.fiber_bins),
                              right[i]));
    gaps.push_back(gap);
  }
  return gaps;
}

LipschitzTrack disintegration_invariance(const ExperimentConfig& cfg,
                                         const std::vector<WeightedState>& cloud) {
  cfg.validate();
  SkewProduct F{cfg.base, cfg.fiber};
  const SystemConstants sc = estimate_constants(F, 64);
  if (sc.sigma_hat <= sc.L_hat)
    throw RejectedInputError(
        "disintegration_invariance needs sigma_hat > L_hat (sigma_hat = " +
        std::to_string(sc.sigma_hat) + ", L_hat = " + std::to_string(sc.L_hat) +
        ")");
  LipschitzTrack track;
  track.bounds = theoretical_bounds(sc.sigma_hat, sc.L_hat, sc.D_hat);
  const double h = 1.0 / cfg.base_bins;
  std::vector<WeightedState> current = cloud;
  for (int n = 0; n <= cfg.steps; ++n) {
    const auto fam = disintegrate(current, cfg.base_bins);
    track.points.push_back({n, disintegration_lipschitz(fam)});
    for (int i = 0; i < fam.base_bins; ++i)
      track.noise_bound =
          std::max(track.noise_bound,
                   wasserstein1_circle(half_measure(fam.slices[i], 0),
                                       half_measure(fam.slices[i], 1)) /
                       h);
    if (n < cfg.steps)
      current = iterate_cloud(F, std::move(current), 1, cfg.seed, n);
  }
  return track;
}

EtaComparison eta_comparison(const ExperimentConfig& cfg,
                             const std::vector<BaseMap>& bases) {
  cfg.validate();
  if (bases.empty()) throw RejectedInputError("eta_comparison: empty base list");

  auto histogram_of = [&](const std::vector<double>& xs) {
    std::vector<double> masses(cfg.hist_bins, 0.0);
    for (double x : xs) masses[GridMeasure::bin_of(cfg.hist_bins, x)] += 1.0;
    return GridMeasure::from_masses(std::move(masses));
  };

  auto run_skew = [&](const BaseMap& base) {
    SkewProduct F{base, cfg.fiber};
    std::vector<double> finals(cfg.samples);
    parallel_particles(cfg.samples, cfg.threads, [&](int k) {
      double omega = uniform01(cfg.seed, k, 0, 0);
      double x = uniform01(cfg.seed, k, 0, 1);
      for (int s = 0; s < cfg.steps; ++s) {
        const double w = omega;
        omega = wrap(F.base.eval(w) +
                     (uniform01(cfg.seed, k, s, 3) - 0.5) * kBaseDither);
        x = F.fiber.eval(w, x);
      }
      finals[k] = x;
    });
    return histogram_of(finals);
  };

  // iid-omega counterpart: omega redrawn each step from rho_g by inverse CDF
  const GridMeasure rho = invariant_density_base(bases.front(), kDensityBins);
  std::vector<double> cum(rho.bins());
  double acc = 0.0;
  for (int i = 0; i < rho.bins(); ++i) cum[i] = (acc += rho.mass(i));
  auto run_iid = [&](std::uint64_t seed) {
    std::vector<double> finals(cfg.samples);
    parallel_particles(cfg.samples, cfg.threads, [&](int k) {
      double x = uniform01(seed, k, 0, 1);
      for (int s = 1; s <= cfg.steps; ++s) {
        const double omega = inverse_cdf(cum, uniform01(seed, k, s, 2));
        x = cfg.fiber.eval(omega, x);
      }
      finals[k] = x;
    });
    return histogram_of(finals);
  };

  EtaComparison out;
  out.eta0_iid = run_iid(cfg.seed);
  out.iid_self_distance = wasserstein1_circle(run_iid(cfg.seed + 1), out.eta0_iid);
  for (const auto& base : bases) {
    GridMeasure hist = run_skew(base);
    out.rows.push_back(
        {base.name(), wasserstein1_circle(hist, out.eta0_iid), std::move(hist)});
  }
  return out;
}

double power_law_exponent(const std::vector<std::pair<double, double>>& pts) {
  if (pts.size() < 2)
    throw RejectedInputError("power_law_exponent needs >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    if (!(x > 0.0) || !(y > 0.0))
      throw RejectedInputError("power_law_exponent needs positive points");
    const double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = double(pts.size());
  const double det = n * sxx - sx * sx;
  if (std::fabs(det) < 1e-12 * std::max(1.0, sxx))
    throw RejectedInputError("power_law_exponent: degenerate abscissae");
  return -(n * sxy - sx * sy) / det;
}

ScalingResult epsilon_scaling(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.sweep.size() < 3)
    throw RejectedInputError("epsilon_scaling needs a sweep of >= 3 bases");
  for (const auto& base : cfg.sweep)
    if (base.distortion() != 0.0)
      throw RejectedInputError("epsilon_scaling needs distortion-free bases");
  ScalingResult out;
  std::vector<std::pair<double, double>> regression;
  for (std::size_t i = 0; i < cfg.sweep.size(); ++i) {
    ExperimentConfig sub = cfg;
    sub.base = cfg.sweep[i];
    sub.sweep.clear();
    const auto mu1 = product_delta_cloud(cfg.samples, 0.1, cfg.seed);
    const auto mu2 = product_delta_cloud(cfg.samples, 0.9, cfg.seed);
    const auto curve = memory_loss_curve(sub, mu1, mu2);
    const double sigma = cfg.sweep[i].sigma_min();
    out.points.push_back({sigma, curve.fit.eps_hat});
    if (curve.fit.eps_hat > 0.0)
      regression.push_back({sigma, curve.fit.eps_hat});
    else
      out.excluded.push_back(static_cast<int>(i));
  }
  out.gamma_hat = power_law_exponent(regression);
  return out;
}

}  // namespace skewlab
