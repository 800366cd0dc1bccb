#include "skewlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "skewlab/block.hpp"
#include "skewlab/rng.hpp"
#include "skewlab/transport_oracle.hpp"

namespace skewlab {

namespace {

constexpr std::uint64_t kSeed = 20240811;

EmpiricalMeasure random_atoms(std::uint64_t trial, std::uint64_t lane,
                              int max_atoms = 6) {
  const int n =
      1 + static_cast<int>(uniform01(kSeed, trial, 0, lane) * max_atoms);
  std::vector<Atom> atoms;
  for (int k = 0; k < n; ++k)
    atoms.push_back({uniform01(kSeed, trial, 1 + k, lane),
                     0.05 + uniform01(kSeed, trial, 101 + k, lane)});
  return EmpiricalMeasure(std::move(atoms), true);
}

GridMeasure random_grid(std::uint64_t trial, std::uint64_t lane, int bins) {
  std::vector<double> masses(bins);
  for (int k = 0; k < bins; ++k)
    masses[k] = 0.01 + uniform01(kSeed, trial, k, lane);
  return GridMeasure::from_masses(std::move(masses));
}

EmpiricalMeasure mixture(const std::vector<double>& weights,
                         const std::vector<EmpiricalMeasure>& parts) {
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (const auto& a : parts[i].atoms())
      atoms.push_back({a.position, weights[i] * a.weight});
  return EmpiricalMeasure(std::move(atoms), true);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

CheckResult check_wasserstein_oracle() {
  double worst = 0.0;
  for (std::uint64_t t = 0; t < 500; ++t) {
    const auto mu = random_atoms(t, 0);
    const auto nu = random_atoms(t, 1);
    worst = std::max(worst, std::fabs(wasserstein1_circle(mu, nu) -
                                      transport_cost_oracle(mu, nu)));
  }
  return {"wasserstein-oracle", worst <= 1e-9,
          "max |median route - min-cost-flow| = " + fmt(worst) +
              " over 500 trials"};
}

CheckResult check_uniform_vs_dirac() {
  const double w1 =
      wasserstein1_circle(GridMeasure::uniform(1000), EmpiricalMeasure::dirac(0.0));
  return {"wasserstein-uniform-dirac", std::fabs(w1 - 0.25) <= 1e-3,
          "W1(uniform_1000, dirac_0) = " + fmt(w1) + ", expected 0.25"};
}

// W1(T mu, T nu) <= Lip(T) W1(mu, nu) for circle-continuous T
CheckResult check_pushforward_lipschitz() {
  double worst = 0.0;
  for (std::uint64_t t = 0; t < 1000; ++t) {
    const int degree = static_cast<int>(uniform01(kSeed, t, 200, 2) * 4);
    const double beta = 0.05 * uniform01(kSeed, t, 201, 2);
    const double alpha = uniform01(kSeed, t, 202, 2);
    auto T = [&](double x) {
      return degree * x + alpha +
             beta * std::sin(2.0 * std::numbers::pi * x);
    };
    const double lip = degree + 2.0 * std::numbers::pi * beta;
    const auto mu = random_atoms(t, 3);
    const auto nu = random_atoms(t, 4);
    const double lhs = wasserstein1_circle(pushforward(T, mu), pushforward(T, nu));
    worst = std::max(worst, lhs - lip * wasserstein1_circle(mu, nu));
  }
  return {"pushforward-lipschitz", worst <= 1e-9,
          "max violation = " + fmt(worst) + " over 1000 trials"};
}

// mixture of a family lies within the family's W1 diameter of each member
CheckResult check_mixture_distance() {
  double worst = 0.0;
  for (std::uint64_t t = 0; t < 1000; ++t) {
    const int m = 2 + static_cast<int>(uniform01(kSeed, t, 300, 5) * 4);
    std::vector<EmpiricalMeasure> parts;
    std::vector<double> weights;
    double total = 0.0;
    for (int s = 0; s < m; ++s) {
      parts.push_back(random_atoms(t, 10 + s));
      weights.push_back(0.05 + uniform01(kSeed, t, 301 + s, 5));
      total += weights.back();
    }
    for (auto& w : weights) w /= total;
    double ell = 0.0;
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b)
        ell = std::max(ell, wasserstein1_circle(parts[a], parts[b]));
    const auto bar = mixture(weights, parts);
    for (int s = 0; s < m; ++s)
      worst = std::max(worst, wasserstein1_circle(bar, parts[s]) - ell);
  }
  return {"mixture-distance", worst <= 1e-9,
          "max violation = " + fmt(worst) + " over 1000 trials"};
}

// W1 <= diam * TV on the geodesic circle (diam = 1/2)
CheckResult check_w1_tv_diameter() {
  double worst = 0.0;
  for (std::uint64_t t = 0; t < 1000; ++t) {
    const int bins = 16 + static_cast<int>(uniform01(kSeed, t, 400, 6) * 48);
    const auto mu = random_grid(t, 7, bins);
    const auto nu = random_grid(t, 8, bins);
    worst = std::max(worst, wasserstein1_circle(mu, nu) -
                                kCircleDiameter * tv_distance(mu, nu));
  }
  return {"w1-tv-diameter", worst <= 1e-9,
          "max violation = " + fmt(worst) + " over 1000 trials"};
}

// equal-weight convex combinations move no farther than the worst pair
CheckResult check_convex_combination() {
  double worst = 0.0;
  for (std::uint64_t t = 0; t < 1000; ++t) {
    const int m = 2 + static_cast<int>(uniform01(kSeed, t, 500, 9) * 4);
    std::vector<EmpiricalMeasure> mus, nus;
    std::vector<double> weights;
    double total = 0.0;
    for (int s = 0; s < m; ++s) {
      mus.push_back(random_atoms(t, 20 + s));
      nus.push_back(random_atoms(t, 40 + s));
      weights.push_back(0.05 + uniform01(kSeed, t, 501 + s, 9));
      total += weights.back();
    }
    for (auto& w : weights) w /= total;
    double bound = 0.0;
    for (int s = 0; s < m; ++s)
      bound = std::max(bound, wasserstein1_circle(mus[s], nus[s]));
    worst = std::max(worst, wasserstein1_circle(mixture(weights, mus),
                                                mixture(weights, nus)) -
                                bound);
  }
  return {"convex-combination", worst <= 1e-9,
          "max violation = " + fmt(worst) + " over 1000 trials"};
}

std::vector<BaseMap> base_catalog() {
  return {BaseMap::linear(2), BaseMap::linear(8), BaseMap::tent_power(1),
          BaseMap::gmk(5, 0.99), BaseMap::gmk(50, 0.99)};
}

CheckResult check_column_stochasticity(const UlamOperator* injected) {
  const FiberFamily fiber = FiberFamily::ns_forced(0.01, 0.001, 0.5);
  const GridMeasure rho = GridMeasure::uniform(256);
  double worst = 0.0;
  worst = std::max(worst, build_P(fiber, rho, 128, 512).max_column_sum_error());
  worst = std::max(worst, build_P(FiberFamily::additive_identity(), rho, 128, 512)
                              .max_column_sum_error());
  for (const auto& g : base_catalog())
    worst = std::max(worst, ulam_matrix_base(g, 200).max_column_sum_error());
  if (injected)
    worst = std::max(worst, injected->max_column_sum_error());
  return {"column-stochasticity", worst <= 1e-10,
          "max |column sum - 1| = " + fmt(worst)};
}

CheckResult check_block_rows_and_minorization() {
  double worst_row = 0.0, worst_gap = 0.0;
  std::string note;
  for (const auto& g : base_catalog()) {
    const auto L = build_blockL(g, FiberFamily::ns_forced(0.01, 0.001, 0.5),
                                64, 32);
    for (int i = 0; i < L.d; ++i) {
      double row = 0.0;
      for (int j = 0; j < L.d; ++j) row += L.weight(i, j);
      worst_row = std::max(worst_row, std::fabs(row - 1.0));
    }
    const double p_measured = L.minorization_p();
    const double p_bound =
        theoretical_bounds(g.sigma_min(), 0.0, g.minorization_distortion())
            .p_bound;
    worst_gap = std::max(worst_gap, p_bound - 1e-6 - p_measured);
    note += g.name() + ": p=" + fmt(p_measured) + ">=" + fmt(p_bound) + "; ";
  }
  const bool ok = worst_row <= 1e-10 && worst_gap <= 0.0;
  return {"block-rows-minorization", ok,
          "max |row sum - 1| = " + fmt(worst_row) + "; " + note};
}

CheckResult check_fixed_points() {
  const FiberFamily fiber = FiberFamily::ns_forced(0.01, 0.001, 0.5);
  const GridMeasure rho = invariant_density_base(BaseMap::linear(8), 1024);
  const auto P = build_P(fiber, rho, 256, 1024);
  const auto eta0 = stationary_measure(P);
  const double res_p = tv_distance(P.apply(eta0), eta0);

  const auto L = build_blockL(BaseMap::linear(8), fiber, 256, 128);
  const auto fp = fixed_point_blockL(L);
  const auto again = blockL_apply(L, fp.components);
  double res_block = 0.0;
  for (int i = 0; i < L.d; ++i)
    res_block = std::max(res_block, tv_distance(again[i], fp.components[i]));

  const bool ok = res_p < 1e-9 && res_block < 1e-9;
  return {"fixed-point-residual", ok,
          "TV(P eta0, eta0) = " + fmt(res_p) +
              ", block residual = " + fmt(res_block)};
}

CheckResult check_linear_eta_bar() {
  const FiberFamily fiber = FiberFamily::ns_forced(0.01, 0.001, 0.5);
  const BaseMap g = BaseMap::linear(8);
  const GridMeasure rho = invariant_density_base(g, 1024);
  const int quad_per_cell = 128;
  const auto L = build_blockL(g, fiber, 256, quad_per_cell);
  const auto eta_bar = fixed_point_blockL(L).averaged;
  // same quadrature node set as the per-cell assembly
  const auto eta0 = stationary_measure(
      build_P(fiber, rho, 256, g.branch_count() * quad_per_cell));
  const double gap = tv_distance(eta_bar, eta0);
  return {"linear-eta-bar-vs-eta0", gap < 1e-6,
          "TV(eta_bar, eta0) = " + fmt(gap)};
}

CheckResult check_block_contraction() {
  const auto L = build_blockL(BaseMap::linear(4),
                              FiberFamily::ns_forced(0.01, 0.001, 0.5), 128, 64);
  std::vector<GridMeasure> a, b;
  for (int i = 0; i < L.d; ++i) {
    a.push_back(random_grid(600 + i, 11, 128));
    b.push_back(random_grid(700 + i, 12, 128));
  }
  double tv0 = 0.0;
  for (int i = 0; i < L.d; ++i) tv0 = std::max(tv0, tv_distance(a[i], b[i]));
  for (int n = 0; n < 4; ++n) {
    a = blockL_apply(L, a);
    b = blockL_apply(L, b);
  }
  double tv4 = 0.0;
  for (int i = 0; i < L.d; ++i) tv4 = std::max(tv4, tv_distance(a[i], b[i]));
  const double lambda = std::pow(tv4 / tv0, 0.25);
  return {"block-contraction", lambda < 1.0,
          "4-step TV ratio gives lambda_hat = " + fmt(lambda)};
}

CheckResult check_bounds_formulas() {
  const auto b1 = theoretical_bounds(2.0, 0.5, 0.0);
  const auto b2 = theoretical_bounds(10.0, 0.5, 0.1);
  const auto b3 = theoretical_bounds(7.0, 0.3, 0.0);
  const bool ok = std::fabs(b1.ell0_nodist - 1.0 / 3.0) < 1e-12 &&
                  std::fabs(b2.p_bound - 0.8052) < 1e-4 && b3.p_bound == 1.0 &&
                  b3.a0 == 0.0;
  return {"bounds-formulas", ok,
          "ell0(L=.5,s=2,D=0) = " + fmt(b1.ell0_nodist) +
              ", p(D=.1,s=10) = " + fmt(b2.p_bound) +
              ", p(D=0) = " + fmt(b3.p_bound) + ", a0(D=0) = " + fmt(b3.a0)};
}

}  // namespace

std::vector<std::string> verification_names() {
  return {"wasserstein-oracle",     "wasserstein-uniform-dirac",
          "pushforward-lipschitz",  "mixture-distance",
          "w1-tv-diameter",         "convex-combination",
          "column-stochasticity",   "block-rows-minorization",
          "fixed-point-residual",   "linear-eta-bar-vs-eta0",
          "block-contraction",      "bounds-formulas"};
}

std::vector<CheckResult> run_verification(const std::vector<std::string>& only,
                                          const UlamOperator* injected) {
  const auto known = verification_names();
  for (const auto& name : only)
    if (std::find(known.begin(), known.end(), name) == known.end())
      throw RejectedInputError("unknown check '" + name + "'");
  auto wanted = [&](const std::string& name) {
    return only.empty() ||
           std::find(only.begin(), only.end(), name) != only.end();
  };
  std::vector<CheckResult> results;
  auto run = [&](const std::string& name,
                 const std::function<CheckResult()>& fn) {
    if (wanted(name)) results.push_back(fn());
  };
  run("wasserstein-oracle", check_wasserstein_oracle);
  run("wasserstein-uniform-dirac", check_uniform_vs_dirac);
  run("pushforward-lipschitz", check_pushforward_lipschitz);
  run("mixture-distance", check_mixture_distance);
  run("w1-tv-diameter", check_w1_tv_diameter);
  run("convex-combination", check_convex_combination);
  run("column-stochasticity",
      [&] { return check_column_stochasticity(injected); });
  run("block-rows-minorization", check_block_rows_and_minorization);
  run("fixed-point-residual", check_fixed_points);
  run("linear-eta-bar-vs-eta0", check_linear_eta_bar);
  run("block-contraction", check_block_contraction);
  run("bounds-formulas", check_bounds_formulas);
  return results;
}

}  // namespace skewlab
