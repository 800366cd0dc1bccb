#include "skewlab/block.hpp"

#include <cmath>
#include <limits>

namespace skewlab {

namespace {
constexpr int kBaseDensityBins = 1024;
constexpr double kRowTol = 1e-8;
constexpr double kFixedPointTol = 1e-10;
constexpr int kMaxIters = 100000;
}  // namespace

double BlockOperator::minorization_p() const {
  double p = std::numeric_limits<double>::infinity();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) p = std::min(p, weight(i, j) / rho_bar[j]);
  return p;
}

BlockOperator build_blockL(const BaseMap& g, const FiberFamily& f,
                           int fiber_bins, int quad_nodes) {
  if (quad_nodes < 1)
    throw RejectedInputError("build_blockL needs quad_nodes >= 1");
  const GridMeasure rho_g = invariant_density_base(g, kBaseDensityBins);
  auto density_at = [&](double w) {
    return rho_g.density()[GridMeasure::bin_of(rho_g.bins(), w)];
  };

  BlockOperator L;
  L.d = g.branch_count();
  for (int i = 0; i < L.d; ++i) L.cells.push_back(g.branch_domain(i));

  // cell masses and coupling weights from the same midpoint rule, so the
  // transfer-operator identity sum_j rho(h_j w)/|Dg(h_j w)| = rho(w) makes
  // the rows stochastic up to roundoff
  L.rho_bar.assign(L.d, 0.0);
  L.weights.assign(std::size_t(L.d) * L.d, 0.0);
  for (int i = 0; i < L.d; ++i) {
    auto [lo, hi] = L.cells[i];
    const double h = (hi - lo) / quad_nodes;
    for (int q = 0; q < quad_nodes; ++q) {
      const double w = lo + (q + 0.5) * h;
      L.rho_bar[i] += h * density_at(w);
      auto inv = g.inverse_branches(CirclePoint(w));
      for (int j = 0; j < L.d; ++j) {
        const auto& pre = inv.preimages[j];
        L.weights[std::size_t(i) * L.d + j] +=
            h * density_at(pre.point.value()) / pre.abs_derivative;
      }
    }
  }
  double rho_total = 0.0;
  for (double v : L.rho_bar) rho_total += v;
  for (auto& v : L.rho_bar) v /= rho_total;
  for (int i = 0; i < L.d; ++i) {
    double row = 0.0;
    for (int j = 0; j < L.d; ++j) row += L.weights[std::size_t(i) * L.d + j];
    double scaled = row / (L.rho_bar[i] * rho_total);
    if (std::fabs(scaled - 1.0) > kRowTol)
      throw RejectedInputError("build_blockL: weight row " + std::to_string(i) +
                               " sums to " + std::to_string(scaled));
    for (int j = 0; j < L.d; ++j) L.weights[std::size_t(i) * L.d + j] /= row;
  }

  for (int j = 0; j < L.d; ++j)
    L.fiber_ops.push_back(
        build_P_cell(f, rho_g, L.cells[j], fiber_bins, quad_nodes));
  return L;
}

std::vector<GridMeasure> blockL_apply(const BlockOperator& L,
                                      const std::vector<GridMeasure>& eta) {
  if (static_cast<int>(eta.size()) != L.d)
    throw RejectedInputError("blockL_apply: component count mismatch");
  const int bins = L.fiber_ops[0].bins();
  std::vector<std::vector<double>> pushed(L.d);
  for (int j = 0; j < L.d; ++j) pushed[j] = L.fiber_ops[j].apply(eta[j].masses());
  std::vector<GridMeasure> out;
  out.reserve(L.d);
  for (int i = 0; i < L.d; ++i) {
    std::vector<double> acc(bins, 0.0);
    for (int j = 0; j < L.d; ++j) {
      const double w = L.weight(i, j);
      if (w == 0.0) continue;
      for (int b = 0; b < bins; ++b) acc[b] += w * pushed[j][b];
    }
    out.push_back(GridMeasure::from_masses(std::move(acc)));
  }
  return out;
}

BlockFixedPoint fixed_point_blockL(const BlockOperator& L) {
  const int bins = L.fiber_ops[0].bins();
  BlockFixedPoint fp;
  fp.components.assign(L.d, GridMeasure::uniform(bins));
  for (int it = 1; it <= kMaxIters; ++it) {
    auto next = blockL_apply(L, fp.components);
    double residual = 0.0;
    for (int i = 0; i < L.d; ++i)
      residual = std::max(residual, tv_distance(next[i], fp.components[i]));
    fp.components = std::move(next);
    fp.iterations = it;
    if (residual < kFixedPointTol) {
      std::vector<double> avg(bins, 0.0);
      for (int i = 0; i < L.d; ++i) {
        auto m = fp.components[i].masses();
        for (int b = 0; b < bins; ++b) avg[b] += L.rho_bar[i] * m[b];
      }
      fp.averaged = GridMeasure::from_masses(std::move(avg));
      return fp;
    }
  }
  throw ConvergenceError("fixed_point_blockL: iteration did not settle", 1.0);
}

TheoreticalBounds theoretical_bounds(double sigma, double L, double D) {
  if (!(sigma > 1.0))
    throw RejectedInputError("theoretical_bounds needs sigma > 1");
  if (L < 0.0 || D < 0.0)
    throw RejectedInputError("theoretical_bounds needs L, D >= 0");
  const double inv_sigma = 1.0 / sigma;
  TheoreticalBounds b;
  b.a0 = D / (1.0 - inv_sigma);
  b.C_a0 = std::exp((b.a0 + inv_sigma * b.a0 + D) * kCircleDiameter);
  const double r = L * inv_sigma;
  const double inf = std::numeric_limits<double>::infinity();
  b.ell0_nodist = r < 1.0 ? r / (1.0 - r) : inf;
  b.ell0_general = r < 1.0 ? (r + b.C_a0 * (1.0 + D)) / (1.0 - r) : inf;
  b.p_bound = std::exp(-kCircleDiameter * D * (3.0 / (1.0 - inv_sigma) + 1.0));
  return b;
}

}  // namespace skewlab
