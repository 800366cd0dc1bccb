#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "skewlab/fiber.hpp"
#include "skewlab/measure.hpp"

namespace skewlab {

struct ConvergenceError : std::runtime_error {
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual(residual) {}
  double residual = 0.0;
};

/// Column-stochastic bins x bins matrix; entry (i,j) is the mass sent
/// from fiber bin j to fiber bin i.
class UlamOperator {
 public:
  UlamOperator() = default;
  UlamOperator(int bins, std::vector<double> matrix);  // row-major

  int bins() const { return bins_; }
  double entry(int i, int j) const { return m_[std::size_t(i) * bins_ + j]; }
  const std::vector<double>& matrix() const { return m_; }

  /// y_i = sum_j M_ij x_j on bin-mass vectors.
  std::vector<double> apply(const std::vector<double>& masses) const;
  GridMeasure apply(const GridMeasure& mu) const;

  double max_column_sum_error() const;
  UlamOperator power(int n) const;

 private:
  int bins_ = 0;
  std::vector<double> m_;
};

/// Ulam matrix of the transfer operator of g, power-iterated to its fixed
/// density (L1 residual < 1e-10). Piecewise-affine kinds are assembled
/// from exact interval images.
GridMeasure invariant_density_base(const BaseMap& g, int bins);

/// The Ulam matrix itself (exposed for diagnostics and tests).
UlamOperator ulam_matrix_base(const BaseMap& g, int bins);

/// Discretized averaged operator: column j is the rho_g-weighted average
/// over omega-quadrature nodes of the binned image of bin j's center.
UlamOperator build_P(const FiberFamily& f, const GridMeasure& rho_g,
                     int fiber_bins, int quad_nodes);

/// Same with the omega-average restricted to the cell [lo, hi).
UlamOperator build_P_cell(const FiberFamily& f, const GridMeasure& rho_g,
                          std::pair<double, double> cell, int fiber_bins,
                          int quad_nodes);

/// Fixed density of P by power iteration from uniform, TV residual < 1e-10.
GridMeasure stationary_measure(const UlamOperator& P);

struct ContractionFit {
  double C_hat = 0.0;
  double lambda_hat = 0.0;
  bool contracting = false;
  std::vector<std::pair<int, double>> curve;  // (n, worst TV ratio)
  double r_squared = 0.0;
};

/// Worst-case TV(P^n mu, P^n nu) / TV(mu, nu) over random grid-measure
/// pairs, with a geometric fit on the log curve.
ContractionFit contraction_rate(const UlamOperator& P, int n_max, int trials,
                                std::uint64_t seed = 7);

struct DoeblinResult {
  double epsilon_hat = 0.0;
  GridMeasure nu;
  bool holds = false;
};

/// Minorization mass of the n0-step kernel against the uniform reference:
/// epsilon_hat = grid * min_ij (P^n0)_ij, so P^n0(x_j, .) >= epsilon_hat * Leb.
DoeblinResult doeblin_check(const FiberFamily& f, const GridMeasure& rho_g,
                            int n0, int grid);

}  // namespace skewlab
