#pragma once

#include <utility>
#include <vector>

#include "skewlab/ulam.hpp"

namespace skewlab {

/// Coarse-grained operator over the d branch cells of the base map: a
/// row-stochastic d x d weight matrix coupling per-cell averaged fiber
/// operators.
struct BlockOperator {
  int d = 0;
  std::vector<std::pair<double, double>> cells;  // branch domains
  std::vector<double> rho_bar;                   // cell masses of rho_g
  std::vector<double> weights;                   // row-major d x d, rows sum 1
  std::vector<UlamOperator> fiber_ops;           // averaged operator per cell

  double weight(int i, int j) const { return weights[std::size_t(i) * d + j]; }
  /// min over (i, j) of w_ij / rho_bar_j: the uniform coupling mass.
  double minorization_p() const;
};

/// Assemble the block operator. Throws ConvergenceError via the base
/// density solve and RejectedInputError if a quadrature weight row misses
/// stochasticity by more than 1e-8.
BlockOperator build_blockL(const BaseMap& g, const FiberFamily& f,
                           int fiber_bins, int quad_nodes);

/// One application: out_i = sum_j w_ij * F_j(in_j), componentwise on the
/// d per-cell fiber measures.
std::vector<GridMeasure> blockL_apply(const BlockOperator& L,
                                      const std::vector<GridMeasure>& eta);

struct BlockFixedPoint {
  std::vector<GridMeasure> components;  // eta_i per cell
  GridMeasure averaged;                 // eta_bar = sum_i rho_bar_i eta_i
  int iterations = 0;
};

/// Power iteration from the all-uniform family to componentwise TV
/// residual < 1e-10.
BlockFixedPoint fixed_point_blockL(const BlockOperator& L);

struct TheoreticalBounds {
  double a0 = 0.0;            // invariant vertical oscillation bound
  double C_a0 = 0.0;          // distortion-inflated oscillation constant
  double ell0_nodist = 0.0;   // Lipschitz radius, zero-distortion form
  double ell0_general = 0.0;  // Lipschitz radius, general form
  double p_bound = 0.0;       // coupling mass lower bound
};

/// Closed-form constants from (sigma, L, D) for the geodesic circle of
/// diameter 1/2. Requires sigma > 1; the Lipschitz radii also need
/// L/sigma < 1 and are set to infinity otherwise.
TheoreticalBounds theoretical_bounds(double sigma, double L, double D);

}  // namespace skewlab
