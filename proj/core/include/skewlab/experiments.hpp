#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "skewlab/block.hpp"
#include "skewlab/decay.hpp"
#include "skewlab/measure.hpp"
#include "skewlab/skew.hpp"

namespace skewlab {

/// Named closed-form observable with its analytic constants.
struct Observable {
  std::string name;
  std::function<double(double)> f;
  double lipschitz = 0.0;  // 0 with is_lipschitz=false for sign
  double l1_norm = 0.0;
  bool is_constant = false;
  bool is_lipschitz = true;
};

/// Catalog: cos2pi, sin2pi, dist0 (geodesic distance to 0), sign
/// (+1 on [0,1/2)), one. Throws RejectedInputError for unknown names.
Observable observable(const std::string& name);

struct ExperimentConfig {
  BaseMap base = BaseMap::linear(2);
  FiberFamily fiber = FiberFamily::additive_identity();
  int samples = 10000;
  int steps = 100;
  std::uint64_t seed = 1;
  int fiber_bins = 512;
  int base_bins = 16;   // d' for disintegration tracking
  int hist_bins = 100;  // vertical histograms
  int quad_nodes = 64;  // per base cell in block assembly
  std::string phi = "cos2pi";
  std::string psi = "cos2pi";
  std::vector<BaseMap> sweep;  // sigma-sweep of base maps
  int threads = 1;

  void validate() const;  // samples >= 1, steps >= 0, observables resolvable
};

struct CurvePoint {
  int n = 0;
  double value = 0.0;
  double stderr_est = 0.0;
};

struct ExperimentCurve {
  std::vector<CurvePoint> points;
  DecayFit fit;
  double c_phi_psi = 0.0;        // 2*||psi||_1*(Lip(phi)+1)
  bool eta_bar_fallback = false;  // averaged measure came from build_P
};

DecayCurve to_decay_curve(const std::vector<CurvePoint>& points);

// --- initial clouds -------------------------------------------------------

/// Stratified-omega cloud with iid uniform fiber coordinates, weight 1/N.
std::vector<WeightedState> uniform_product_cloud(int n, std::uint64_t seed);
/// Stratified-omega cloud with every fiber coordinate at x0.
std::vector<WeightedState> product_delta_cloud(int n, double x0,
                                               std::uint64_t seed);
/// Slice law delta_{c*omega} smeared by a uniform kernel of the given
/// width; the disintegration has Lipschitz constant ~ c.
std::vector<WeightedState> drifting_slice_cloud(int n, double c, double width,
                                                std::uint64_t seed);

/// Amplitude of the base-coordinate dither used by cloud iteration. A
/// double keeps ~52 mantissa bits, so iterating an expanding base strips
/// log2(sigma) bits per step; for power-of-two slopes every orbit lands
/// exactly on 0 once the bits run out, which no real orbit does. Cloud
/// iteration therefore replenishes the low-order bits with a seeded,
/// counter-based dither far below every observable scale.
inline constexpr double kBaseDither = 0x1p-44;

std::vector<WeightedState> iterate_cloud(const SkewProduct& F,
                                         std::vector<WeightedState> cloud,
                                         int steps, std::uint64_t seed,
                                         int first_step = 0);

// --- experiment harnesses -------------------------------------------------

/// Monte Carlo annealed correlation curve
/// n -> |E[phi(x_n) psi(x_0)] - int phi d(eta_bar) * int psi dx|
/// over uniform initial conditions, with a decay fit attached.
ExperimentCurve correlation_curve(const ExperimentConfig& cfg);

/// n -> W1 of the vertical marginals of the two iterated clouds.
ExperimentCurve memory_loss_curve(const ExperimentConfig& cfg,
                                  const std::vector<WeightedState>& mu1,
                                  const std::vector<WeightedState>& mu2);

/// For each base in the sweep: max over branch cells of W1 between the
/// cell-averaged disintegration of the n-step iterated cloud and the
/// n-fold block-operator image of the initial disintegration.
std::vector<double> delta_vs_L_gap(const ExperimentConfig& cfg, int n);

struct LipschitzTrack {
  std::vector<std::pair<int, double>> points;  // (n, Lip estimate)
  double noise_bound = 0.0;  // split-half resolution error of the estimator
  TheoreticalBounds bounds;
};

/// Tracks the disintegration Lipschitz estimate of the iterated cloud for
/// n <= steps; refuses systems with sigma_hat <= L_hat.
LipschitzTrack disintegration_invariance(const ExperimentConfig& cfg,
                                         const std::vector<WeightedState>& cloud);

struct EtaComparisonRow {
  std::string base_name;
  double w1_to_iid = 0.0;
  GridMeasure histogram;
};

struct EtaComparison {
  std::vector<EtaComparisonRow> rows;
  GridMeasure eta0_iid;          // iid-omega chain histogram
  double iid_self_distance = 0;  // two-seed sampling-noise floor
};

/// Final-time vertical histograms of the skew product per base vs the
/// histogram of the chain redrawing omega each step from rho_g.
EtaComparison eta_comparison(const ExperimentConfig& cfg,
                             const std::vector<BaseMap>& bases);

struct ScalingResult {
  double gamma_hat = 0.0;
  std::vector<std::pair<double, double>> points;  // (sigma, eps_hat)
  std::vector<int> excluded;                      // indices with eps_hat = 0
};

/// Slope of log eps_hat against log sigma for y ~ x^(-gamma); refuses
/// degenerate abscissae.
double power_law_exponent(const std::vector<std::pair<double, double>>& pts);

/// memory_loss_curve per sweep base, then power_law_exponent on the
/// fitted plateaus.
ScalingResult epsilon_scaling(const ExperimentConfig& cfg);

}  // namespace skewlab
