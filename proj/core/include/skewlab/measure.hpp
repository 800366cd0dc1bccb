#pragma once

#include <utility>
#include <vector>

#include "skewlab/base_map.hpp"
#include "skewlab/circle.hpp"

namespace skewlab {

struct Atom {
  double position = 0.0;  // in [0,1)
  double weight = 0.0;    // > 0
};

/// Weighted atoms on the circle, total weight 1.
class EmpiricalMeasure {
 public:
  EmpiricalMeasure() = default;
  explicit EmpiricalMeasure(std::vector<Atom> atoms, bool renormalize = false);

  static EmpiricalMeasure dirac(double position) {
    return EmpiricalMeasure({{wrap(position), 1.0}});
  }
  static EmpiricalMeasure equal_weights(const std::vector<double>& positions);

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  double total_weight() const;

 private:
  std::vector<Atom> atoms_;
};

/// Piecewise-constant density on a uniform partition of the circle,
/// sum(density)/bins == 1.
class GridMeasure {
 public:
  GridMeasure() = default;
  GridMeasure(int bins, std::vector<double> density);

  static GridMeasure uniform(int bins);
  static GridMeasure from_masses(std::vector<double> masses);  // bin masses
  static GridMeasure dirac_bin(int bins, double position);

  int bins() const { return static_cast<int>(density_.size()); }
  const std::vector<double>& density() const { return density_; }
  double mass(int i) const { return density_[i] / density_.size(); }
  std::vector<double> masses() const;
  double bin_center(int i) const { return (i + 0.5) / density_.size(); }
  static int bin_of(int bins, double position) {
    int b = static_cast<int>(wrap(position) * bins);
    return b >= bins ? bins - 1 : b;
  }

  /// Atoms at bin centers with the bin masses.
  EmpiricalMeasure to_atoms() const;

 private:
  std::vector<double> density_;
};

/// Exact W1 on the circle between atomic measures: minimize over t the
/// integral of |F_mu - F_nu - t|; the optimal t is a weighted median of
/// the CDF difference.
double wasserstein1_circle(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu);
double wasserstein1_circle(const GridMeasure& mu, const GridMeasure& nu);
double wasserstein1_circle(const GridMeasure& mu, const EmpiricalMeasure& nu);

/// (1/2) sum |p_i - q_i| over bin masses; requires equal bin counts.
double tv_distance(const GridMeasure& mu, const GridMeasure& nu);
double tv_distance(const std::vector<double>& p, const std::vector<double>& q);

template <typename MapFn>
EmpiricalMeasure pushforward(MapFn&& T, const EmpiricalMeasure& mu) {
  std::vector<Atom> out;
  out.reserve(mu.size());
  for (const auto& a : mu.atoms()) out.push_back({wrap(T(a.position)), a.weight});
  return EmpiricalMeasure(std::move(out));
}

struct WeightedState {
  double omega = 0.0;
  double x = 0.0;
  double weight = 0.0;
};

EmpiricalMeasure vertical_marginal(const std::vector<WeightedState>& cloud);

/// Binned empirical disintegration over d' equal base cells.
struct DisintegrationFamily {
  int base_bins = 0;
  std::vector<EmpiricalMeasure> slices;  // normalized per cell
  std::vector<double> base_weights;      // cell masses, sum 1
  std::vector<bool> empty;               // flagged empty cells
};

DisintegrationFamily disintegrate(const std::vector<WeightedState>& cloud,
                                  int base_bins);

/// Disintegration over arbitrary cells [lo,hi) (the branch cells of a
/// base map, for the coarse-graining map).
DisintegrationFamily disintegrate_cells(
    const std::vector<WeightedState>& cloud,
    const std::vector<std::pair<double, double>>& cells);

/// max over adjacent cells of W1(slice_i, slice_{i+1 mod d}) / cell width;
/// rejects families with empty slices.
double disintegration_lipschitz(const DisintegrationFamily& fam);
/// all-pairs variant, sup of W1(slice_i, slice_j) / cell distance
double disintegration_lipschitz_all_pairs(const DisintegrationFamily& fam);

}  // namespace skewlab
