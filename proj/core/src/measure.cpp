#include "skewlab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace skewlab {

namespace {
constexpr double kMassTol = 1e-10;
}

EmpiricalMeasure::EmpiricalMeasure(std::vector<Atom> atoms, bool renormalize)
    : atoms_(std::move(atoms)) {
  double total = 0.0;
  for (auto& a : atoms_) {
    if (!(a.weight > 0.0)) throw RejectedInputError("atom weights must be > 0");
    a.position = wrap(a.position);
    total += a.weight;
  }
  if (renormalize) {
    if (total <= 0.0) throw RejectedInputError("cannot normalize empty measure");
    for (auto& a : atoms_) a.weight /= total;
  } else if (std::fabs(total - 1.0) > kMassTol) {
    throw RejectedInputError("atom weights must sum to 1");
  }
}

EmpiricalMeasure EmpiricalMeasure::equal_weights(
    const std::vector<double>& positions) {
  std::vector<Atom> atoms;
  atoms.reserve(positions.size());
  const double w = 1.0 / positions.size();
  for (double p : positions) atoms.push_back({wrap(p), w});
  return EmpiricalMeasure(std::move(atoms), true);
}

double EmpiricalMeasure::total_weight() const {
  double t = 0.0;
  for (const auto& a : atoms_) t += a.weight;
  return t;
}

GridMeasure::GridMeasure(int bins, std::vector<double> density)
    : density_(std::move(density)) {
  if (bins < 2 || static_cast<int>(density_.size()) != bins)
    throw RejectedInputError("grid measure needs bins >= 2 matching density");
  double mass = 0.0;
  for (double d : density_) {
    if (d < 0.0) throw RejectedInputError("grid density must be >= 0");
    mass += d / bins;
  }
  if (std::fabs(mass - 1.0) > kMassTol)
    throw RejectedInputError("grid density must integrate to 1");
}

GridMeasure GridMeasure::uniform(int bins) {
  return GridMeasure(bins, std::vector<double>(bins, 1.0));
}

GridMeasure GridMeasure::from_masses(std::vector<double> masses) {
  const int n = static_cast<int>(masses.size());
  double total = std::accumulate(masses.begin(), masses.end(), 0.0);
  if (total <= 0.0) throw RejectedInputError("empty grid measure");
  for (auto& m : masses) m = m / total * n;
  return GridMeasure(n, std::move(masses));
}

GridMeasure GridMeasure::dirac_bin(int bins, double position) {
  std::vector<double> d(bins, 0.0);
  d[bin_of(bins, position)] = bins;
  return GridMeasure(bins, std::move(d));
}

std::vector<double> GridMeasure::masses() const {
  std::vector<double> m(density_.size());
  for (std::size_t i = 0; i < density_.size(); ++i)
    m[i] = density_[i] / density_.size();
  return m;
}

EmpiricalMeasure GridMeasure::to_atoms() const {
  std::vector<Atom> atoms;
  for (int i = 0; i < bins(); ++i)
    if (mass(i) > 0.0) atoms.push_back({bin_center(i), mass(i)});
  return EmpiricalMeasure(std::move(atoms), true);
}

double wasserstein1_circle(const EmpiricalMeasure& mu,
                           const EmpiricalMeasure& nu) {
  if (std::fabs(mu.total_weight() - 1.0) > 1e-9 ||
      std::fabs(nu.total_weight() - 1.0) > 1e-9)
    throw RejectedInputError("wasserstein1_circle needs probability measures");

  // signed events along [0,1): +w from mu, -w from nu
  struct Event {
    double pos;
    double delta;
  };
  std::vector<Event> ev;
  ev.reserve(mu.size() + nu.size());
  for (const auto& a : mu.atoms()) ev.push_back({a.position, a.weight});
  for (const auto& a : nu.atoms()) ev.push_back({a.position, -a.weight});
  std::sort(ev.begin(), ev.end(),
            [](const Event& a, const Event& b) { return a.pos < b.pos; });

  // F_mu - F_nu is constant on each gap between consecutive event positions
  std::vector<double> level, len;
  level.reserve(ev.size());
  len.reserve(ev.size());
  double cum = 0.0;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    cum += ev[i].delta;
    double next = (i + 1 < ev.size()) ? ev[i + 1].pos : ev[0].pos + 1.0;
    double gap = next - ev[i].pos;
    if (gap > 0.0) {
      level.push_back(cum);
      len.push_back(gap);
    }
  }
  if (level.empty()) return 0.0;

  // weighted median of the levels, ties broken toward the lower value
  std::vector<std::size_t> idx(level.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return level[a] < level[b]; });
  double half = 0.5, acc = 0.0, t = level[idx.back()];
  for (std::size_t k : idx) {
    acc += len[k];
    if (acc >= half - 1e-15) {
      t = level[k];
      break;
    }
  }

  double w1 = 0.0;
  for (std::size_t i = 0; i < level.size(); ++i)
    w1 += len[i] * std::fabs(level[i] - t);
  return w1;
}

double wasserstein1_circle(const GridMeasure& mu, const GridMeasure& nu) {
  return wasserstein1_circle(mu.to_atoms(), nu.to_atoms());
}

double wasserstein1_circle(const GridMeasure& mu, const EmpiricalMeasure& nu) {
  return wasserstein1_circle(mu.to_atoms(), nu);
}

double tv_distance(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size())
    throw RejectedInputError("tv_distance needs equal bin counts");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::fabs(p[i] - q[i]);
  return 0.5 * s;
}

double tv_distance(const GridMeasure& mu, const GridMeasure& nu) {
  return tv_distance(mu.masses(), nu.masses());
}

EmpiricalMeasure vertical_marginal(const std::vector<WeightedState>& cloud) {
  std::vector<Atom> atoms;
  atoms.reserve(cloud.size());
  for (const auto& s : cloud) atoms.push_back({wrap(s.x), s.weight});
  return EmpiricalMeasure(std::move(atoms), true);
}

DisintegrationFamily disintegrate(const std::vector<WeightedState>& cloud,
                                  int base_bins) {
  if (base_bins < 1) throw RejectedInputError("disintegrate needs d' >= 1");
  std::vector<std::pair<double, double>> cells(base_bins);
  for (int i = 0; i < base_bins; ++i)
    cells[i] = {double(i) / base_bins, double(i + 1) / base_bins};
  return disintegrate_cells(cloud, cells);
}

DisintegrationFamily disintegrate_cells(
    const std::vector<WeightedState>& cloud,
    const std::vector<std::pair<double, double>>& cells) {
  if (cloud.empty()) throw RejectedInputError("disintegrate: empty cloud");
  const int d = static_cast<int>(cells.size());
  DisintegrationFamily fam;
  fam.base_bins = d;
  std::vector<std::vector<Atom>> buckets(d);
  std::vector<double> weights(d, 0.0);
  for (const auto& s : cloud) {
    double w = wrap(s.omega);
    int cell = -1;
    for (int i = 0; i < d; ++i) {
      if (w >= cells[i].first && w < cells[i].second) {
        cell = i;
        break;
      }
    }
    if (cell < 0) cell = d - 1;  // right endpoint sliver
    buckets[cell].push_back({wrap(s.x), s.weight});
    weights[cell] += s.weight;
  }
  double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (total <= 0.0) throw RejectedInputError("disintegrate: zero total weight");
  for (int i = 0; i < d; ++i) {
    fam.base_weights.push_back(weights[i] / total);
    fam.empty.push_back(buckets[i].empty());
    fam.slices.push_back(buckets[i].empty()
                             ? EmpiricalMeasure()
                             : EmpiricalMeasure(std::move(buckets[i]), true));
  }
  return fam;
}

double disintegration_lipschitz(const DisintegrationFamily& fam) {
  if (fam.base_bins < 2)
    throw RejectedInputError("disintegration_lipschitz needs d' >= 2");
  for (int i = 0; i < fam.base_bins; ++i)
    if (fam.empty[i])
      throw RejectedInputError("disintegration_lipschitz: empty slice " +
                               std::to_string(i));
  const double h = 1.0 / fam.base_bins;
  double lip = 0.0;
  for (int i = 0; i < fam.base_bins; ++i) {
    int j = (i + 1) % fam.base_bins;
    lip = std::max(lip, wasserstein1_circle(fam.slices[i], fam.slices[j]) / h);
  }
  return lip;
}

double disintegration_lipschitz_all_pairs(const DisintegrationFamily& fam) {
  if (fam.base_bins < 2)
    throw RejectedInputError("disintegration_lipschitz needs d' >= 2");
  const int d = fam.base_bins;
  double lip = 0.0;
  for (int i = 0; i < d; ++i) {
    if (fam.empty[i]) throw RejectedInputError("empty slice " + std::to_string(i));
    for (int j = i + 1; j < d; ++j) {
      if (fam.empty[j]) continue;
      double dist = circle_dist((i + 0.5) / d, (j + 0.5) / d);
      if (dist <= 0.0) continue;
      lip = std::max(lip,
                     wasserstein1_circle(fam.slices[i], fam.slices[j]) / dist);
    }
  }
  return lip;
}

}  // namespace skewlab
