#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "skewlab/circle.hpp"

namespace skewlab {

/// Affine segment g(w) = slope*w + intercept on [lo, hi).
struct AffinePiece {
  double lo = 0.0;
  double hi = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
};

struct Preimage {
  CirclePoint point;
  double abs_derivative = 0.0;
};

struct InverseBranches {
  std::vector<Preimage> preimages;
  bool boundary_hit = false;  // some preimage landed on a piece boundary
};

struct RejectedInputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Piecewise-invertible expanding circle map. Branch domains are
/// left-closed right-open; a point on a boundary evaluates via the branch
/// whose domain starts there.
class BaseMap {
 public:
  enum class Kind { Linear, Gmk, TentPower, LogisticPower, Custom };

  static BaseMap linear(int sigma);
  static BaseMap gmk(int M, double kappa);
  static BaseMap tent_power(int n);
  static BaseMap logistic_power(int n);

  /// h_inv o g o h with branch structure induced from g. Throws
  /// RejectedInputError if h o h_inv deviates from the identity by more
  /// than 1e-10 on a sample grid.
  static BaseMap conjugated(const BaseMap& g,
                            std::function<double(double)> h,
                            std::function<double(double)> h_inv);

  CirclePoint eval(CirclePoint omega) const;
  double eval(double omega) const { return eval(CirclePoint(omega)).value(); }

  /// All d preimages of omega with |Dg| at each.
  InverseBranches inverse_branches(CirclePoint omega) const;

  int branch_count() const { return d_; }
  /// Domain [lo, hi) of branch i.
  std::pair<double, double> branch_domain(int i) const;

  /// |Dg| at omega (derivative of the branch containing omega).
  double abs_derivative(double omega) const;

  double sigma_min() const { return sigma_min_; }
  /// Distortion constant of the spec'd type: zero for piecewise-affine
  /// kinds, sampled Lipschitz constant of log|Dg o h_i| otherwise.
  double distortion() const { return distortion_; }
  /// Distortion constant entering the minorization lower bound: chosen so
  /// exp(D * diam) dominates the derivative ratio within any one branch.
  double minorization_distortion() const { return minorization_distortion_; }

  /// Piecewise-affine description, one piece list per branch; empty for
  /// kinds without a closed affine form.
  const std::vector<std::vector<AffinePiece>>& affine_branches() const {
    return branches_;
  }
  bool is_affine() const { return !branches_.empty(); }

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }

 private:
  BaseMap() = default;
  void finalize_affine();

  Kind kind_ = Kind::Linear;
  std::string name_;
  int d_ = 0;
  double sigma_min_ = 0.0;
  double distortion_ = 0.0;
  double minorization_distortion_ = 0.0;

  // affine kinds
  std::vector<std::vector<AffinePiece>> branches_;

  // logistic / custom kinds
  int power_ = 1;                          // LogisticPower
  std::function<double(double)> conj_h_;   // Custom: g = h_inv o inner o h
  std::function<double(double)> conj_hinv_;
  std::vector<BaseMap> inner_;             // wrapped underlying map (size 1)
};

}  // namespace skewlab
