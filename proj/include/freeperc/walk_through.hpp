#pragma once

#include <cmath>
#include <vector>

#include "cluster_distribution.hpp"
#include "errors.hpp"
#include "group_factor.hpp"

namespace freeperc {

/// Survival generating kernel g(p,t) = 1 - E[(1-t)^{|C|-1}] of a factor's
/// origin cluster, with the convention that an infinite cluster contributes
/// nothing to the expectation. Nondecreasing and concave in t.
///
/// For the rank-n free group the kernel is computed through the branch
/// generating function W = s((1-p) + pW)^{2n-1}, s = 1-t, iterated from 0;
/// monotone convergence reaches the minimal fixed point, which carries the
/// finite-cluster expectation, and then 1 - E = 1 - ((1-p) + pW)^{2n}.
inline double walk_through_free(int rank, double p, double t, double fp_tol = 1e-13,
                                long max_iterations = 1000000) {
  if (rank < 2) throw Error(errc::invalid_argument, "free factor needs rank >= 2");
  if (!(p >= 0.0 && p <= 1.0) || !(t >= 0.0 && t <= 1.0))
    throw Error(errc::invalid_argument, "walk_through_free needs p, t in [0,1]");
  const double s = 1.0 - t;
  const int out_degree = 2 * rank - 1;
  double w = 0.0;
  for (long it = 0; it < max_iterations; ++it) {
    double next = s * std::pow((1.0 - p) + p * w, out_degree);
    if (std::abs(next - w) < fp_tol) {
      w = next;
      return std::min(1.0, std::max(0.0, 1.0 - std::pow((1.0 - p) + p * w, 2 * rank)));
    }
    w = next;
  }
  throw Error(errc::no_convergence, "branch fixed-point iteration hit the iteration cap");
}

/// Evaluator for g(p,t) prepared once per (factor, p); cheap to call across t.
class WalkThroughEvaluator {
public:
  WalkThroughEvaluator(const GroupFactor& factor, double p, int edge_cap = 20)
      : kind_(factor.kind()), p_(p) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(errc::invalid_argument, "probability out of [0,1]");
    switch (kind_) {
      case FactorKind::cyclic: {
        // Arc closed forms, no polynomial machinery needed.
        const int m = factor.order();
        qvals_.resize(static_cast<std::size_t>(m));
        const double c2 = (1.0 - p) * (1.0 - p);
        double ppow = 1.0;  // p^{n-1}
        for (int n = 1; n < m; ++n) {
          qvals_[static_cast<std::size_t>(n - 1)] = n * c2 * ppow;
          ppow *= p;
        }
        qvals_[static_cast<std::size_t>(m - 1)] = (m * (1.0 - p) + p) * ppow;
        break;
      }
      case FactorKind::explicit_finite: {
        auto dist = cluster_distribution(factor, edge_cap);
        qvals_.resize(static_cast<std::size_t>(dist.max_size()));
        for (int n = 1; n <= dist.max_size(); ++n) qvals_[static_cast<std::size_t>(n - 1)] = dist.q(n)(p);
        break;
      }
      case FactorKind::integers:
        break;
      case FactorKind::free_group:
        rank_ = factor.rank();
        break;
    }
  }

  double operator()(double t) const {
    // Tolerate floating dust from composed evaluations; values are probabilities.
    if (!(t >= -1e-9 && t <= 1.0 + 1e-9)) throw Error(errc::invalid_argument, "t out of [0,1]");
    t = std::min(1.0, std::max(0.0, t));
    switch (kind_) {
      case FactorKind::cyclic:
      case FactorKind::explicit_finite: {
        // 1 - sum_n (1-t)^{n-1} q(n), Horner in s = 1-t.
        const double s = 1.0 - t;
        double acc = 0.0;
        for (std::size_t i = qvals_.size(); i-- > 0;) acc = acc * s + qvals_[i];
        return std::min(1.0, std::max(0.0, 1.0 - acc));
      }
      case FactorKind::integers: {
        if (p_ >= 1.0) return 1.0;
        const double d = 1.0 - p_ * (1.0 - t);
        return std::min(1.0, std::max(0.0, 1.0 - (1.0 - p_) * (1.0 - p_) / (d * d)));
      }
      case FactorKind::free_group:
        return walk_through_free(rank_, p_, t);
    }
    throw Error(errc::invalid_argument, "unknown factor kind");
  }

private:
  FactorKind kind_;
  double p_ = 0.0;
  int rank_ = 0;
  std::vector<double> qvals_;
};

inline double walk_through(const GroupFactor& factor, double p, double t, int edge_cap = 20) {
  return WalkThroughEvaluator(factor, p, edge_cap)(t);
}

}  // namespace freeperc
