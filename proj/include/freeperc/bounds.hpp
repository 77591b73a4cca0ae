#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "errors.hpp"
#include "free_product.hpp"

namespace freeperc {

/// General lower/upper p_c estimates for one product, with strictness flags.
struct BoundsReport {
  double lower_est1 = 0.0;               // 1 / (2|S| - 1)
  double cheeger_upper_bound_on_h = 0.0;  // isoperimetric bound on h
  double upper_est2_from_bound = 0.0;     // 1 / (h_bound + 1)
  double pc = 0.0;
  bool strict_lower = false;
  bool strict_upper = false;
};

struct ApproximationRow {
  int j = 0;
  double pc_j = 0.0;
  double delta_j = 0.0;  // pc_j - pc of the limit product
};

struct ApproximationResult {
  std::vector<ApproximationRow> rows;
  double pc_limit = 0.0;
  double slope = 0.0;      // least-squares slope of log(delta) vs j
  double r_squared = 0.0;
  int points_used = 0;     // rows entering the fit
};

/// p_c >= 1/(2|S|-1), generators counted without inverses; equality for free
/// groups with free generating sets.
inline double lower_bound_est1(const FreeProduct& product) {
  int s = 0;
  for (const auto& f : product.factors) s += f.generator_count();
  return 1.0 / (2.0 * s - 1.0);
}

/// Strict-bounds check for C_m * C_n with (m-1)(n-1) > 1: the generator
/// bound 1/3 below and the isoperimetric bound
/// h <= 2 - max(2m/(n(m-1)), 2n/(m(n-1))) above, both strict.
inline BoundsReport cheeger_strictness_check(int m, int n, double tol = 1e-12) {
  if (m < 2 || n < 2 || (m - 1) * (n - 1) <= 1)
    throw Error(errc::parameter_out_of_range, "bounds need cyclic orders with (m-1)(n-1) > 1");
  BoundsReport report;
  report.lower_est1 = 1.0 / 3.0;
  double hb = 2.0 - std::max(2.0 * m / (n * (m - 1.0)), 2.0 * n / (m * (n - 1.0)));
  report.cheeger_upper_bound_on_h = hb;
  report.upper_est2_from_bound = 1.0 / (hb + 1.0);
  report.pc = pc_numeric(FreeProduct(GroupFactor::cyclic(m), GroupFactor::cyclic(n)), tol);
  const double margin = 1e-6;
  report.strict_lower = report.lower_est1 + margin < report.pc;
  report.strict_upper = report.pc + margin < report.upper_est2_from_bound;
  return report;
}

/// Built-in quotient family: every Z factor replaced by the cyclic quotient
/// of order j (injective on balls of radius floor((j-1)/2)).
inline FreeProduct cyclic_quotient_family(const FreeProduct& target, int j) {
  if (j < 2) throw Error(errc::invalid_argument, "cyclic quotient needs order >= 2");
  std::vector<GroupFactor> factors;
  factors.reserve(target.size());
  for (const auto& f : target.factors) {
    factors.push_back(f.kind() == FactorKind::integers ? GroupFactor::cyclic(j) : f);
  }
  return FreeProduct(std::move(factors));
}

/// Sweep of critical probabilities of quotient approximants against the
/// limit product, plus a least-squares decay-rate fit of log(delta) vs j.
///
/// With exact_bits > 0, every p_c is certified by exact dyadic bisection to
/// width 2^-exact_bits and deltas are formed before rounding, which resolves
/// decay far below double-precision root-finder noise. Rows whose delta is
/// within 10x of the root tolerance are excluded from the fit.
inline ApproximationResult approximation_experiment(const FreeProduct& target,
                                                    const std::function<FreeProduct(int)>& family,
                                                    const std::vector<int>& j_list, double tol = 1e-9,
                                                    int exact_bits = 0) {
  if (j_list.empty()) throw Error(errc::invalid_argument, "need at least one approximation index");
  ApproximationResult result;
  double fit_floor;
  std::vector<double> deltas;
  deltas.reserve(j_list.size());
  if (exact_bits > 0) {
    auto limit = pc_exact_bracket(target, exact_bits);
    Rational limit_mid = (limit.first + limit.second) / 2;
    result.pc_limit = to_double(limit_mid);
    for (int j : j_list) {
      auto bracket = pc_exact_bracket(family(j), exact_bits);
      Rational mid = (bracket.first + bracket.second) / 2;
      deltas.push_back(to_double(Rational(mid - limit_mid)));
      result.rows.push_back({j, to_double(mid), deltas.back()});
    }
    fit_floor = 10.0 * std::ldexp(1.0, -exact_bits);
  } else {
    result.pc_limit = pc_numeric(target, tol);
    for (int j : j_list) {
      double pcj = pc_numeric(family(j), tol);
      deltas.push_back(pcj - result.pc_limit);
      result.rows.push_back({j, pcj, deltas.back()});
    }
    fit_floor = 10.0 * tol;
  }

  // Fit log(delta) = slope * j + intercept over resolvable rows.
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  int k = 0;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] > fit_floor)) continue;
    double x = result.rows[i].j;
    double y = std::log(deltas[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
    ++k;
  }
  result.points_used = k;
  if (k >= 2) {
    double vxx = sxx - sx * sx / k;
    double vxy = sxy - sx * sy / k;
    double vyy = syy - sy * sy / k;
    result.slope = vxy / vxx;
    result.r_squared = vyy > 0 ? (vxy * vxy) / (vxx * vyy) : 1.0;
  }
  return result;
}

inline ApproximationResult approximation_experiment(const FreeProduct& target, const std::vector<int>& j_list,
                                                    double tol = 1e-9, int exact_bits = 0) {
  return approximation_experiment(
      target, [&](int j) { return cyclic_quotient_family(target, j); }, j_list, tol, exact_bits);
}

}  // namespace freeperc
