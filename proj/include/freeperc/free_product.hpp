#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "factor_chi.hpp"
#include "group_factor.hpp"
#include "root_isolation.hpp"
#include "walk_through.hpp"

namespace freeperc {

/// Free product of n >= 2 nontrivial factors.
struct FreeProduct {
  std::vector<GroupFactor> factors;

  explicit FreeProduct(std::vector<GroupFactor> f) : factors(std::move(f)) {
    if (factors.size() < 2) throw Error(errc::invalid_argument, "free product needs at least 2 factors");
  }

  FreeProduct(GroupFactor a, GroupFactor b) : factors{std::move(a), std::move(b)} {}

  std::size_t size() const { return factors.size(); }

  std::string label() const {
    std::string s;
    for (const auto& f : factors) {
      if (!s.empty()) s += "*";
      s += f.label();
    }
    return s;
  }

  /// True exactly for the virtually cyclic product of two order-2 groups.
  bool is_two_copies_of_c2() const {
    return factors.size() == 2 && factors[0].is_finite() && factors[1].is_finite() &&
           factors[0].order() == 2 && factors[1].order() == 2;
  }

  /// Upper end of the search interval: the smallest factor divergence point.
  double chi_domain_end() const {
    double p = 1.0;
    for (const auto& f : factors) p = std::min(p, f.chi_divergence_point());
    return p;
  }
};

enum class Regime { subcritical, critical, supercritical };

/// Result bundle of a percolation-function evaluation at one p.
struct PercolationReport {
  double p = 0.0;
  double theta = 0.0;
  double fixed_point_b = 0.0;  // survival probability of type-2 paths
  double fixed_point_a = 0.0;  // survival probability of type-1 paths
  double expected_cluster_size = 0.0;
  double pc = 0.0;
  Regime regime = Regime::subcritical;
  bool extended = false;  // n > 2: multi-type system beyond the two-factor theory
};

namespace detail {

/// Fast repeated chi evaluation for every factor of a product.
class ProductChi {
public:
  explicit ProductChi(const FreeProduct& product, int edge_cap = 20) {
    for (const auto& f : product.factors) {
      Entry e;
      e.kind = f.kind();
      switch (f.kind()) {
        case FactorKind::cyclic:
          e.order = f.order();
          break;
        case FactorKind::explicit_finite:
          e.poly = cluster_distribution(f, edge_cap).mean_polynomial().coefficients_as_double();
          break;
        case FactorKind::integers:
          break;
        case FactorKind::free_group:
          e.tree_slope = 2.0 * f.rank() - 1.0;
          break;
      }
      entries_.push_back(std::move(e));
    }
  }

  std::size_t size() const { return entries_.size(); }

  double chi(std::size_t i, double p) const {
    const Entry& e = entries_[i];
    switch (e.kind) {
      case FactorKind::cyclic: {
        double acc = static_cast<double>(1 - e.order);
        for (int k = e.order - 1; k >= 1; --k) acc = acc * p + 2.0;
        return acc * p + 1.0;
      }
      case FactorKind::explicit_finite: {
        double acc = 0.0;
        for (std::size_t k = e.poly.size(); k-- > 0;) acc = acc * p + e.poly[k];
        return acc;
      }
      case FactorKind::integers:
        return p >= 1.0 ? std::numeric_limits<double>::infinity() : (1.0 + p) / (1.0 - p);
      case FactorKind::free_group: {
        double denom = 1.0 - e.tree_slope * p;
        return denom <= 0.0 ? std::numeric_limits<double>::infinity() : (1.0 + p) / denom;
      }
    }
    return 0.0;
  }

  /// D(p) = sum_j prod_{i != j} chi_i - (n-1) prod chi_i; equals 1 at p = 0,
  /// decreases, and vanishes exactly at the critical point. -inf once any
  /// factor's chi has diverged.
  double denominator(double p) const {
    const std::size_t n = entries_.size();
    double product = 1.0;
    double inv_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double c = chi(i, p);
      if (!std::isfinite(c)) return -std::numeric_limits<double>::infinity();
      product *= c;
      inv_sum += 1.0 / c;
    }
    return product * (inv_sum - static_cast<double>(n - 1));
  }

  double product_chi(double p) const {
    double product = 1.0;
    for (std::size_t i = 0; i < entries_.size(); ++i) product *= chi(i, p);
    return product;
  }

private:
  struct Entry {
    FactorKind kind = FactorKind::cyclic;
    int order = 0;
    double tree_slope = 0.0;
    std::vector<double> poly;
  };
  std::vector<Entry> entries_;
};

inline int sign_of_denominator_exact(const FreeProduct& product, const Rational& p, int edge_cap) {
  const std::size_t n = product.size();
  std::vector<Rational> chis;
  chis.reserve(n);
  for (const auto& f : product.factors) {
    auto c = chi_exact(f, p, edge_cap);
    if (!c) return -1;  // a diverged factor puts us past the root
    chis.push_back(std::move(*c));
  }
  Rational prod(1);
  for (const auto& c : chis) prod *= c;
  Rational sum(0);
  for (std::size_t j = 0; j < n; ++j) {
    Rational term(1);
    for (std::size_t i = 0; i < n; ++i) {
      if (i != j) term *= chis[i];
    }
    sum += term;
  }
  Rational d = sum - Rational(static_cast<int>(n) - 1) * prod;
  return sign_of(d);
}

}  // namespace detail

/// Critical probability of the free product by bisection on D(p).
///
/// D(0) = 1 and D is strictly decreasing up to the smallest factor
/// divergence point, so the sign change brackets the unique root. The
/// product of two order-2 groups is the one boundary case, with pc = 1.
inline double pc_numeric(const FreeProduct& product, double tol = 1e-9, int edge_cap = 20) {
  if (!(tol > 0)) throw Error(errc::invalid_argument, "tolerance must be positive");
  if (product.is_two_copies_of_c2()) return 1.0;
  detail::ProductChi chis(product, edge_cap);
  double lo = 0.0;
  double hi = product.chi_domain_end();
  for (int it = 0; it < 2000 && (hi - lo) > tol; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // double resolution exhausted
    if (chis.denominator(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Certified dyadic bracket [lo, hi] around the critical probability with
/// hi - lo <= 2^-bits, decided by exact rational sign evaluations of D.
inline std::pair<Rational, Rational> pc_exact_bracket(const FreeProduct& product, int bits = 64,
                                                      int edge_cap = 20) {
  if (bits < 1 || bits > 100000) throw Error(errc::invalid_argument, "bracket width out of range");
  if (product.is_two_copies_of_c2()) return {Rational(1), Rational(1)};
  Rational lo(0);
  Rational hi(1);
  for (const auto& f : product.factors) {
    if (f.kind() == FactorKind::free_group) hi = std::min(hi, Rational(1, 2 * f.rank() - 1));
  }
  Rational width = hi - lo;
  Rational goal = Rational(1) / rational_pow(Rational(2), static_cast<unsigned>(bits));
  while (width > goal) {
    Rational mid = (lo + hi) / 2;
    if (detail::sign_of_denominator_exact(product, mid, edge_cap) > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
    width = hi - lo;
  }
  return {lo, hi};
}

/// Integer-normalized polynomial whose unique root in (0,1) is the critical
/// probability (no interior root for the order-2 pair, whose pc sits at 1).
/// Built from the closed-form chi of every factor with denominators cleared;
/// factors without zeros in (0,1) cancel in the reduced form.
inline RationalPolynomial pc_polynomial(const FreeProduct& product, int edge_cap = 20) {
  const std::size_t n = product.size();
  std::vector<RationalFunction> chis;
  chis.reserve(n);
  for (const auto& f : product.factors) chis.push_back(chi_closed_form(f, edge_cap));
  RationalFunction prod = RationalFunction::constant(Rational(1));
  for (const auto& c : chis) prod *= c;
  RationalFunction sum;
  for (std::size_t j = 0; j < n; ++j) {
    RationalFunction term = RationalFunction::constant(Rational(1));
    for (std::size_t i = 0; i < n; ++i) {
      if (i != j) term *= chis[i];
    }
    sum += term;
  }
  RationalFunction d = sum - RationalFunction::constant(Rational(static_cast<int>(n) - 1)) * prod;
  return d.numerator().integer_normalized();
}

/// Expected cluster size at the origin: prod chi / D(p) below the critical
/// point, +infinity at and above it.
inline double expected_cluster_size(const FreeProduct& product, double p, int edge_cap = 20) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(errc::invalid_argument, "probability out of [0,1]");
  double pc = pc_numeric(product, 1e-12, edge_cap);
  if (p >= pc) return std::numeric_limits<double>::infinity();
  detail::ProductChi chis(product, edge_cap);
  double d = chis.denominator(p);
  if (!(d > 0.0)) return std::numeric_limits<double>::infinity();
  return chis.product_chi(p) / d;
}

namespace detail {

inline Regime classify(double p, double pc, double tol) {
  if (std::abs(p - pc) <= tol) return Regime::critical;
  return p < pc ? Regime::subcritical : Regime::supercritical;
}

}  // namespace detail

/// Percolation function via the survival fixed point.
///
/// For two factors, B solves B = g2(p, g1(p, B)); the map h(t) =
/// g2(p, g1(p, t)) - t is concave with h(0) = 0, so any positive value of h
/// on the dyadic grid t = 2^-k certifies a bracket [t, 1] for the unique
/// positive root. For more than two factors the multi-type system
/// B_i = g_i(p, 1 - prod_{j != i}(1 - B_j)) is iterated downward from 1 and
/// the report is flagged `extended`.
inline PercolationReport theta(const FreeProduct& product, double p, double tol = 1e-9, int edge_cap = 20) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(errc::invalid_argument, "probability out of [0,1]");
  if (!(tol > 0)) throw Error(errc::invalid_argument, "tolerance must be positive");
  PercolationReport report;
  report.p = p;
  report.pc = pc_numeric(product, std::min(tol * 1e-3, 1e-12), edge_cap);
  report.expected_cluster_size = p < report.pc ? expected_cluster_size(product, p, edge_cap)
                                               : std::numeric_limits<double>::infinity();
  report.regime = detail::classify(p, report.pc, tol);
  report.extended = product.size() > 2;

  // The whole band p <= pc + tol reports zero: theta is positive exactly in
  // the supercritical regime.
  if (p <= report.pc + tol) return report;

  std::vector<WalkThroughEvaluator> g;
  g.reserve(product.size());
  for (const auto& f : product.factors) g.emplace_back(f, p, edge_cap);

  if (product.size() == 2) {
    auto h = [&](double t) { return g[1](g[0](t)) - t; };
    double bracket_lo = 0.0;
    for (int k = 1; k <= 60; ++k) {
      double t = std::ldexp(1.0, -k);
      if (h(t) > 0.0) {
        bracket_lo = t;
        break;
      }
    }
    if (bracket_lo == 0.0) {
      throw Error(errc::fixed_point_not_found, "no positive fixed point found above the critical point");
    }
    double lo = bracket_lo, hi = 1.0;
    for (int it = 0; it < 400; ++it) {
      double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (h(mid) > 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
      if (hi - lo <= tol && std::abs(h(0.5 * (lo + hi))) <= 0.5 * tol) break;
    }
    double b = 0.5 * (lo + hi);
    double a = g[0](b);
    report.fixed_point_b = b;
    report.fixed_point_a = a;
    report.theta = a + b - a * b;
    return report;
  }

  // Multi-type system, iterated downward from all ones to the largest fixed point.
  const std::size_t n = product.size();
  std::vector<double> b(n, 1.0), next(n, 0.0);
  for (long it = 0; it < 1000000; ++it) {
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double other = 1.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) other *= 1.0 - b[j];
      }
      next[i] = g[i](1.0 - other);
      delta = std::max(delta, std::abs(next[i] - b[i]));
    }
    b.swap(next);
    if (delta < std::min(tol * 1e-3, 1e-13)) break;
  }
  double not_survive = 1.0;
  for (double bi : b) not_survive *= 1.0 - bi;
  double rest = 1.0;
  for (std::size_t j = 1; j < n; ++j) rest *= 1.0 - b[j];
  report.fixed_point_a = b[0];
  report.fixed_point_b = 1.0 - rest;
  report.theta = 1.0 - not_survive;
  return report;
}

/// Schonmann's exponential-decay threshold: the minimum over factors, with
/// finite factors (and the built-in tree-like infinite kinds) contributing 1.
/// Overrides supply the threshold for factors outside the built-in kinds.
inline double p_exp(const FreeProduct& product, const std::vector<std::optional<double>>& overrides = {}) {
  if (!overrides.empty() && overrides.size() != product.size())
    throw Error(errc::invalid_argument, "override list must match the factor count");
  double result = 1.0;
  for (std::size_t i = 0; i < product.size(); ++i) {
    double v = 1.0;
    if (!overrides.empty() && overrides[i]) {
      v = *overrides[i];
      if (!(v >= 0.0 && v <= 1.0)) throw Error(errc::invalid_argument, "p_exp override out of [0,1]");
    }
    result = std::min(result, v);
  }
  return result;
}

/// Left derivative of 1/E_p|C| at the critical point of a two-factor product:
/// [chi1'(pc)(1 - chi2(pc)) + chi2'(pc)(1 - chi1(pc))] / (chi1(pc) chi2(pc)).
/// Strictly negative; the reciprocal of its magnitude is the limit of
/// (pc - p) E_p|C| from the left.
inline double einv_left_derivative_at_pc(const FreeProduct& product, int edge_cap = 20) {
  if (product.size() != 2)
    throw Error(errc::invalid_argument, "left-derivative formula applies to two-factor products");
  if (product.is_two_copies_of_c2())
    throw Error(errc::degenerate_product, "the order-2 pair has pc = 1 with no subcritical window");
  double pc = pc_numeric(product, 1e-13, edge_cap);
  double x1 = chi(product.factors[0], pc, edge_cap);
  double x2 = chi(product.factors[1], pc, edge_cap);
  double d1 = chi_prime(product.factors[0], pc, edge_cap);
  double d2 = chi_prime(product.factors[1], pc, edge_cap);
  return (d1 * (1.0 - x2) + d2 * (1.0 - x1)) / (x1 * x2);
}

}  // namespace freeperc
