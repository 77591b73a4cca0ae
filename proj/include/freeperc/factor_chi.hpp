#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "cluster_distribution.hpp"
#include "errors.hpp"
#include "group_factor.hpp"
#include "rational_function.hpp"

namespace freeperc {

namespace detail {

/// chi of the m-cycle reduces to the polynomial 1 + 2p + ... + 2p^{m-1} - (m-1)p^m.
inline RationalPolynomial cyclic_chi_polynomial(int m) {
  std::vector<Rational> c(static_cast<std::size_t>(m) + 1, Rational(2));
  c[0] = 1;
  c[static_cast<std::size_t>(m)] = Rational(1 - m);
  return RationalPolynomial::from_coefficients(std::move(c));
}

}  // namespace detail

/// Expected subcritical cluster size of a factor as a rational function of p.
///
/// Cyclic and explicit finite factors yield polynomials, the integers give
/// (1+p)/(1-p), and the rank-n free group gives (1+p)/(1-(2n-1)p).
inline RationalFunction chi_closed_form(const GroupFactor& factor, int edge_cap = 20) {
  switch (factor.kind()) {
    case FactorKind::cyclic:
      return RationalFunction(detail::cyclic_chi_polynomial(factor.order()));
    case FactorKind::explicit_finite:
      return RationalFunction(cluster_distribution(factor, edge_cap).mean_polynomial());
    case FactorKind::integers:
      return RationalFunction(RationalPolynomial{Rational(1), Rational(1)},
                              RationalPolynomial{Rational(1), Rational(-1)});
    case FactorKind::free_group:
      return RationalFunction(RationalPolynomial{Rational(1), Rational(1)},
                              RationalPolynomial{Rational(1), Rational(1 - 2 * factor.rank())});
  }
  throw Error(errc::invalid_argument, "unknown factor kind");
}

/// Exact chi at rational p; nullopt signals divergence (+infinity).
inline std::optional<Rational> chi_exact(const GroupFactor& factor, const Rational& p, int edge_cap = 20) {
  if (p < 0 || p > 1) throw Error(errc::invalid_argument, "probability out of [0,1]");
  switch (factor.kind()) {
    case FactorKind::cyclic:
      return detail::cyclic_chi_polynomial(factor.order())(p);
    case FactorKind::explicit_finite:
      return cluster_distribution(factor, edge_cap).mean_polynomial()(p);
    case FactorKind::integers: {
      if (p == 1) return std::nullopt;
      return Rational(1 + p) / Rational(1 - p);
    }
    case FactorKind::free_group: {
      Rational denom = 1 - Rational(2 * factor.rank() - 1) * p;
      if (denom <= 0) return std::nullopt;
      return Rational(1 + p) / denom;
    }
  }
  throw Error(errc::invalid_argument, "unknown factor kind");
}

/// chi as a double; +infinity at and beyond the divergence point.
inline double chi(const GroupFactor& factor, double p, int edge_cap = 20) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(errc::invalid_argument, "probability out of [0,1]");
  switch (factor.kind()) {
    case FactorKind::cyclic: {
      const int m = factor.order();
      // Horner for 1 + 2p + ... + 2p^{m-1} - (m-1)p^m
      double acc = static_cast<double>(1 - m);
      for (int k = m - 1; k >= 1; --k) acc = acc * p + 2.0;
      return acc * p + 1.0;
    }
    case FactorKind::explicit_finite:
      return cluster_distribution(factor, edge_cap).mean_polynomial()(p);
    case FactorKind::integers:
      if (p >= 1.0) return std::numeric_limits<double>::infinity();
      return (1.0 + p) / (1.0 - p);
    case FactorKind::free_group: {
      double denom = 1.0 - (2.0 * factor.rank() - 1.0) * p;
      if (denom <= 0.0) return std::numeric_limits<double>::infinity();
      return (1.0 + p) / denom;
    }
  }
  throw Error(errc::invalid_argument, "unknown factor kind");
}

/// Derivative of chi, evaluated strictly inside the convergence domain.
inline double chi_prime(const GroupFactor& factor, double p, int edge_cap = 20) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(errc::invalid_argument, "probability out of [0,1]");
  switch (factor.kind()) {
    case FactorKind::cyclic:
      return detail::cyclic_chi_polynomial(factor.order()).derivative()(p);
    case FactorKind::explicit_finite:
      return cluster_distribution(factor, edge_cap).mean_polynomial().derivative()(p);
    case FactorKind::integers:
      if (p >= 1.0) throw Error(errc::pole_at_point, "chi of Z diverges at p = 1");
      return 2.0 / ((1.0 - p) * (1.0 - p));
    case FactorKind::free_group: {
      double denom = 1.0 - (2.0 * factor.rank() - 1.0) * p;
      if (denom <= 0.0) throw Error(errc::pole_at_point, "chi of the free factor diverges here");
      return 2.0 * factor.rank() / (denom * denom);
    }
  }
  throw Error(errc::invalid_argument, "unknown factor kind");
}

}  // namespace freeperc
