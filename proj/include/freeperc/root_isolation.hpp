#pragma once

#include <vector>

#include "errors.hpp"
#include "polynomial.hpp"

namespace freeperc {

/// One real root of a polynomial, certified by an exact bracket.
///
/// The square-free part of the polynomial changes sign across
/// [bracket_low, bracket_high] (an exact root may collapse the bracket to a
/// point) and the bracket contains exactly one distinct real root.
struct IsolatedRoot {
  Rational bracket_low;
  Rational bracket_high;
  double refined_value = 0.0;
  double tolerance = 0.0;
};

/// Sturm chain of a square-free polynomial: s0 = f, s1 = f',
/// s_{k+1} = -rem(s_{k-1}, s_k), remainders content-normalized.
inline std::vector<RationalPolynomial> sturm_chain(const RationalPolynomial& f) {
  std::vector<RationalPolynomial> chain;
  chain.push_back(f);
  RationalPolynomial d = f.derivative();
  if (d.is_zero()) return chain;
  chain.push_back(d);
  while (true) {
    const RationalPolynomial& a = chain[chain.size() - 2];
    const RationalPolynomial& b = chain.back();
    RationalPolynomial r = RationalPolynomial::divmod(a, b).second;
    if (r.is_zero()) break;
    chain.push_back(std::move(-r).content_normalized());
  }
  return chain;
}

inline int sturm_sign_variations(const std::vector<RationalPolynomial>& chain, const Rational& x) {
  int variations = 0;
  int last = 0;
  for (const auto& s : chain) {
    int sg = sign_of(s(x));
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++variations;
    last = sg;
  }
  return variations;
}

namespace detail {

/// Square-free part with any roots at 0 and 1 divided out, so the result is
/// nonzero at both interval ends.
inline RationalPolynomial squarefree_without_01(const RationalPolynomial& f) {
  RationalPolynomial g = f.square_free_part();
  if (g.degree() > 0 && g(Rational(0)) == 0) {
    g = RationalPolynomial::divmod(g, RationalPolynomial::variable()).first;
  }
  if (g.degree() > 0 && g(Rational(1)) == 0) {
    g = RationalPolynomial::divmod(g, RationalPolynomial{Rational(-1), Rational(1)}).first;
  }
  return g;
}

}  // namespace detail

/// Number of distinct real roots in the open interval (0,1).
inline int count_roots_open_01(const RationalPolynomial& f) {
  if (f.is_zero()) throw Error(errc::invalid_argument, "root count of the zero polynomial");
  RationalPolynomial g = detail::squarefree_without_01(f);
  if (g.degree() <= 0) return 0;
  auto chain = sturm_chain(g);
  return sturm_sign_variations(chain, Rational(0)) - sturm_sign_variations(chain, Rational(1));
}

namespace detail {

struct RootIsolator {
  const RationalPolynomial& g;  // square-free
  std::vector<RationalPolynomial> chain;
  std::vector<std::pair<Rational, Rational>> brackets;

  explicit RootIsolator(const RationalPolynomial& square_free) : g(square_free), chain(sturm_chain(square_free)) {}

  int count(const Rational& a, const Rational& b) const {
    return sturm_sign_variations(chain, a) - sturm_sign_variations(chain, b);
  }

  // Roots in (a, b], with g nonzero at both ends.
  void isolate(const Rational& a, const Rational& b, int roots) {
    if (roots == 0) return;
    if (roots == 1) {
      brackets.emplace_back(a, b);
      return;
    }
    Rational mid = (a + b) / 2;
    if (g(mid) != 0) {
      int left = count(a, mid);
      isolate(a, mid, left);
      isolate(mid, b, roots - left);
      return;
    }
    // Subdivision point hit a root: carve out a sign-changing bracket around it.
    Rational delta = (b - a) / 4;
    while (g(mid - delta) == 0 || g(mid + delta) == 0 || count(mid - delta, mid + delta) != 1) {
      delta /= 2;
    }
    isolate(a, mid - delta, count(a, mid - delta));
    brackets.emplace_back(mid - delta, mid + delta);
    isolate(mid + delta, b, count(mid + delta, b));
  }
};

}  // namespace detail

/// Isolate and refine every distinct real root of f in the open interval
/// (0,1). Root counts are certified by Sturm sign variations on the
/// square-free part; each bracket is refined to width <= tol by bisection.
inline std::vector<IsolatedRoot> isolate_roots_01(const RationalPolynomial& f, double tol = 1e-12) {
  if (f.is_zero()) throw Error(errc::invalid_argument, "cannot isolate roots of the zero polynomial");
  if (!(tol > 0)) throw Error(errc::invalid_argument, "tolerance must be positive");
  RationalPolynomial g = detail::squarefree_without_01(f);
  if (g.degree() <= 0) return {};

  detail::RootIsolator iso(g);
  iso.isolate(Rational(0), Rational(1), iso.count(Rational(0), Rational(1)));

  Rational rtol(tol);
  std::vector<IsolatedRoot> roots;
  roots.reserve(iso.brackets.size());
  for (auto& [a, b] : iso.brackets) {
    // g has opposite signs at the ends: a single simple root inside.
    int sa = sign_of(g(a));
    while (b - a > rtol) {
      Rational mid = (a + b) / 2;
      int sm = sign_of(g(mid));
      if (sm == 0) {
        // Exact root: collapse to a point bracket.
        a = mid;
        b = mid;
        break;
      }
      if (sm == sa) {
        a = mid;
      } else {
        b = mid;
      }
    }
    IsolatedRoot r;
    r.bracket_low = a;
    r.bracket_high = b;
    r.refined_value = to_double((a + b) / 2);
    r.tolerance = tol;
    roots.push_back(std::move(r));
  }
  return roots;
}

}  // namespace freeperc
