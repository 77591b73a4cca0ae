#pragma once

#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace freeperc {

/// Univariate polynomial over the rationals, all arithmetic exact.
///
/// Coefficients are stored by ascending power; the highest stored coefficient
/// is nonzero unless the polynomial is identically zero (empty vector).
class RationalPolynomial {
public:
  RationalPolynomial() = default;

  RationalPolynomial(std::initializer_list<Rational> ascending_coefficients)
      : c_(ascending_coefficients) {
    trim();
  }

  static RationalPolynomial zero() { return RationalPolynomial(); }

  static RationalPolynomial constant(Rational value) {
    RationalPolynomial f;
    f.c_.push_back(std::move(value));
    f.trim();
    return f;
  }

  static RationalPolynomial one() { return constant(Rational(1)); }

  /// The monomial p.
  static RationalPolynomial variable() { return monomial(Rational(1), 1); }

  static RationalPolynomial monomial(Rational coefficient, std::size_t power) {
    RationalPolynomial f;
    if (coefficient != 0) {
      f.c_.assign(power + 1, Rational(0));
      f.c_[power] = std::move(coefficient);
    }
    return f;
  }

  static RationalPolynomial from_coefficients(std::vector<Rational> ascending) {
    RationalPolynomial f;
    f.c_ = std::move(ascending);
    f.trim();
    return f;
  }

  bool is_zero() const { return c_.empty(); }

  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }

  const std::vector<Rational>& coefficients() const { return c_; }

  Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }

  const Rational& leading_coefficient() const {
    if (c_.empty()) throw Error(errc::invalid_argument, "zero polynomial has no leading coefficient");
    return c_.back();
  }

  friend RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b) {
    RationalPolynomial r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r.c_[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i] += b.c_[i];
    r.trim();
    return r;
  }

  friend RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b) {
    RationalPolynomial r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r.c_[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i] -= b.c_[i];
    r.trim();
    return r;
  }

  RationalPolynomial operator-() const {
    RationalPolynomial r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }

  friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return RationalPolynomial();
    RationalPolynomial r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
  }

  friend RationalPolynomial operator*(const Rational& s, const RationalPolynomial& a) {
    if (s == 0) return RationalPolynomial();
    RationalPolynomial r = a;
    for (auto& c : r.c_) c *= s;
    return r;
  }

  friend RationalPolynomial operator*(const RationalPolynomial& a, const Rational& s) { return s * a; }

  RationalPolynomial& operator+=(const RationalPolynomial& b) { return *this = *this + b; }
  RationalPolynomial& operator-=(const RationalPolynomial& b) { return *this = *this - b; }
  RationalPolynomial& operator*=(const RationalPolynomial& b) { return *this = *this * b; }

  friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const RationalPolynomial& a, const RationalPolynomial& b) { return !(a == b); }

  RationalPolynomial derivative() const {
    RationalPolynomial r;
    if (c_.size() <= 1) return r;
    r.c_.resize(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) r.c_[k - 1] = Rational(k) * c_[k];
    r.trim();
    return r;
  }

  Rational operator()(const Rational& x) const {
    Rational acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  double operator()(double x) const {
    double acc = 0.0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + to_double(c_[i]);
    return acc;
  }

  std::vector<double> coefficients_as_double() const {
    std::vector<double> d(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) d[i] = to_double(c_[i]);
    return d;
  }

  /// Quotient and remainder of exact division, deg(rem) < deg(divisor).
  static std::pair<RationalPolynomial, RationalPolynomial> divmod(const RationalPolynomial& a,
                                                                  const RationalPolynomial& b) {
    if (b.is_zero()) throw Error(errc::invalid_argument, "polynomial division by zero");
    RationalPolynomial q, r = a;
    if (a.degree() < b.degree()) return {q, r};
    q.c_.assign(a.c_.size() - b.c_.size() + 1, Rational(0));
    const Rational& lead = b.c_.back();
    while (!r.is_zero() && r.degree() >= b.degree()) {
      std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
      Rational factor = r.c_.back() / lead;
      q.c_[shift] = factor;
      for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[shift + i] -= factor * b.c_[i];
      r.trim();
    }
    q.trim();
    return {q, r};
  }

  /// Monic greatest common divisor.
  static RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b) {
    while (!b.is_zero()) {
      RationalPolynomial r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r).content_normalized();
    }
    if (a.is_zero()) return a;
    return (Rational(1) / a.leading_coefficient()) * a;
  }

  /// Same roots, all simple: f / gcd(f, f').
  RationalPolynomial square_free_part() const {
    if (is_zero() || degree() == 0) return *this;
    RationalPolynomial g = gcd(*this, derivative());
    if (g.degree() == 0) return *this;
    return divmod(*this, g).first;
  }

  /// Positive rational rescaling to integer coefficients with content 1 and
  /// positive leading coefficient.
  RationalPolynomial integer_normalized() const {
    if (is_zero()) return *this;
    Int den_lcm = 1;
    for (const auto& c : c_) {
      Int d = denominator(c);
      den_lcm = boost::multiprecision::lcm(den_lcm, d);
    }
    Int num_gcd = 0;
    for (const auto& c : c_) {
      Int n = numerator(c) * (den_lcm / denominator(c));
      num_gcd = boost::multiprecision::gcd(num_gcd, n);
    }
    Rational scale(den_lcm, num_gcd == 0 ? Int(1) : num_gcd);
    RationalPolynomial r = scale * (*this);
    if (r.leading_coefficient() < 0) r = -r;
    return r;
  }

  /// Positive rescaling so integer numerators with content 1; keeps sign.
  RationalPolynomial content_normalized() && {
    if (is_zero()) return std::move(*this);
    Int den_lcm = 1;
    for (const auto& c : c_) den_lcm = boost::multiprecision::lcm(den_lcm, Int(denominator(c)));
    Int num_gcd = 0;
    for (const auto& c : c_) num_gcd = boost::multiprecision::gcd(num_gcd, Int(numerator(c) * (den_lcm / denominator(c))));
    Rational scale(den_lcm, num_gcd == 0 ? Int(1) : num_gcd);
    for (auto& c : c_) c *= scale;
    return std::move(*this);
  }

  /// Coefficients of the integer-normalized form, ascending powers.
  std::vector<Int> integer_coefficients() const {
    RationalPolynomial n = integer_normalized();
    std::vector<Int> out(n.c_.size());
    for (std::size_t i = 0; i < n.c_.size(); ++i) out[i] = numerator(n.c_[i]);
    return out;
  }

  /// Rendering like "2p^5-6p^4+2p^3+4p^2-1", highest power first.
  std::string to_string(std::string_view var = "p") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
      const Rational& c = c_[i];
      if (c == 0) continue;
      Rational a = rational_abs(c);
      if (first) {
        if (c < 0) os << "-";
        first = false;
      } else {
        os << (c < 0 ? "-" : "+");
      }
      if (i == 0 || a != 1) os << a;
      if (i > 0) {
        os << var;
        if (i > 1) os << "^" << i;
      }
    }
    return os.str();
  }

private:
  std::vector<Rational> c_;

  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
};

}  // namespace freeperc
