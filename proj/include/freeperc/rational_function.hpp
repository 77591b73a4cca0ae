#pragma once

#include <utility>

#include "errors.hpp"
#include "polynomial.hpp"

namespace freeperc {

/// Ratio of two rational polynomials kept in reduced form (gcd of numerator
/// and denominator is a unit) with monic denominator.
class RationalFunction {
public:
  RationalFunction() : num_(), den_(RationalPolynomial::one()) {}

  RationalFunction(RationalPolynomial numerator, RationalPolynomial denominator = RationalPolynomial::one())
      : num_(std::move(numerator)), den_(std::move(denominator)) {
    if (den_.is_zero()) throw Error(errc::invalid_argument, "rational function with zero denominator");
    reduce();
  }

  static RationalFunction from_polynomial(RationalPolynomial f) { return RationalFunction(std::move(f)); }

  static RationalFunction constant(Rational value) {
    return RationalFunction(RationalPolynomial::constant(std::move(value)));
  }

  const RationalPolynomial& numerator() const { return num_; }
  const RationalPolynomial& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  /// Numerator scaled by the constant denominator; requires is_polynomial().
  RationalPolynomial as_polynomial() const {
    if (!is_polynomial()) throw Error(errc::invalid_argument, "rational function is not a polynomial");
    return (Rational(1) / den_.coeff(0)) * num_;
  }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  RationalFunction operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw Error(errc::invalid_argument, "rational function division by zero");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
  }

  RationalFunction& operator+=(const RationalFunction& b) { return *this = *this + b; }
  RationalFunction& operator-=(const RationalFunction& b) { return *this = *this - b; }
  RationalFunction& operator*=(const RationalFunction& b) { return *this = *this * b; }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

  RationalFunction derivative() const {
    return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  /// Exact evaluation; throws pole_at_point when the denominator vanishes.
  Rational operator()(const Rational& x) const {
    Rational d = den_(x);
    if (d == 0) throw Error(errc::pole_at_point, "rational function pole at evaluation point");
    return num_(x) / d;
  }

  double operator()(double x) const {
    double d = den_(x);
    if (d == 0.0) throw Error(errc::pole_at_point, "rational function pole at evaluation point");
    return num_(x) / d;
  }

private:
  RationalPolynomial num_;
  RationalPolynomial den_;

  void reduce() {
    if (num_.is_zero()) {
      den_ = RationalPolynomial::one();
      return;
    }
    RationalPolynomial g = RationalPolynomial::gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = RationalPolynomial::divmod(num_, g).first;
      den_ = RationalPolynomial::divmod(den_, g).first;
    }
    Rational lead = den_.leading_coefficient();
    if (lead != 1) {
      Rational inv = Rational(1) / lead;
      num_ = inv * num_;
      den_ = inv * den_;
    }
  }
};

}  // namespace freeperc
