#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace freeperc {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline int sign_of(const Rational& q) { return q.sign(); }

inline Rational rational_pow(const Rational& base, unsigned e) {
  Rational result(1);
  Rational b = base;
  while (e != 0) {
    if (e & 1u) result *= b;
    b *= b;
    e >>= 1u;
  }
  return result;
}

inline Rational rational_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace freeperc
