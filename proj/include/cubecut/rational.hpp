#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace cubecut {

using Integer = mpz_class;
using Rational = mpq_class;

// n/d in lowest terms. The two-argument mpq_class constructor does not
// canonicalize, so fractions are built through this.
inline Rational ratio(const Integer& n, const Integer& d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

// Accepts "p", "p/q" and finite decimals such as "-0.705".
Rational parse_rational(std::string_view text);

std::string to_string(const Integer& z);
std::string to_string(const Rational& r);

double to_double(const Rational& r);

inline int sign(const Rational& r) { return sgn(r); }

Integer floor(const Rational& r);

// Smallest-denominator rational strictly inside (lo, hi). Requires lo < hi.
Rational simplest_between(const Rational& lo, const Rational& hi);

}  // namespace cubecut
