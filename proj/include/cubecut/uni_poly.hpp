#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubecut/rational.hpp"

namespace cubecut {

// Dense univariate polynomial over Q, coefficients in ascending order.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> ascending);

  // Highest power first, as polynomials are usually written.
  static UniPoly from_descending(std::initializer_list<long> coeffs);
  static UniPoly constant(const Rational& c);
  static UniPoly x();

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coefficients() const { return c_; }
  Rational coefficient(int i) const;
  const Rational& leading() const { return c_.back(); }

  Rational operator()(const Rational& at) const;
  int sign_at(const Rational& at) const { return sgn((*this)(at)); }
  double eval(double at) const;

  UniPoly derivative() const;
  UniPoly monic() const;
  UniPoly operator-() const;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const Rational& s, const UniPoly& a);
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

  std::string to_string(char var = 'x') const;

 private:
  void trim();
  std::vector<Rational> c_;
};

// Quotient and remainder. Throws DomainError on division by zero.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& num, const UniPoly& den);

// Monic gcd; zero only if both inputs are zero.
UniPoly gcd(const UniPoly& a, const UniPoly& b);

UniPoly squarefree_part(const UniPoly& p);

std::vector<UniPoly> sturm_sequence(const UniPoly& p);
int sign_variations(const std::vector<UniPoly>& seq, const Rational& at);

// Distinct real roots in the half-open interval (lo, hi].
int count_roots(const std::vector<UniPoly>& sturm, const Rational& lo, const Rational& hi);

struct IsolatingInterval {
  Rational lo;
  Rational hi;
  std::optional<Rational> exact;

  Rational midpoint() const { return exact ? *exact : Rational((lo + hi) / 2); }
  Rational width() const { return hi - lo; }
  double approx() const { return to_double(midpoint()); }
};

// Disjoint isolating intervals for the distinct real roots in the open
// interval (lo, hi), sorted ascending. Roots at lo or hi are excluded.
// Each returned interval satisfies lo < root < hi. Zero p is a DomainError.
std::vector<IsolatingInterval> isolate_roots(const UniPoly& p, const Rational& lo, const Rational& hi);

// Shrinks iv until its width is at most `width`. iv must isolate a single
// root of p.
IsolatingInterval refine(const UniPoly& p, IsolatingInterval iv, const Rational& width);

// The root in iv if it is rational, found exactly.
std::optional<Rational> rational_root(const UniPoly& p, const IsolatingInterval& iv);

// Orders the roots isolated by a (of pa) and b (of pb). Returns -1, 0 or 1;
// 0 means the roots are equal. Both intervals are refined as needed.
int compare_roots(const UniPoly& pa, IsolatingInterval& a, const UniPoly& pb, IsolatingInterval& b);

}  // namespace cubecut
