#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "cubecut/rational.hpp"
#include "cubecut/uni_poly.hpp"

namespace cubecut {

// Sparse polynomial in x and y with integer coefficients. Terms are keyed
// by (deg_x, deg_y); zero coefficients are never stored.
class BivarPoly {
 public:
  using Exponent = std::pair<int, int>;
  using Terms = std::map<Exponent, Integer>;

  BivarPoly() = default;
  explicit BivarPoly(Terms terms);

  static BivarPoly constant(const Integer& c);
  static BivarPoly x();
  static BivarPoly y();
  static BivarPoly monomial(const Integer& c, int i, int j);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Integer coefficient(int i, int j) const;
  int total_degree() const;
  int degree_x() const;
  int degree_y() const;

  // Leading term in graded lexicographic order with x > y.
  Exponent leading_exponent() const;

  Rational eval(const Rational& at_x, const Rational& at_y) const;
  double eval(double at_x, double at_y) const;
  UniPoly at_y(const Rational& y_value) const;  // polynomial in x
  UniPoly at_x(const Rational& x_value) const;  // polynomial in y
  UniPoly on_diagonal() const;                  // y := x
  BivarPoly reflect_y() const;                  // y := -y

  Integer content() const;
  // Divided by its content with a positive leading grlex coefficient.
  BivarPoly primitive() const;

  BivarPoly operator-() const;
  friend BivarPoly operator+(const BivarPoly& a, const BivarPoly& b);
  friend BivarPoly operator-(const BivarPoly& a, const BivarPoly& b);
  friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b);
  friend BivarPoly operator*(const Integer& s, const BivarPoly& a);
  friend bool operator==(const BivarPoly& a, const BivarPoly& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  Terms terms_;
};

// Parses expressions over x, y and integers with + - * ^ and parentheses,
// e.g. "x^3 - 4*x^2 + (y^2 + 8*y - 80)*x".
BivarPoly parse_bivar(std::string_view text);

// q with n = d * q over the integers, if such q exists.
std::optional<BivarPoly> divide_exact(const BivarPoly& n, const BivarPoly& d);

// Primitive q with n = c * d * q for some nonzero rational c.
std::optional<BivarPoly> divide_up_to_scalar(const BivarPoly& n, const BivarPoly& d);

bool equal_up_to_scalar(const BivarPoly& a, const BivarPoly& b);

// Greatest common divisor in Z[x, y] up to an integer factor, normalized
// as primitive().
BivarPoly gcd(const BivarPoly& a, const BivarPoly& b);

// Resultant with respect to x, a polynomial in y. Computed by evaluating at
// enough integer ordinates and interpolating.
UniPoly resultant_x(const BivarPoly& p, const BivarPoly& q);

}  // namespace cubecut
