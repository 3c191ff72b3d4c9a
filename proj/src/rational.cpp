#include "cubecut/rational.hpp"

#include <cctype>

#include "cubecut/errors.hpp"

namespace cubecut {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw ParseError("not a rational number: '" + std::string(whole) + "'");
  }
  Integer z(std::string(s), 10);
  return negative ? Integer(-z) : z;
}

// Simplest rational in (lo, hi), or in (lo, infinity) when hi is null.
Rational simplest_nonnegative(const Rational& lo, const Rational* hi) {
  Integer fl = floor(lo);
  Rational next(fl + 1);
  if (hi == nullptr || next < *hi) return next;
  Rational base(fl);
  Rational inv_hi = 1 / (*hi - base);
  Rational r;
  if (lo == base) {
    r = simplest_nonnegative(inv_hi, nullptr);
  } else {
    Rational inv_lo = 1 / (lo - base);
    r = simplest_nonnegative(inv_hi, &inv_lo);
  }
  Rational out = base + 1 / r;
  out.canonicalize();
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw ParseError("empty rational");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(s.substr(0, slash), text);
    std::string_view den_text = s.substr(slash + 1);
    if (!all_digits(den_text)) throw ParseError("bad denominator in '" + std::string(text) + "'");
    Integer den(std::string(den_text), 10);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    bool negative = !int_part.empty() && int_part[0] == '-';
    if (!int_part.empty() && (int_part[0] == '-' || int_part[0] == '+')) int_part.remove_prefix(1);
    if (int_part.empty() && frac.empty()) throw ParseError("not a rational number: '" + std::string(text) + "'");
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac.empty() && !all_digits(frac))) {
      throw ParseError("not a rational number: '" + std::string(text) + "'");
    }
    std::string digits = std::string(int_part) + std::string(frac);
    Integer num(digits.empty() ? std::string("0") : digits, 10);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    Rational r(negative ? Integer(-num) : num, den);
    r.canonicalize();
    return r;
  }

  return Rational(parse_integer(s, text));
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

double to_double(const Rational& r) { return r.get_d(); }

Integer floor(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw DomainError("simplest_between needs lo < hi");
  if (lo < 0 && hi > 0) return Rational(0);
  if (hi <= 0) {
    Rational neg_lo = -hi;
    Rational neg_hi = -lo;
    return -simplest_nonnegative(neg_lo, &neg_hi);
  }
  return simplest_nonnegative(lo, &hi);
}

}  // namespace cubecut
