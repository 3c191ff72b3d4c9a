#include "cubecut/uni_poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cubecut/errors.hpp"

namespace cubecut {

UniPoly::UniPoly(std::vector<Rational> ascending) : c_(std::move(ascending)) { trim(); }

UniPoly UniPoly::from_descending(std::initializer_list<long> coeffs) {
  std::vector<Rational> c;
  c.reserve(coeffs.size());
  for (long v : coeffs) c.emplace_back(v);
  std::reverse(c.begin(), c.end());
  return UniPoly(std::move(c));
}

UniPoly UniPoly::constant(const Rational& c) { return UniPoly(std::vector<Rational>{c}); }

UniPoly UniPoly::x() { return UniPoly(std::vector<Rational>{Rational(0), Rational(1)}); }

void UniPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
  for (auto& v : c_) v.canonicalize();
}

Rational UniPoly::coefficient(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return Rational(0);
  return c_[i];
}

Rational UniPoly::operator()(const Rational& at) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + *it;
  return acc;
}

double UniPoly::eval(double at) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + it->get_d();
  return acc;
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return UniPoly(std::move(d));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return {};
  Rational inv = 1 / leading();
  return inv * *this;
}

UniPoly UniPoly::operator-() const {
  UniPoly out = *this;
  for (auto& v : out.c_) v = -v;
  return out;
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return UniPoly(std::move(c));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return UniPoly(std::move(c));
}

UniPoly operator*(const Rational& s, const UniPoly& a) {
  std::vector<Rational> c = a.c_;
  for (auto& v : c) v *= s;
  return UniPoly(std::move(c));
}

std::string UniPoly::to_string(char var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = c_[i];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (mag != 1 || i == 0) {
      out << cubecut::to_string(mag);
      if (i > 0) out << '*';
    }
    if (i >= 1) out << var;
    if (i >= 2) out << '^' << i;
  }
  return out.str();
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& num, const UniPoly& den) {
  if (den.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Rational> r = num.coefficients();
  int dn = den.degree();
  if (num.degree() < dn) return {UniPoly(), num};
  std::vector<Rational> q(num.degree() - dn + 1);
  const Rational& lead = den.leading();
  for (int i = num.degree(); i >= dn; --i) {
    if (r[i] == 0) continue;
    Rational f = r[i] / lead;
    q[i - dn] = f;
    for (int j = 0; j <= dn; ++j) r[i - dn + j] -= f * den.coefficients()[j];
  }
  r.resize(dn);
  return {UniPoly(std::move(q)), UniPoly(std::move(r))};
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a;
  UniPoly y = b;
  while (!y.is_zero()) {
    UniPoly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

UniPoly squarefree_part(const UniPoly& p) {
  if (p.degree() <= 0) return p;
  UniPoly g = gcd(p, p.derivative());
  return divmod(p, g).first;
}

std::vector<UniPoly> sturm_sequence(const UniPoly& p) {
  std::vector<UniPoly> seq;
  if (p.is_zero()) return seq;
  seq.push_back(p);
  UniPoly d = p.derivative();
  if (d.is_zero()) return seq;
  seq.push_back(d);
  while (true) {
    UniPoly r = divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  return seq;
}

int sign_variations(const std::vector<UniPoly>& seq, const Rational& at) {
  int changes = 0;
  int prev = 0;
  for (const auto& q : seq) {
    int s = q.sign_at(at);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

int count_roots(const std::vector<UniPoly>& sturm, const Rational& lo, const Rational& hi) {
  return sign_variations(sturm, lo) - sign_variations(sturm, hi);
}

namespace {

UniPoly deflate_at(const UniPoly& q, const Rational& r) {
  UniPoly lin(std::vector<Rational>{Rational(-r), Rational(1)});
  return divmod(q, lin).first;
}

struct Isolator {
  const UniPoly& q;
  std::vector<UniPoly> sturm;
  std::vector<IsolatingInterval> out;

  // Roots in (a, b); neither a nor b is a root.
  void run(const Rational& a, const Rational& b) {
    int n = count_roots(sturm, a, b);
    if (n == 0) return;
    if (n == 1) {
      out.push_back({a, b, std::nullopt});
      return;
    }
    Rational m = (a + b) / 2;
    if (q.sign_at(m) != 0) {
      run(a, m);
      run(m, b);
      return;
    }
    Rational eps = (b - a) / 4;
    while (q.sign_at(m - eps) == 0 || q.sign_at(m + eps) == 0 || count_roots(sturm, m - eps, m + eps) != 1) {
      eps /= 2;
    }
    run(a, m - eps);
    out.push_back({m - eps, m + eps, m});
    run(m + eps, b);
  }
};

}  // namespace

std::vector<IsolatingInterval> isolate_roots(const UniPoly& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) throw DomainError("isolate_roots on the zero polynomial");
  if (!(lo < hi)) return {};
  UniPoly q = squarefree_part(p);
  if (q.sign_at(lo) == 0) q = deflate_at(q, lo);
  if (q.sign_at(hi) == 0) q = deflate_at(q, hi);
  if (q.degree() <= 0) return {};
  Isolator iso{q, sturm_sequence(q), {}};
  iso.run(lo, hi);
  return iso.out;
}

IsolatingInterval refine(const UniPoly& p, IsolatingInterval iv, const Rational& width) {
  if (iv.exact) {
    if (iv.width() > width) {
      Rational half = width / 2;
      iv.lo = std::max(iv.lo, Rational(*iv.exact - half));
      iv.hi = std::min(iv.hi, Rational(*iv.exact + half));
    }
    return iv;
  }
  UniPoly q = squarefree_part(p);
  int s_lo = q.sign_at(iv.lo);
  if (s_lo == 0 || q.sign_at(iv.hi) == 0) throw DomainError("refine: interval endpoint is a root");
  while (iv.width() > width) {
    Rational m = (iv.lo + iv.hi) / 2;
    int s = q.sign_at(m);
    if (s == 0) {
      iv.exact = m;
      return refine(p, iv, width);
    }
    if (s == s_lo) {
      iv.lo = m;
    } else {
      iv.hi = m;
    }
  }
  return iv;
}

std::optional<Rational> rational_root(const UniPoly& p, const IsolatingInterval& iv) {
  if (iv.exact) return iv.exact;
  // Clear denominators; a rational root's denominator divides the leading
  // coefficient of the integer polynomial.
  Integer den_lcm(1);
  for (const auto& c : p.coefficients()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  Integer lead = abs(Integer(p.leading() * den_lcm));
  // Two fractions with denominators at most lead are at least 1/lead^2
  // apart, so once the interval is narrower only the simplest one can be a root.
  IsolatingInterval r = refine(p, iv, Rational(Integer(1), Integer(lead * lead + 1)));
  if (r.exact) return r.exact;
Rational cand = simplest_between(r.lo, r.hi);
  if (p(cand) == 0) return cand;
  return std::nullopt;
}

int compare_roots(const UniPoly& pa, IsolatingInterval& a, const UniPoly& pb, IsolatingInterval& b) {
  if (a.exact && b.exact) return *a.exact < *b.exact ? -1 : (*a.exact == *b.exact ? 0 : 1);
  if (a.exact && *a.exact > b.lo && *a.exact < b.hi && pb(*a.exact) == 0) return 0;
  if (b.exact && *b.exact > a.lo && *b.exact < a.hi && pa(*b.exact) == 0) return 0;
  UniPoly g = gcd(pa, pb);
  while (true) {
    if (a.hi <= b.lo) return -1;
    if (b.hi <= a.lo) return 1;
    if (g.degree() >= 1) {
      Rational lo = std::max(a.lo, b.lo);
      Rational hi = std::min(a.hi, b.hi);
      if (!isolate_roots(g, lo, hi).empty()) return 0;
    }
    a = refine(pa, a, a.width() / 2);
    b = refine(pb, b, b.width() / 2);
    if (a.exact && b.exact) return *a.exact < *b.exact ? -1 : (*a.exact == *b.exact ? 0 : 1);
  }
}

}  // namespace cubecut
