#include "cubecut/bivar_poly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <vector>

#include "cubecut/errors.hpp"

namespace cubecut {

BivarPoly::BivarPoly(Terms terms) : terms_(std::move(terms)) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it = it->second == 0 ? terms_.erase(it) : std::next(it);
  }
}

BivarPoly BivarPoly::constant(const Integer& c) { return monomial(c, 0, 0); }
BivarPoly BivarPoly::x() { return monomial(Integer(1), 1, 0); }
BivarPoly BivarPoly::y() { return monomial(Integer(1), 0, 1); }

BivarPoly BivarPoly::monomial(const Integer& c, int i, int j) {
  Terms t;
  if (c != 0) t[{i, j}] = c;
  return BivarPoly(std::move(t));
}

Integer BivarPoly::coefficient(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? Integer(0) : it->second;
}

int BivarPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
  return d;
}

int BivarPoly::degree_x() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.first);
  return d;
}

int BivarPoly::degree_y() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.second);
  return d;
}

namespace {

bool grlex_less(const BivarPoly::Exponent& a, const BivarPoly::Exponent& b) {
  int da = a.first + a.second;
  int db = b.first + b.second;
  if (da != db) return da < db;
  return a.first < b.first;
}

}  // namespace

BivarPoly::Exponent BivarPoly::leading_exponent() const {
  if (terms_.empty()) throw DomainError("leading term of zero polynomial");
  Exponent best = terms_.begin()->first;
  for (const auto& [e, c] : terms_) {
    if (grlex_less(best, e)) best = e;
  }
  return best;
}

Rational BivarPoly::eval(const Rational& at_x, const Rational& at_y) const {
  int dx = std::max(degree_x(), 0);
  int dy = std::max(degree_y(), 0);
  std::vector<Rational> px(dx + 1), py(dy + 1);
  px[0] = 1;
  py[0] = 1;
  for (int i = 1; i <= dx; ++i) px[i] = px[i - 1] * at_x;
  for (int j = 1; j <= dy; ++j) py[j] = py[j - 1] * at_y;
  Rational acc(0);
  for (const auto& [e, c] : terms_) acc += Rational(c) * px[e.first] * py[e.second];
  return acc;
}

double BivarPoly::eval(double at_x, double at_y) const {
  double acc = 0.0;
  for (const auto& [e, c] : terms_) acc += c.get_d() * std::pow(at_x, e.first) * std::pow(at_y, e.second);
  return acc;
}

UniPoly BivarPoly::at_y(const Rational& y_value) const {
  std::vector<Rational> c(std::max(degree_x(), 0) + 1);
  for (const auto& [e, k] : terms_) {
    Rational p(k);
    for (int j = 0; j < e.second; ++j) p *= y_value;
    c[e.first] += p;
  }
  return UniPoly(std::move(c));
}

UniPoly BivarPoly::at_x(const Rational& x_value) const {
  std::vector<Rational> c(std::max(degree_y(), 0) + 1);
  for (const auto& [e, k] : terms_) {
    Rational p(k);
    for (int i = 0; i < e.first; ++i) p *= x_value;
    c[e.second] += p;
  }
  return UniPoly(std::move(c));
}

UniPoly BivarPoly::on_diagonal() const {
  std::vector<Rational> c(std::max(total_degree(), 0) + 1);
  for (const auto& [e, k] : terms_) c[e.first + e.second] += Rational(k);
  return UniPoly(std::move(c));
}

BivarPoly BivarPoly::reflect_y() const {
  Terms t;
  for (const auto& [e, c] : terms_) t[e] = (e.second % 2 == 0) ? c : Integer(-c);
  return BivarPoly(std::move(t));
}

Integer BivarPoly::content() const {
  Integer g(0);
  for (const auto& [e, c] : terms_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

BivarPoly BivarPoly::primitive() const {
  if (is_zero()) return {};
  Integer g = content();
  if (terms_.at(leading_exponent()) < 0) g = -g;
  Terms t;
  for (const auto& [e, c] : terms_) t[e] = c / g;
  return BivarPoly(std::move(t));
}

BivarPoly BivarPoly::operator-() const {
  Terms t;
  for (const auto& [e, c] : terms_) t[e] = -c;
  return BivarPoly(std::move(t));
}

BivarPoly operator+(const BivarPoly& a, const BivarPoly& b) {
  BivarPoly::Terms t = a.terms_;
  for (const auto& [e, c] : b.terms_) t[e] += c;
  return BivarPoly(std::move(t));
}

BivarPoly operator-(const BivarPoly& a, const BivarPoly& b) { return a + (-b); }

BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
  BivarPoly::Terms t;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) t[{ea.first + eb.first, ea.second + eb.second}] += ca * cb;
  }
  return BivarPoly(std::move(t));
}

BivarPoly operator*(const Integer& s, const BivarPoly& a) {
  BivarPoly::Terms t;
  for (const auto& [e, c] : a.terms_) t[e] = s * c;
  return BivarPoly(std::move(t));
}

std::string BivarPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<Exponent> order;
  for (const auto& [e, c] : terms_) order.push_back(e);
  std::sort(order.begin(), order.end(), [](const Exponent& a, const Exponent& b) { return grlex_less(b, a); });
  std::ostringstream out;
  bool first = true;
  for (const auto& e : order) {
    const Integer& c = terms_.at(e);
    Integer mag = abs(c);
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool bare = e.first == 0 && e.second == 0;
    if (mag != 1 || bare) {
      out << mag.get_str();
      if (!bare) out << '*';
    }
    if (e.first > 0) {
      out << 'x';
      if (e.first > 1) out << '^' << e.first;
      if (e.second > 0) out << '*';
    }
    if (e.second > 0) {
      out << 'y';
      if (e.second > 1) out << '^' << e.second;
    }
  }
  return out.str();
}

// Parser -------------------------------------------------------------------

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  BivarPoly parse() {
    BivarPoly p = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  BivarPoly expr() {
    BivarPoly acc = term();
    while (true) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  BivarPoly term() {
    BivarPoly acc = unary();
    while (accept('*')) acc = acc * unary();
    return acc;
  }

  BivarPoly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  BivarPoly power() {
    BivarPoly base = atom();
    if (!accept('^')) return base;
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected exponent");
    int n = std::stoi(std::string(s_.substr(start, pos_ - start)));
    BivarPoly out = BivarPoly::constant(Integer(1));
    for (int i = 0; i < n; ++i) out = out * base;
    return out;
  }

  BivarPoly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      BivarPoly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'x') {
      ++pos_;
      return BivarPoly::x();
    }
    if (c == 'y') {
      ++pos_;
      return BivarPoly::y();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return BivarPoly::constant(Integer(std::string(s_.substr(start, pos_ - start)), 10));
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

BivarPoly parse_bivar(std::string_view text) { return Parser(text).parse(); }

// Division -----------------------------------------------------------------

namespace {

using QTerms = std::map<BivarPoly::Exponent, Rational>;

std::optional<QTerms> divide_rational(const BivarPoly& n, const BivarPoly& d) {
  if (d.is_zero()) throw DomainError("division by zero polynomial");
  QTerms r;
  for (const auto& [e, c] : n.terms()) r[e] = Rational(c);
  QTerms q;
  auto lt_d = d.leading_exponent();
  Rational lc_d(d.coefficient(lt_d.first, lt_d.second));
  while (!r.empty()) {
    auto lt = r.begin()->first;
    for (const auto& [e, c] : r) {
      if (grlex_less(lt, e)) lt = e;
    }
    if (lt.first < lt_d.first || lt.second < lt_d.second) return std::nullopt;
    BivarPoly::Exponent shift{lt.first - lt_d.first, lt.second - lt_d.second};
    Rational f = r[lt] / lc_d;
    q[shift] += f;
    for (const auto& [e, c] : d.terms()) {
      BivarPoly::Exponent k{e.first + shift.first, e.second + shift.second};
      Rational& slot = r[k];
      slot -= f * Rational(c);
      if (slot == 0) r.erase(k);
    }
  }
  return q;
}

}  // namespace

std::optional<BivarPoly> divide_exact(const BivarPoly& n, const BivarPoly& d) {
  auto q = divide_rational(n, d);
  if (!q) return std::nullopt;
  BivarPoly::Terms t;
  for (const auto& [e, c] : *q) {
    if (c.get_den() != 1) return std::nullopt;
    t[e] = c.get_num();
  }
  return BivarPoly(std::move(t));
}

std::optional<BivarPoly> divide_up_to_scalar(const BivarPoly& n, const BivarPoly& d) {
  auto q = divide_rational(n, d);
  if (!q) return std::nullopt;
  Integer den_lcm(1);
  for (const auto& [e, c] : *q) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  BivarPoly::Terms t;
  for (const auto& [e, c] : *q) t[e] = Integer(c * den_lcm);
  return BivarPoly(std::move(t)).primitive();
}

bool equal_up_to_scalar(const BivarPoly& a, const BivarPoly& b) { return a.primitive() == b.primitive(); }

// GCD ----------------------------------------------------------------------
//
// Z[x, y] is treated as Z[x][y]: a vector over y-degree of dense Z[x]
// polynomials. Univariate gcds go through Q[x] and Gauss's lemma; the outer
// loop is a primitive pseudo-remainder sequence.

namespace {

using ZX = std::vector<Integer>;
using ZXY = std::vector<ZX>;

void trim(ZX& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

void trim(ZXY& a) {
  while (!a.empty() && a.back().empty()) a.pop_back();
}

ZX zx_sub(const ZX& a, const ZX& b) {
  ZX c(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
  trim(c);
  return c;
}

ZX zx_mul(const ZX& a, const ZX& b) {
  if (a.empty() || b.empty()) return {};
  ZX c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  trim(c);
  return c;
}

Integer zx_content(const ZX& a) {
  Integer g(0);
  for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

UniPoly to_q(const ZX& a) {
  std::vector<Rational> c;
  for (const auto& v : a) c.emplace_back(v);
  return UniPoly(std::move(c));
}

// Integer primitive multiple of a Q[x] polynomial with positive lead.
ZX primitive_of(const UniPoly& p) {
  Integer den_lcm(1);
  for (const auto& c : p.coefficients()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  ZX out;
  for (const auto& c : p.coefficients()) out.emplace_back(c * den_lcm);
  Integer g = zx_content(out);
  if (!out.empty() && out.back() < 0) g = -g;
  if (g != 0) {
    for (auto& v : out) v /= g;
  }
  return out;
}

ZX zx_gcd(const ZX& a, const ZX& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  Integer c;
  mpz_gcd(c.get_mpz_t(), zx_content(a).get_mpz_t(), zx_content(b).get_mpz_t());
  ZX g = primitive_of(gcd(to_q(a), to_q(b)));
  for (auto& v : g) v *= c;
  return g;
}

ZX zx_divexact(const ZX& a, const ZX& b) {
  auto [q, r] = divmod(to_q(a), to_q(b));
  if (!r.is_zero()) throw InvariantViolation("inexact division in Z[x]");
  ZX out;
  for (const auto& c : q.coefficients()) {
    if (c.get_den() != 1) throw InvariantViolation("non-integral quotient in Z[x]");
    out.push_back(c.get_num());
  }
  return out;
}

ZXY to_zxy(const BivarPoly& p) {
  ZXY out(std::max(p.degree_y(), -1) + 1);
  for (auto& row : out) row.assign(std::max(p.degree_x(), 0) + 1, Integer(0));
  for (const auto& [e, c] : p.terms()) out[e.second][e.first] = c;
  for (auto& row : out) trim(row);
  trim(out);
  return out;
}

BivarPoly from_zxy(const ZXY& a) {
  BivarPoly::Terms t;
  for (std::size_t j = 0; j < a.size(); ++j) {
    for (std::size_t i = 0; i < a[j].size(); ++i) {
      if (a[j][i] != 0) t[{static_cast<int>(i), static_cast<int>(j)}] = a[j][i];
    }
  }
  return BivarPoly(std::move(t));
}

ZX content_y(const ZXY& a) {
  ZX g;
  for (const auto& c : a) g = zx_gcd(g, c);
  return g;
}

ZXY divide_coeffs(const ZXY& a, const ZX& c) {
  ZXY out;
  for (const auto& v : a) out.push_back(v.empty() ? ZX{} : zx_divexact(v, c));
  return out;
}

ZXY prem(ZXY r, const ZXY& b) {
  const ZX& lb = b.back();
  while (!r.empty() && r.size() >= b.size()) {
    ZX lr = r.back();
    std::size_t shift = r.size() - b.size();
    for (auto& c : r) c = zx_mul(c, lb);
    for (std::size_t j = 0; j < b.size(); ++j) r[j + shift] = zx_sub(r[j + shift], zx_mul(lr, b[j]));
    trim(r);
  }
  return r;
}

}  // namespace

BivarPoly gcd(const BivarPoly& a, const BivarPoly& b) {
  if (a.is_zero()) return b.primitive();
  if (b.is_zero()) return a.primitive();
  ZXY A = to_zxy(a);
  ZXY B = to_zxy(b);
  ZX ca = content_y(A);
  ZX cb = content_y(B);
  ZX c = zx_gcd(ca, cb);
  A = divide_coeffs(A, ca);
  B = divide_coeffs(B, cb);
  if (A.size() < B.size()) std::swap(A, B);
  while (!B.empty()) {
    ZXY r = prem(A, B);
    A = std::move(B);
    B = r.empty() ? ZXY{} : divide_coeffs(r, content_y(r));
  }
  A = divide_coeffs(A, content_y(A));
  for (auto& v : A) v = zx_mul(v, c);
  return from_zxy(A).primitive();
}

// Resultant ----------------------------------------------------------------

namespace {

Integer bareiss_det(std::vector<std::vector<Integer>> m) {
  std::size_t n = m.size();
  if (n == 0) return Integer(1);
  Integer prev(1);
  int sign_flip = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return Integer(0);
      std::swap(m[k], m[swap_row]);
      sign_flip = -sign_flip;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign_flip * m[n - 1][n - 1];
}

// Sylvester determinant with formal degrees m and n (leading zeros allowed).
Integer sylvester(const std::vector<Integer>& p, int m, const std::vector<Integer>& q, int n) {
  int size = m + n;
  std::vector<std::vector<Integer>> s(size, std::vector<Integer>(size, Integer(0)));
  for (int r = 0; r < n; ++r) {
    for (int i = 0; i <= m; ++i) s[r][r + i] = p[m - i];
  }
  for (int r = 0; r < m; ++r) {
    for (int i = 0; i <= n; ++i) s[n + r][r + i] = q[n - i];
  }
  return bareiss_det(std::move(s));
}

std::vector<Integer> coeffs_at(const BivarPoly& p, int degree, long y_value) {
  std::vector<Integer> c(degree + 1, Integer(0));
  for (const auto& [e, k] : p.terms()) {
    Integer yp;
    mpz_ui_pow_ui(yp.get_mpz_t(), static_cast<unsigned long>(std::labs(y_value)), e.second);
    if (y_value < 0 && e.second % 2 == 1) yp = -yp;
    c[e.first] += k * yp;
  }
  return c;
}

}  // namespace

UniPoly resultant_x(const BivarPoly& p, const BivarPoly& q) {
  if (p.is_zero() || q.is_zero()) return {};
  int m = p.degree_x();
  int n = q.degree_x();
  int bound = m * std::max(q.degree_y(), 0) + n * std::max(p.degree_y(), 0);
  std::vector<Rational> xs, vals;
  for (long t = 0; t <= bound; ++t) {
    xs.emplace_back(t);
    vals.emplace_back(sylvester(coeffs_at(p, m, t), m, coeffs_at(q, n, t), n));
  }
  // Newton divided differences.
  std::size_t k = xs.size();
  std::vector<Rational> coef = vals;
  for (std::size_t j = 1; j < k; ++j) {
    for (std::size_t i = k - 1; i >= j; --i) {
      coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j]);
      if (i == j) break;
    }
  }
  UniPoly out = UniPoly::constant(coef[k - 1]);
  for (std::size_t i = k - 1; i-- > 0;) {
    out = out * UniPoly(std::vector<Rational>{Rational(-xs[i]), Rational(1)}) + UniPoly::constant(coef[i]);
  }
  return out;
}

}  // namespace cubecut
