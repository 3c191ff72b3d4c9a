#include "cubecut/unfolding.hpp"

#include "cubecut/errors.hpp"

namespace cubecut {

PlanePoint operator-(const PlanePoint& a, const PlanePoint& b) { return {a.v - b.v, a.w - b.w}; }
PlanePoint operator+(const PlanePoint& a, const PlanePoint& b) { return {a.v + b.v, a.w + b.w}; }
PlanePoint operator*(const Rational& s, const PlanePoint& a) { return {s * a.v, s * a.w}; }
Rational dot(const PlanePoint& a, const PlanePoint& b) { return a.v * b.v + a.w * b.w; }
Rational cross(const PlanePoint& a, const PlanePoint& b) { return a.v * b.w - a.w * b.v; }
Rational norm2(const PlanePoint& a) { return dot(a, a); }

bool in_face(const FacePoint& p) { return p.x >= 0 && p.x <= 8 && abs(p.y) <= 4; }

bool in_q1(const FacePoint& p) { return p.x >= 0 && p.x <= 4 && abs(p.y) <= 4 - p.x; }

bool is_face_corner(const FacePoint& p) { return (p.x == 0 || p.x == 8) && abs(p.y) == 4; }

FacePoint rot_cw(const FacePoint& p) { return {4 + p.y, 4 - p.x}; }

FacePoint rot_ccw(const FacePoint& p) { return {4 - p.y, p.x - 4}; }

FacePoint rotate(const FacePoint& p, int quarter_turns_cw) {
  FacePoint out = p;
  int n = ((quarter_turns_cw % 4) + 4) % 4;
  for (int i = 0; i < n; ++i) out = rot_cw(out);
  return out;
}

std::pair<FacePoint, int> reduce_to_q1(const FacePoint& p) {
  if (!in_face(p)) throw DomainError("point outside the source face");
  FacePoint q = p;
  for (int i = 0; i < 4; ++i) {
    if (in_q1(q)) return {q, i};
    q = rot_ccw(q);
  }
  throw InvariantViolation("reduce_to_q1 found no quarter");
}

std::array<PlanePoint, 8> site_positions(const FacePoint& p) {
  if (!in_q1(p)) throw DomainError("site positions need a point of Q1");
  const Rational& x = p.x;
  const Rational& y = p.y;
  return {{
      {-16 - x, -y},
      {-12 - y, 12 + x},
      {-8 + x, 16 + y},
      {12 + y, 12 - x},
      {16 - x, -y},
      {12 - y, -12 + x},
      {-8 + x, -16 + y},
      {-12 + y, -12 - x},
  }};
}

const PlanePoint& site_position(const std::array<PlanePoint, 8>& sites, SiteIndex s) {
  return sites[s.value() - 1];
}

const std::array<PlanePoint, 8>& corner_positions() {
  static const std::array<PlanePoint, 8> corners = {{
      {Rational(-8), Rational(4)},
      {Rational(0), Rational(4)},
      {Rational(0), Rational(-4)},
      {Rational(-8), Rational(-4)},
      {Rational(-8), Rational(12)},
      {Rational(8), Rational(4)},
      {Rational(8), Rational(-4)},
      {Rational(-8), Rational(-12)},
  }};
  return corners;
}

const PlanePoint& corner_position(CornerId c) { return corner_positions()[c.value() - 1]; }

CornerId leaf_corner(SiteIndex a) {
  static const int table[8] = {1, 5, 2, 6, 7, 3, 8, 4};
  return CornerId(table[a.value() - 1]);
}

std::vector<BoundaryVertex> boundary_polygon(const FacePoint& p) {
  auto sites = site_positions(p);
  std::vector<BoundaryVertex> out;
  for (int a = 1; a <= 8; ++a) {
    out.push_back({sites[a - 1], true, a});
    CornerId c = leaf_corner(SiteIndex(a));
    out.push_back({corner_position(c), false, c.value()});
  }
  return out;
}

BisectorLine bisector(const PlanePoint& pa, const PlanePoint& pb) {
  if (pa == pb) throw DomainError("bisector of coincident sites");
  Rational a = 2 * (pb.v - pa.v);
  Rational b = 2 * (pb.w - pa.w);
  Rational c = norm2(pb) - norm2(pa);
  Rational lead = a != 0 ? a : b;
  return {a / lead, b / lead, c / lead};
}

BisectorLine bisector(const FacePoint& p, SiteIndex a, SiteIndex b) {
  auto sites = site_positions(p);
  return bisector(site_position(sites, a), site_position(sites, b));
}

PlanePoint circumcenter(const PlanePoint& a, const PlanePoint& b, const PlanePoint& c) {
  BisectorLine ab = bisector(a, b);
  BisectorLine ac = bisector(a, c);
  Rational det = ab.a * ac.b - ab.b * ac.a;
  if (det == 0) throw Collinear("sites are collinear");
  PlanePoint q{(ab.c * ac.b - ab.b * ac.c) / det, (ab.a * ac.c - ab.c * ac.a) / det};
  if (!bisector(b, c).contains(q)) throw InvariantViolation("circumcenter off the third bisector");
  return q;
}

PlanePoint circumcenter(const FacePoint& p, SiteIndex a, SiteIndex b, SiteIndex c) {
  auto sites = site_positions(p);
  return circumcenter(site_position(sites, a), site_position(sites, b), site_position(sites, c));
}

namespace {

Permutation from_images(std::initializer_list<int> images) {
  Permutation p{0};
  p.insert(p.end(), images);
  return p;
}

}  // namespace

const Permutation& sigma() {
  static const Permutation p = from_images({4, 1, 2, 3, 8, 5, 6, 7});
  return p;
}

const Permutation& sigma_inverse() {
  static const Permutation p = power(sigma(), 3);
  return p;
}

const Permutation& tau() {
  static const Permutation p = from_images({4, 3, 2, 1, 8, 7, 6, 5});
  return p;
}

const Permutation& rho() {
  static const Permutation p = from_images({1, 8, 7, 6, 5, 4, 3, 2});
  return p;
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
  Permutation out(9, 0);
  for (int i = 1; i <= 8; ++i) out[i] = outer.at(inner.at(i));
  return out;
}

Permutation power(const Permutation& p, int n) {
  Permutation out = from_images({1, 2, 3, 4, 5, 6, 7, 8});
  int k = ((n % 4) + 4) % 4;
  // Every permutation used here has order dividing 4.
  for (int i = 0; i < k; ++i) out = compose(p, out);
  return out;
}

}  // namespace cubecut
