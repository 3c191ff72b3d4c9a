#pragma once

#include <array>
#include <utility>
#include <vector>

#include "cubecut/rational.hpp"
#include "cubecut/site_set.hpp"

namespace cubecut {

// Point of the source face [0,8] x [-4,4]. Q1 is the quarter
// 0 <= x <= 4, |y| <= 4 - x; the other quarters are its images under
// clockwise rotation about the face center (4, 0).
struct FacePoint {
  Rational x;
  Rational y;
  bool operator==(const FacePoint&) const = default;
};

// Point of the unfolding plane, coordinates (v, w).
struct PlanePoint {
  Rational v;
  Rational w;
  bool operator==(const PlanePoint&) const = default;
  bool operator<(const PlanePoint& o) const { return v < o.v || (v == o.v && w < o.w); }
};

PlanePoint operator-(const PlanePoint& a, const PlanePoint& b);
PlanePoint operator+(const PlanePoint& a, const PlanePoint& b);
PlanePoint operator*(const Rational& s, const PlanePoint& a);
Rational dot(const PlanePoint& a, const PlanePoint& b);
Rational cross(const PlanePoint& a, const PlanePoint& b);
Rational norm2(const PlanePoint& a);

bool in_face(const FacePoint& p);
bool in_q1(const FacePoint& p);
bool is_face_corner(const FacePoint& p);

// Clockwise quarter turn about the face center: (x, y) -> (4 + y, 4 - x).
FacePoint rot_cw(const FacePoint& p);
FacePoint rot_ccw(const FacePoint& p);
FacePoint rotate(const FacePoint& p, int quarter_turns_cw);

// The Q1 point P' and the smallest i in {0..3} with rot_cw^i(P') = P.
std::pair<FacePoint, int> reduce_to_q1(const FacePoint& p);

// Images P1..P8 of a Q1 point; index 0 is site 1. Throws DomainError
// outside Q1.
std::array<PlanePoint, 8> site_positions(const FacePoint& p);
const PlanePoint& site_position(const std::array<PlanePoint, 8>& sites, SiteIndex s);

const std::array<PlanePoint, 8>& corner_positions();
const PlanePoint& corner_position(CornerId c);

// The corner where the boundary edges of sites a and a+1 meet.
CornerId leaf_corner(SiteIndex a);

struct BoundaryVertex {
  PlanePoint pos;
  bool is_site;
  int label;  // site index or corner id
};

// The 16-gon P1, c1, P2, c5, P3, c2, P4, c6, P5, c7, P6, c3, P7, c8, P8, c4.
std::vector<BoundaryVertex> boundary_polygon(const FacePoint& p);

// Perpendicular bisector a*v + b*w = c, scaled so the first nonzero of
// (a, b) is 1.
struct BisectorLine {
  Rational a;
  Rational b;
  Rational c;
  bool contains(const PlanePoint& q) const { return a * q.v + b * q.w == c; }
  bool operator==(const BisectorLine&) const = default;
};

BisectorLine bisector(const PlanePoint& pa, const PlanePoint& pb);
BisectorLine bisector(const FacePoint& p, SiteIndex a, SiteIndex b);

// Equidistant point of three sites. Throws Collinear.
PlanePoint circumcenter(const PlanePoint& a, const PlanePoint& b, const PlanePoint& c);
PlanePoint circumcenter(const FacePoint& p, SiteIndex a, SiteIndex b, SiteIndex c);

// Label permutations. sigma relabels corners under rot_cw, tau under the
// reflection y -> -y; rho is the site relabeling induced by that reflection.
const Permutation& sigma();
const Permutation& sigma_inverse();
const Permutation& tau();
const Permutation& rho();
Permutation compose(const Permutation& outer, const Permutation& inner);
Permutation power(const Permutation& p, int n);

}  // namespace cubecut
