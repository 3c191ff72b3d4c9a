#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cubecut/bivar_poly.hpp"
#include "cubecut/labeled_tree.hpp"
#include "cubecut/report.hpp"
#include "cubecut/site_set.hpp"
#include "cubecut/unfolding.hpp"

namespace cubecut {

// A transition curve: the face points where the four sites of `quadruple`
// are cocircular. poly is the in-face equation; the five upper entries are
// the printed ones and the lower five their reflections.
struct AtlasEntry {
  std::string curve_name;
  SiteSet quadruple;
  BivarPoly poly;
  bool reflected;
};

const std::vector<AtlasEntry>& builtin_atlas();
const AtlasEntry& atlas_entry(SiteSet quadruple);  // DomainError if absent

// Sites P1..P8 as polynomials in x and y.
std::pair<BivarPoly, BivarPoly> symbolic_site(int s);

// Cocircularity condition of a, b, c, d from the v-coordinates of the
// circumcenters of abc and abd. Neither may hold both 1 and 5.
BivarPoly derive_quadruple_poly(SiteIndex a, SiteIndex b, SiteIndex c, SiteIndex d);
// Cocircularity of 1, 5, b, c: the circumcenter of 1bc lies on v = -x.
BivarPoly derive_quadruple_poly_15(SiteIndex b, SiteIndex c);
// Dispatches on whether q contains both 1 and 5, in ascending listing.
BivarPoly derive_for(SiteSet q);

CheckReport verify_derivations();

// The root x = theta_q(y) of the atlas polynomial in (0, 4 - |y|). Throws
// MultipleRoots if there are several.
std::optional<IsolatingInterval> theta(SiteSet q, const Rational& y);

// Replaces the two triples of state inside q by the other two 3-subsets of
// q, if exactly two triples lie inside q.
std::optional<TripleSet> transition(const TripleSet& state, SiteSet q);

// Vertex set of the region at the right end of every horizontal line.
const TripleSet& initial_state();

// Region tree of a triple set: one vertex per triple, joined when two
// triples share a pair, plus a corner leaf for each adjacent pair that only
// one triple contains.
LabeledTree tree_from_triples(const TripleSet& state);

struct WalkStep {
  std::vector<SiteSet> quadruples;  // several when roots coincide
  IsolatingInterval x;
  TripleSet state;  // region to the left of the crossing
};

struct RegionWalk {
  Rational y;
  TripleSet start;
  std::vector<WalkStep> steps;      // effective crossings, right to left
  std::vector<SiteSet> ineffective;  // roots that changed nothing
};

// Walks the line at height y (|y| < 4) from x = 4 - |y| towards x = 0,
// applying effective transitions in descending order of theta.
RegionWalk region_walk(const Rational& y);

// Where the walk puts a point of Q1 with 0 < x < 4 - |y|.
struct AtlasLocation {
  enum class Kind { Region, Curve, Point } kind;
  TripleSet state;               // region, or the right-hand side otherwise
  TripleSet left_state;          // left-hand side for curves and points
  std::vector<SiteSet> curves;   // effective curves through the point
};
AtlasLocation atlas_locate(const FacePoint& p);

CheckReport verify_orderings(int samples_per_range = 32);
CheckReport verify_remarkable_point();
CheckReport verify_no_mixed_transitions(int grid_n = 256);

}  // namespace cubecut
