#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cubecut/labeled_tree.hpp"
#include "cubecut/site_set.hpp"
#include "cubecut/unfolding.hpp"

namespace cubecut {

// Closed piece of a bisector; from == to when it degenerates to a point.
struct FeasibleSegment {
  PlanePoint from;
  PlanePoint to;
  bool is_point() const { return from == to; }
};

struct CutVertex {
  PlanePoint pos;
  SiteSet sites;
  std::optional<int> corner;
  int degree = 0;
};

struct CutEdge {
  int site_a;  // site_a < site_b
  int site_b;
  int from;
  int to;
};

struct CutLocusGraph {
  FacePoint source;
  std::array<PlanePoint, 8> sites;
  std::vector<CutVertex> vertices;
  std::vector<CutEdge> edges;
};

// Points equidistant from sites a and b and no closer to any other site,
// restricted for adjacent sites to the ray from their shared corner into
// the unfolding. Throws InvariantViolation if the piece is unbounded.
std::optional<FeasibleSegment> pair_feasible_segment(const FacePoint& p, SiteIndex a, SiteIndex b);

// Cut locus of a Q1 point other than a face corner, as the Voronoi diagram
// of the eight sites clipped to the star unfolding.
CutLocusGraph compute_cut_locus(const FacePoint& p);

LabeledTree to_labeled_tree(const CutLocusGraph& g);

struct OracleReport {
  bool clean = true;
  int edges_checked = 0;
  int empty_pairs_checked = 0;
  int vertices_checked = 0;
  std::vector<std::string> violations;
};

// Re-derives every claim of g with separate arithmetic: edge midpoints are
// equidistant from their two sites and strictly closer than to the rest,
// pairs without an edge have at most a point of feasible bisector, and
// vertices are equidistant from exactly their site set.
OracleReport oracle_check(const CutLocusGraph& g);

nlohmann::json to_json(const CutLocusGraph& g);
nlohmann::json to_json(const OracleReport& r);

}  // namespace cubecut
