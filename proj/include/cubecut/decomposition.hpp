#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cubecut/cut_locus.hpp"
#include "cubecut/labeled_tree.hpp"
#include "cubecut/report.hpp"
#include "cubecut/site_set.hpp"
#include "cubecut/unfolding.hpp"

namespace cubecut {

enum class CellKind { Region, Curve, Point };

// A cell of the face decomposition. quadrant i is the image of Q1 under
// rot_cw^i. Names: regions "A".."I" and "D'".."I'"; curve portions by the
// two regions they separate ("BD", "CI'", ...) or "edge" and
// "half-diagonal"; points "BDEI+", "BDEI-", "EFHCI+", "EFHCI-", "FGHA+",
// "FGHA-", "BII'C", "CHH'A", "corner" and the single "center" (quadrant 0).
struct CellId {
  CellKind kind;
  int quadrant;
  std::string name;

  std::string to_string() const;  // e.g. "curve BD q2"
  auto operator<=>(const CellId&) const = default;
};

CellId parse_cell_id(std::string_view text);  // inverse of to_string

struct CellClass {
  CanonicalForm canonical;
  int degree3_count = 0;
  int degree4_count = 0;  // vertices of degree 4 or more
};

CellClass class_of(const LabeledTree& t);

enum class Derivation { Direct, Collapse, Fixture };

struct CellInfo {
  std::optional<FacePoint> representative;  // exact, when one is known
  LabeledTree tree;
  CellClass cls;
  Derivation derivation;
  std::optional<SiteSet> quadruple;                // polynomial curve portions
  std::vector<SiteSet> groups;                     // cocircular sets at points
  std::optional<std::array<double, 2>> location;   // points, approximate
};

struct Catalog {
  std::map<CellId, CellInfo> cells;
  // Stable ids "L001".. assigned in order of canonical text.
  std::map<CanonicalForm, std::string> class_ids;
  // Checks run while building (fixtures, collapse agreement, sanity).
  std::vector<CheckReport> checks;

  const CellInfo& at(const CellId& id) const;
  std::string class_id(const CanonicalForm& c) const;  // "" if unknown
};

// The 15 region names of a quadrant and their vertex triples in Q1.
const std::vector<std::string>& region_names();
const TripleSet& region_triples(const std::string& name);
std::optional<std::string> region_name(const TripleSet& triples);

// Q1 curve portions: name, quadruple and the two separated regions.
struct PortionSpec {
  std::string name;
  SiteSet quadruple;
  std::string left;
  std::string right;
};
const std::vector<PortionSpec>& portion_specs();  // 22 entries

struct PointSpec {
  std::string name;
  std::vector<SiteSet> groups;
  std::vector<std::string> regions;
};
const std::vector<PointSpec>& point_specs();  // 8 entries

struct Classification {
  CellId id;
  CellClass cls;
  LabeledTree tree;                  // corner labels in face orientation
  std::optional<CutLocusGraph> graph;  // cut locus of the Q1 preimage
};

// Direct classification; interior points are cross-checked against the
// region walk (ClassifierMismatch on disagreement).
Classification classify(const FacePoint& p);

Catalog build_catalog();
const Catalog& default_catalog();

struct ClassCounts {
  int regions = 0, curves = 0, points = 0;
  int region_classes = 0, curve_classes = 0, point_classes = 0;
  int cells = 0, classes = 0;
  std::vector<std::pair<CellId, CellId>> coincidences;
};
ClassCounts distinct_classes(const Catalog& c);
std::vector<std::pair<CellId, CellId>> expected_coincidences();

// Counts, coincidence pairs and the checks recorded during the build.
CheckReport catalog_report(const Catalog& c);

// Seeded uniform face points with denominator 4096, face corners excluded.
std::vector<FacePoint> sample_face_points(int n, std::uint64_t seed);

// Cut-locus tree of any face point with corner labels in face orientation,
// without the region-walk cross-check.
LabeledTree face_tree(const FacePoint& p);

// Throws ClassifierMismatch if the catalog holds a different class for
// c.id.
void check_against(const Catalog& catalog, const Classification& c);

// Random face points with denominator 4096 plus points on the diagonals
// and the center, where rotation is not applied by construction.
CheckReport equivariance_check(int samples, std::uint64_t seed);

// Random face points: classify (which cross-checks the region walk) and
// oracle_check the cut locus.
CheckReport oracle_equivalence(int samples, std::uint64_t seed);

// Near a curve or an irrational point: exact cut locus at a nearby
// rational point with edges shorter than sqrt(max_len2) contracted.
LabeledTree contract_short_edges(const CutLocusGraph& g, const Rational& max_len2);

nlohmann::json to_json(const CellId& id);
nlohmann::json to_json(const Catalog& c);

}  // namespace cubecut
