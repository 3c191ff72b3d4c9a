#include <doctest.h>

#include <map>
#include <queue>
#include <set>

#include "cubecut/atlas.hpp"
#include "cubecut/decomposition.hpp"
#include "cubecut/errors.hpp"

using namespace cubecut;

namespace {

FacePoint fp(long xn, long xd, long yn, long yd) { return {ratio(xn, xd), ratio(yn, yd)}; }

// Path lengths between labeled vertices, indexed by label. A tree whose
// unlabeled vertices all have degree >= 3 is determined up to isomorphism
// by this matrix, which makes it an oracle independent of canonical forms.
using DistanceMatrix = std::map<std::pair<int, int>, int>;

DistanceMatrix label_distances(const LabeledTree& t) {
  auto adj = t.adjacency();
  DistanceMatrix out;
  for (int s = 0; s < t.vertex_count(); ++s) {
    if (!t.vertex(s).corner) continue;
    std::vector<int> dist(t.vertex_count(), -1);
    std::queue<int> q;
    q.push(s);
    dist[s] = 0;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int u : adj[v]) {
        if (dist[u] < 0) {
          dist[u] = dist[v] + 1;
          q.push(u);
        }
      }
    }
    for (int v = 0; v < t.vertex_count(); ++v) {
      if (t.vertex(v).corner) out[{*t.vertex(s).corner, *t.vertex(v).corner}] = dist[v];
    }
  }
  return out;
}

bool unlabeled_branching(const LabeledTree& t) {
  for (int v = 0; v < t.vertex_count(); ++v) {
    if (!t.vertex(v).corner && t.degree(v) < 3) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("region table") {
  CHECK(region_names().size() == 15);
  CHECK(region_triples("A") == TripleSet::parse("123 135 345 157 567 178"));
  CHECK(region_triples("B") == TripleSet::parse("125 234 245 158 568 678"));
  CHECK(region_triples("D'") == cubecut::apply(rho(), region_triples("D")));
  for (const auto& n : region_names()) CHECK(region_name(region_triples(n)) == n);
  CHECK_FALSE(region_name(TripleSet::parse("123 124 125 126 127 128")).has_value());
  CHECK_THROWS_AS(region_triples("J"), DomainError);
}

TEST_CASE("portion and point tables") {
  CHECK(portion_specs().size() == 22);
  std::set<std::string> names;
  for (const auto& p : portion_specs()) {
    names.insert(p.name);
    CHECK(p.quadruple.size() == 4);
  }
  CHECK(names.size() == 22);
  CHECK(names.count("CI'") == 1);
  CHECK(names.count("CI") == 1);
  CHECK(names.count("G'A") == 1);
  CHECK(point_specs().size() == 8);
}

TEST_CASE("cell ids") {
  CellId id = parse_cell_id("curve BD q2");
  CHECK(id.kind == CellKind::Curve);
  CHECK(id.quadrant == 2);
  CHECK(id.name == "BD");
  CHECK(id.to_string() == "curve BD q2");
  CHECK(parse_cell_id("point CHH'A q3").name == "CHH'A");
  CHECK_THROWS_AS(parse_cell_id("curve BD q4"), ParseError);
  CHECK_THROWS_AS(parse_cell_id("edge BD q0"), ParseError);
  CHECK_THROWS_AS(parse_cell_id("region A"), ParseError);
}

TEST_CASE("classify examples") {
  auto id = [](const FacePoint& p) { return classify(p).id.to_string(); };
  CHECK(id(fp(3, 2, 1, 2)) == "region A q0");
  CHECK(id(rot_cw(fp(3, 2, 1, 2))) == "region A q1");
  CHECK(id(fp(4, 5, 8, 5)) == "point FGHA+ q0");
  CHECK(id(fp(4, 5, -8, 5)) == "point FGHA- q0");
  CHECK(id(rotate(fp(4, 5, 8, 5), 2)) == "point FGHA+ q2");
  CHECK(id(fp(0, 1, 1, 1)) == "curve edge q0");
  CHECK(id(fp(2, 1, 2, 1)) == "curve half-diagonal q0");
  CHECK(id(fp(4, 1, 0, 1)) == "point center q0");
  CHECK(id(fp(0, 1, 4, 1)) == "point corner q0");
  CHECK_THROWS_AS(classify(fp(9, 1, 0, 1)), DomainError);

  Classification c = classify(fp(4, 5, 8, 5));
  CHECK(c.cls.degree4_count == 2);
  CHECK(c.graph.has_value());
}

TEST_CASE("exact points on the 1568 curve") {
  // x^2 + (y - 12)^2 = 128 through rational slopes from (8, 8).
  for (auto p : {fp(56, 97, 68, 97), fp(136, 305, 212, 305), fp(184, 373, 260, 373)}) {
    CHECK(atlas_entry(SiteSet::parse("1568")).poly.eval(p.x, p.y) == 0);
    Classification c = classify(p);
    CHECK(c.id.to_string() == "curve BD q0");
    CHECK(c.cls.degree4_count == 1);
    CHECK(classify({p.x, -p.y}).id.to_string() == "curve BD' q0");
    for (int i = 1; i < 4; ++i) CHECK(classify(rotate(p, i)).id.to_string() == "curve BD q" + std::to_string(i));
  }
}

TEST_CASE("catalog counts") {
  const Catalog& cat = default_catalog();
  ClassCounts n = distinct_classes(cat);
  CHECK(n.regions == 60);
  CHECK(n.region_classes == 58);
  CHECK(n.curves == 96);
  CHECK(n.curve_classes == 86);
  CHECK(n.points == 37);
  CHECK(n.point_classes == 33);
  CHECK(n.cells == 193);
  CHECK(n.classes == 177);
  CHECK(n.coincidences.size() == 16);
  CheckReport r = catalog_report(cat);
  CHECK_MESSAGE(r.pass, to_json(r).dump());
  for (const auto& check : cat.checks) CHECK_MESSAGE(check.pass, check.name);
}

TEST_CASE("class counts by labeled distances") {
  const Catalog& cat = default_catalog();
  std::map<DistanceMatrix, std::vector<CellId>> groups;
  std::map<CellKind, std::set<DistanceMatrix>> by_kind;
  for (const auto& [id, info] : cat.cells) {
    REQUIRE(unlabeled_branching(info.tree));
    DistanceMatrix d = label_distances(info.tree);
    groups[d].push_back(id);
    by_kind[id.kind].insert(d);
  }
  CHECK(groups.size() == 177);
  CHECK(by_kind[CellKind::Region].size() == 58);
  CHECK(by_kind[CellKind::Curve].size() == 86);
  CHECK(by_kind[CellKind::Point].size() == 33);
  std::vector<std::pair<CellId, CellId>> pairs;
  for (const auto& [d, ids] : groups) {
    REQUIRE(ids.size() <= 2);
    if (ids.size() == 2) pairs.emplace_back(std::min(ids[0], ids[1]), std::max(ids[0], ids[1]));
  }
  std::sort(pairs.begin(), pairs.end());
  CHECK(pairs == expected_coincidences());
}

TEST_CASE("catalog named classes") {
  const Catalog& cat = default_catalog();
  // Region B: caterpillar with end leaf pairs {5,2}, {8,3} and spine leaves 6, 1, 4, 7.
  const LabeledTree& b = cat.at({CellKind::Region, 0, "B"}).tree;
  DistanceMatrix d = label_distances(b);
  CHECK(d.at({5, 2}) == 2);
  CHECK(d.at({8, 3}) == 2);
  CHECK(d.at({5, 3}) == 7);
  CHECK(canonical_form(b) == canonical_form(fixture_tree("region_B")));
  // BD is B with the edge between the 158 and 568 vertices contracted.
  const LabeledTree& bd = cat.at({CellKind::Curve, 0, "BD"}).tree;
  CHECK(bd.vertex_count() == b.vertex_count() - 1);
  CHECK(canonical_form(bd) == canonical_form(fixture_tree("curve_BD")));
  CHECK(canonical_form(cat.at({CellKind::Point, 0, "corner"}).tree) == canonical_form(fixture_tree("point_corner")));
}

TEST_CASE("property: cell degree structure") {
  for (const auto& [id, info] : default_catalog().cells) {
    if (id.kind == CellKind::Region) {
      CHECK(info.cls.degree3_count == 6);
      CHECK(info.cls.degree4_count == 0);
    }
    if (id.kind == CellKind::Curve && info.quadruple) {
      CHECK(info.cls.degree3_count == 4);
      CHECK(info.cls.degree4_count == 1);
    }
    CHECK(info.tree.count_degree(1) + info.tree.count_degree(2) <= 8);
  }
}

TEST_CASE("property: collapse from both sides in every quadrant") {
  int checked = 0;
  for (const auto& spec : portion_specs()) {
    for (int i = 0; i < 4; ++i) {
      Permutation s = power(sigma(), i);
      auto collapse = [&](const std::string& region) {
        // apply keeps vertex indices but drops site annotations.
        LabeledTree t = tree_from_triples(region_triples(region));
        std::vector<std::pair<int, int>> edges;
        for (auto [a, b] : t.edges()) {
          if (!t.vertex(a).corner && !t.vertex(b).corner && t.vertex(a).sites.subset_of(spec.quadruple) &&
              t.vertex(b).sites.subset_of(spec.quadruple)) {
            edges.emplace_back(a, b);
          }
        }
        REQUIRE(edges.size() == 1);
        return canonical_form(collapse_edges(cubecut::apply(s, t), edges));
      };
      CanonicalForm left = collapse(spec.left);
      CHECK(left == collapse(spec.right));
      CHECK(left == default_catalog().at({CellKind::Curve, i, spec.name}).cls.canonical);
      ++checked;
    }
  }
  CHECK(checked == 88);
}

TEST_CASE("property: representatives classify to their own cell") {
  const Catalog& cat = default_catalog();
  int checked = 0;
  for (const auto& [id, info] : cat.cells) {
    if (!info.representative) continue;
    Classification c = classify(*info.representative);
    CHECK_MESSAGE(c.id == id, std::string(id.to_string() + " classified as " + c.id.to_string()));
    CHECK(c.cls.canonical == info.cls.canonical);
    ++checked;
  }
  // 60 regions, 8 edge/half-diagonal, FGHA at 8 places, corners and center.
  CHECK(checked == 60 + 8 + 8 + 4 + 1);
}

TEST_CASE("property: sampling checks") {
  CheckReport e = equivariance_check(150, 7);
  CHECK_MESSAGE(e.pass, to_json(e).dump());
  CheckReport o = oracle_equivalence(150, 7);
  CHECK_MESSAGE(o.pass, to_json(o).dump());
  CHECK(sample_face_points(20, 3) == sample_face_points(20, 3));
  for (const auto& p : sample_face_points(200, 1)) CHECK(in_face(p));
}

TEST_CASE("contracting short edges near a point") {
  // Just off FGHA+ the two degree-4 vertices split into short edges.
  FacePoint near{ratio(4, 5) + ratio(1, 1000000000), ratio(8, 5)};
  CutLocusGraph g = compute_cut_locus(near);
  LabeledTree t = contract_short_edges(g, ratio(1, 1000000000000L));
  CHECK(canonical_form(t) == default_catalog().at({CellKind::Point, 0, "FGHA+"}).cls.canonical);
  CHECK(canonical_form(to_labeled_tree(g)) != canonical_form(t));
}

TEST_CASE("catalog json") {
  const Catalog& cat = default_catalog();
  nlohmann::json j = to_json(cat);
  REQUIRE(j["cells"].size() == 193);
  CHECK(j["class_count"] == 177);
  std::set<std::string> ids;
  for (const auto& c : j["cells"]) ids.insert(c["class_id"].get<std::string>());
  CHECK(ids.size() == 177);
  CHECK(ids.count("L001") == 1);
  CHECK(ids.count("L177") == 1);
  auto a = std::find_if(j["cells"].begin(), j["cells"].end(), [](const nlohmann::json& c) { return c["id"] == "region A q0"; });
  REQUIRE(a != j["cells"].end());
  CHECK((*a)["representative"] == nlohmann::json{"3/2", "1/2"});
  CHECK((*a)["derivation"] == "direct");
}
