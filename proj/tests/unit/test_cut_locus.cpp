#include <doctest.h>

#include <random>

#include "cubecut/cut_locus.hpp"
#include "cubecut/errors.hpp"

using namespace cubecut;

namespace {

FacePoint fp(const char* x, const char* y) { return {parse_rational(x), parse_rational(y)}; }

std::vector<SiteSet> sites_of_degree(const CutLocusGraph& g, int degree) {
  std::vector<SiteSet> out;
  for (const auto& v : g.vertices) {
    if (v.degree == degree) out.push_back(v.sites);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SiteSet> sets(std::initializer_list<const char*> items) {
  std::vector<SiteSet> out;
  for (const char* s : items) out.push_back(SiteSet::parse(s));
  std::sort(out.begin(), out.end());
  return out;
}

FacePoint random_interior_q1(std::mt19937_64& rng, int den) {
  std::uniform_int_distribution<int> dx(1, 4 * den - 1);
  while (true) {
    int x = dx(rng);
    int ylim = 4 * den - x - 1;
    if (ylim < 0) continue;
    std::uniform_int_distribution<int> dy(-ylim, ylim);
    return {ratio(x, den), ratio(dy(rng), den)};
  }
}

}  // namespace

TEST_CASE("feasible segments at (1.5, 0.5)") {
  FacePoint p = fp("1.5", "0.5");
  auto s23 = pair_feasible_segment(p, SiteIndex(2), SiteIndex(3));
  REQUIRE(s23);
  CHECK((s23->from == corner_position(CornerId(5)) || s23->to == corner_position(CornerId(5))));
  CHECK(!pair_feasible_segment(p, SiteIndex(2), SiteIndex(6)));
  auto s13 = pair_feasible_segment(p, SiteIndex(1), SiteIndex(3));
  REQUIRE(s13);
  PlanePoint a{ratio(-72, 23), ratio(52, 23)}, b{ratio(-3, 2), ratio(41, 34)};
  CHECK(((s13->from == a && s13->to == b) || (s13->from == b && s13->to == a)));
}

TEST_CASE("worked example (1.5, 0.5)") {
  auto g = compute_cut_locus(fp("1.5", "0.5"));
  CHECK(g.vertices.size() == 14);
  CHECK(g.edges.size() == 13);
  CHECK(sites_of_degree(g, 3) == sets({"123", "135", "345", "157", "567", "178"}));
  CHECK(sites_of_degree(g, 1).size() == 8);
  bool found = false;
  for (const auto& v : g.vertices) {
    if (v.sites == SiteSet::parse("135")) {
      CHECK(v.pos.w == ratio(41, 34));
      found = true;
    }
  }
  CHECK(found);
  CHECK(is_isomorphic(to_labeled_tree(g), fixture_tree("region_A")));

  OracleReport r = oracle_check(g);
  CHECK(r.clean);
  CHECK(r.edges_checked == 13);
  CHECK(r.empty_pairs_checked == 15);
}

TEST_CASE("oracle catches a deleted edge") {
  auto g = compute_cut_locus(fp("1.5", "0.5"));
  g.edges.erase(g.edges.begin() + 4);
  OracleReport r = oracle_check(g);
  CHECK(!r.clean);
  CHECK(!r.violations.empty());
}

TEST_CASE("degenerate point (0.8, 1.6)") {
  auto g = compute_cut_locus(fp("0.8", "1.6"));
  CHECK(sites_of_degree(g, 4) == sets({"1235", "1567"}));
  CHECK(g.vertices.size() == g.edges.size() + 1);
  CHECK(oracle_check(g).clean);
  CHECK(is_isomorphic(to_labeled_tree(g), fixture_tree("point_FGHA")));
}

TEST_CASE("left edge and half diagonal") {
  auto g = compute_cut_locus(fp("0", "1"));
  for (int c : {2, 3}) {
    bool seen = false;
    for (const auto& v : g.vertices) {
      if (v.corner == c) {
        CHECK(v.degree == 2);
        seen = true;
      }
    }
    CHECK(seen);
  }
  CHECK(is_isomorphic(to_labeled_tree(g), fixture_tree("edge_left")));
  CHECK(oracle_check(g).clean);
  auto d = compute_cut_locus(fp("2", "2"));
  CHECK(is_isomorphic(to_labeled_tree(d), fixture_tree("half_diagonal")));
  CHECK(oracle_check(d).clean);
}

TEST_CASE("face center") {
  auto g = compute_cut_locus(fp("4", "0"));
  CHECK(is_isomorphic(to_labeled_tree(g), fixture_tree("point_center")));
  CHECK_THROWS_AS(compute_cut_locus(fp("0", "4")), DomainError);
}

TEST_CASE("json form") {
  auto j = to_json(compute_cut_locus(fp("1.5", "0.5")));
  CHECK(j["vertices"].size() == 14);
  CHECK(j["edges"].size() == 13);
  CHECK(j["source"][0] == "3/2");
  CHECK(j["source"][1] == "1/2");
}

TEST_CASE("property: random interior points give certified trees") {
  std::mt19937_64 rng(21);
  int generic = 0;
  for (int n = 0; n < 300; ++n) {
    FacePoint p = random_interior_q1(rng, 97);
    auto g = compute_cut_locus(p);
    CHECK(g.vertices.size() == g.edges.size() + 1);
    CHECK(oracle_check(g).clean);
    for (const auto& e : g.edges) {
      bool adjacent = e.site_b == e.site_a + 1 || (e.site_a == 1 && e.site_b == 8);
      if (!adjacent) continue;
      int first = e.site_b == e.site_a + 1 ? e.site_a : 8;
      const PlanePoint& c = corner_position(leaf_corner(SiteIndex(first)));
      CHECK((g.vertices[e.from].pos == c || g.vertices[e.to].pos == c));
    }
    auto t = to_labeled_tree(g);
    if (t.count_degree(3) == 6) {
      ++generic;
      CHECK(t.count_degree(1) == 8);
      CHECK(g.edges.size() == 13);
      for (int c = 1; c <= 8; ++c) {
        auto v = t.find_corner(c);
        REQUIRE(v);
        CHECK(t.degree(*v) == 1);
      }
    }
  }
  CHECK(generic > 250);
}

TEST_CASE("property: reflection acts by tau") {
  std::mt19937_64 rng(22);
  for (int n = 0; n < 200; ++n) {
    FacePoint p = random_interior_q1(rng, 61);
    auto t = to_labeled_tree(compute_cut_locus(p));
    auto r = to_labeled_tree(compute_cut_locus({p.x, -p.y}));
    CHECK(canonical_form(r) == canonical_form(cubecut::apply(tau(), t)));
  }
}
