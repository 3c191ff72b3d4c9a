#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "cubecut/errors.hpp"
#include "cubecut/labeled_tree.hpp"
#include "cubecut/unfolding.hpp"

using namespace cubecut;

namespace {

// Random tree on n vertices (random parent attachment) with the labels
// 1..k placed on random distinct vertices.
LabeledTree random_tree(std::mt19937_64& rng, int n, int k) {
  std::vector<int> who(n);
  std::iota(who.begin(), who.end(), 0);
  std::shuffle(who.begin(), who.end(), rng);
  std::vector<std::optional<int>> label(n);
  for (int c = 1; c <= k && c <= n; ++c) label[who[c - 1]] = c;
  LabeledTree t;
  for (int i = 0; i < n; ++i) t.add_vertex(label[i]);
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> pick(0, i - 1);
    t.add_edge(pick(rng), i);
  }
  return t;
}

// Same tree with vertices renumbered and the edge list shuffled.
LabeledTree renumbered(const LabeledTree& t, std::mt19937_64& rng) {
  int n = t.vertex_count();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<int> inverse(n);
  for (int i = 0; i < n; ++i) inverse[perm[i]] = i;
  LabeledTree out;
  for (int i = 0; i < n; ++i) out.add_vertex(t.vertex(perm[i]).corner);
  auto edges = t.edges();
  std::shuffle(edges.begin(), edges.end(), rng);
  for (auto [a, b] : edges) {
    if (rng() & 1) std::swap(a, b);
    out.add_edge(inverse[a], inverse[b]);
  }
  return out;
}

Permutation random_perm(std::mt19937_64& rng) {
  Permutation p(9);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin() + 1, p.end(), rng);
  return p;
}

}  // namespace

TEST_CASE("fixtures load as trees") {
  auto names = fixture_names();
  CHECK(names.size() == 29);
  for (const auto& n : names) {
    const auto& t = fixture_tree(n);
    CHECK(t.is_tree());
  }
  CHECK(fixture_tree("region_B").vertex_count() == 14);
  CHECK_THROWS_AS(fixture_tree("no_such_tree"), DomainError);
}

TEST_CASE("canonical form ignores drawing order") {
  const auto& a = fixture_tree("region_A");
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) CHECK(canonical_form(renumbered(a, rng)) == canonical_form(a));
  LabeledTree single;
  single.add_vertex(5);
  CHECK(canonical_form(single).text == "(5)");
  LabeledTree blank;
  blank.add_vertex(std::nullopt);
  CHECK(canonical_form(blank).text == "(*)");
  CHECK(canonical_form(fixture_tree("region_B")) != canonical_form(fixture_tree("region_I")));
}

TEST_CASE("symmetries from the figures") {
  const auto& a = fixture_tree("region_A");
  auto s2 = power(sigma(), 2);
  CHECK(is_isomorphic(a, a));
  CHECK(is_isomorphic(a, cubecut::apply(s2, a)));
  CHECK(!is_isomorphic(a, cubecut::apply(sigma(), a)));
  const auto& ga = fixture_tree("curve_GA");
  const auto& ha = fixture_tree("curve_HA");
  CHECK(!is_isomorphic(ga, ha));
  CHECK(is_isomorphic(cubecut::apply(s2, ga), ha));
  const auto& fgha = fixture_tree("point_FGHA");
  CHECK(is_isomorphic(cubecut::apply(s2, fgha), fgha));
}

TEST_CASE("permutation action") {
  const auto& t = fixture_tree("region_C");
  CHECK(canonical_form(cubecut::apply(tau(), cubecut::apply(tau(), t))) == canonical_form(t));
  LabeledTree u = t;
  for (int i = 0; i < 4; ++i) u = cubecut::apply(sigma(), u);
  CHECK(canonical_form(u) == canonical_form(t));
}

TEST_CASE("collapse of region B gives the BD curve") {
  const auto& b = fixture_tree("region_B");
  // The internal edge joining the vertices next to leaves 4 and 7.
  auto c4 = *b.find_corner(4);
  auto c7 = *b.find_corner(7);
  int u = b.adjacency()[c4][0], v = b.adjacency()[c7][0];
  REQUIRE(b.find_edge(u, v));
  LabeledTree bd = collapse_edge(b, u, v);
  CHECK(bd.vertex_count() == 13);
  CHECK(bd.edges().size() == 12);
  CHECK(bd.count_degree(4) == 1);
  CHECK(is_isomorphic(bd, fixture_tree("curve_BD")));
}

TEST_CASE("collapse moves a leaf label inward") {
  const auto& a = fixture_tree("region_A");
  int leaf = *a.find_corner(3);
  int inner = a.adjacency()[leaf][0];
  LabeledTree c = collapse_edge(a, leaf, inner);
  auto v = c.find_corner(3);
  REQUIRE(v);
  CHECK(c.degree(*v) == 2);
  CHECK_THROWS_AS(collapse_edge(fixture_tree("point_corner"), *fixture_tree("point_corner").find_corner(1),
                                *fixture_tree("point_corner").find_corner(2)),
                  BothLabeled);
}

TEST_CASE("parse and serialize") {
  const char* text = "vertex a corner=1\nvertex b sites=123\nvertex c corner=2\nedge a b\nedge b c\n";
  LabeledTree t = parse_tree(text);
  CHECK(t.vertex_count() == 3);
  CHECK(t.vertex(1).sites == SiteSet::parse("123"));
  LabeledTree again = parse_tree(serialize_tree(t));
  CHECK(serialize_tree(again) == serialize_tree(t));
  CHECK(canonical_form(again) == canonical_form(t));
  CHECK_THROWS_AS(parse_tree("vertex a\nvertex b\nvertex c\nedge a b\nedge b c\nedge c a\n"), Error);
  CHECK_THROWS_AS(parse_tree("vertex a corner=9\n"), Error);
  CHECK_THROWS_AS(parse_tree("vertex a\nedge a z\n"), Error);
  CHECK_THROWS_AS(parse_tree("vertex a corner=1\nvertex b corner=1\nedge a b\n"), Error);
  CHECK_THROWS_AS(parse_tree("bogus line\n"), ParseError);
}

TEST_CASE("property: canonical form is invariant under renumbering") {
  std::mt19937_64 rng(31);
  for (int n = 0; n < 300; ++n) {
    std::uniform_int_distribution<int> size(1, 18);
    LabeledTree t = random_tree(rng, size(rng), 8);
    CHECK(canonical_form(renumbered(t, rng)) == canonical_form(t));
  }
}

TEST_CASE("property: canonical equality matches brute-force isomorphism") {
  std::mt19937_64 rng(32);
  int positives = 0;
  for (int n = 0; n < 300; ++n) {
    std::uniform_int_distribution<int> size(2, 7);
    int v = size(rng);
    LabeledTree t = random_tree(rng, v, 2);
    LabeledTree u = (n % 3 == 0) ? renumbered(t, rng) : random_tree(rng, v, 2);
    if (n % 5 == 0) u = cubecut::apply(Permutation{0, 2, 1, 3, 4, 5, 6, 7, 8}, u);
    bool brute = false;
    std::vector<int> map(v);
    std::iota(map.begin(), map.end(), 0);
    do {
      bool ok = true;
      for (int i = 0; i < v && ok; ++i) ok = t.vertex(i).corner == u.vertex(map[i]).corner;
      for (auto [a, b] : t.edges()) {
        if (!ok) break;
        ok = u.find_edge(map[a], map[b]).has_value();
      }
      brute = ok;
    } while (!brute && std::next_permutation(map.begin(), map.end()));
    CHECK(brute == is_isomorphic(t, u));
    positives += brute;
  }
  CHECK(positives > 50);
}

TEST_CASE("property: apply is a group action") {
  std::mt19937_64 rng(33);
  for (int n = 0; n < 200; ++n) {
    LabeledTree t = random_tree(rng, 14, 8);
    Permutation p = random_perm(rng), q = random_perm(rng);
    CHECK(canonical_form(cubecut::apply(p, cubecut::apply(q, t))) == canonical_form(cubecut::apply(compose(p, q), t)));
    CHECK(canonical_form(cubecut::apply(p, renumbered(t, rng))) == canonical_form(cubecut::apply(p, t)));
  }
}

TEST_CASE("property: collapse removes one vertex and one edge") {
  std::mt19937_64 rng(34);
  for (int n = 0; n < 200; ++n) {
    LabeledTree t = random_tree(rng, 14, 8);
    auto [a, b] = t.edges()[rng() % t.edges().size()];
    if (t.vertex(a).corner && t.vertex(b).corner) {
      CHECK_THROWS_AS(collapse_edge(t, a, b), BothLabeled);
      continue;
    }
    LabeledTree c = collapse_edge(t, a, b);
    CHECK(c.vertex_count() == t.vertex_count() - 1);
    CHECK(c.edges().size() == t.edges().size() - 1);
    CHECK(c.is_tree());
  }
}
