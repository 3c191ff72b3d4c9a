#include <doctest.h>

#include <map>
#include <random>

#include "cubecut/atlas.hpp"
#include "cubecut/errors.hpp"

using namespace cubecut;

namespace {

const std::map<std::string, TripleSet>& regions() {
  static const std::map<std::string, TripleSet> table = {
      {"A", TripleSet::parse("123 135 345 157 567 178")}, {"B", TripleSet::parse("125 234 245 158 568 678")},
      {"C", TripleSet::parse("125 235 345 158 567 578")}, {"D", TripleSet::parse("125 234 245 156 168 678")},
      {"E", TripleSet::parse("125 235 345 156 168 678")}, {"F", TripleSet::parse("125 235 345 156 167 178")},
      {"G", TripleSet::parse("123 135 345 156 167 178")}, {"H", TripleSet::parse("125 235 345 157 567 178")},
      {"I", TripleSet::parse("125 235 345 158 568 678")},
  };
  return table;
}

std::string name_of(const TripleSet& s) {
  for (const auto& [n, t] : regions()) {
    if (t == s) return n;
  }
  return "?";
}

std::string sequence(const char* y) {
  RegionWalk w = region_walk(parse_rational(y));
  std::string out = name_of(w.start);
  for (const auto& s : w.steps) out += "," + name_of(s.state);
  return out;
}

SiteSet q(const char* s) { return SiteSet::parse(s); }

BivarPoly poly(const char* s) { return parse_bivar(s); }

// |pi_abc - P_d|^2 - r^2 at a Q1 point: zero exactly when the four sites
// are cocircular.
Rational cocircularity(const FacePoint& p, const std::vector<int>& s) {
  auto sites = site_positions(p);
  PlanePoint c = circumcenter(p, SiteIndex(s[0]), SiteIndex(s[1]), SiteIndex(s[2]));
  return norm2(c - sites[s[3] - 1]) - norm2(c - sites[s[0] - 1]);
}

}  // namespace

TEST_CASE("printed curve table") {
  const auto& atlas = builtin_atlas();
  REQUIRE(atlas.size() == 10);
  CHECK(atlas_entry(q("1568")).curve_name == "BD,EI");
  CHECK(atlas_entry(q("1568")).poly == poly("x^2 + y^2 - 24*y + 16"));
  CHECK(atlas_entry(q("1567")).curve_name == "GA,FH");
  CHECK(atlas_entry(q("1567")).poly == poly("x^3 - 12*x^2 + (y^2 - 24*y + 112)*x + 4*y^2 - 64"));
  CHECK(atlas_entry(q("5678")).reflected);
  CHECK(atlas_entry(q("5678")).poly == atlas_entry(q("2345")).poly.reflect_y());
  CHECK_THROWS_AS(atlas_entry(q("1357")), DomainError);
}

TEST_CASE("derivations against the printed polynomials") {
  BivarPoly core = atlas_entry(q("2345")).poly;
  CHECK(equal_up_to_scalar(derive_quadruple_poly(SiteIndex(2), SiteIndex(3), SiteIndex(4), SiteIndex(5)),
                           core * poly("4 + y - x")));
  BivarPoly d1234 = derive_quadruple_poly(SiteIndex(1), SiteIndex(2), SiteIndex(3), SiteIndex(4));
  auto quo = divide_up_to_scalar(d1234, atlas_entry(q("1678")).poly.reflect_y());
  REQUIRE(quo);
  CHECK(quo->total_degree() == 1);

  CHECK(derive_quadruple_poly_15(SiteIndex(2), SiteIndex(4)) == poly("x*(x^2 + y^2 + 24*y + 16)"));
  CHECK(derive_quadruple_poly_15(SiteIndex(2), SiteIndex(3)) == poly("x^3 - 4*x^2 + (y^2 + 8*y - 80)*x - 4*y^2 + 64"));
  CHECK(derive_quadruple_poly_15(SiteIndex(3), SiteIndex(4)) == poly("x^3 - 12*x^2 + (y^2 + 24*y + 112)*x + 4*y^2 - 64"));
  CHECK_THROWS_AS(derive_quadruple_poly(SiteIndex(1), SiteIndex(2), SiteIndex(3), SiteIndex(5)), DomainError);
}

TEST_CASE("derivation listing order changes only a linear factor") {
  for (const char* name : {"2345", "1234", "1678", "5678"}) {
    std::vector<int> s = q(name).members();
    BivarPoly core = atlas_entry(q(name)).poly;
    int orders = 0;
    do {
      BivarPoly d = derive_quadruple_poly(SiteIndex(s[0]), SiteIndex(s[1]), SiteIndex(s[2]), SiteIndex(s[3]));
      auto quo = divide_up_to_scalar(d, core);
      REQUIRE(quo);
      CHECK(quo->total_degree() <= 1);
      ++orders;
    } while (std::next_permutation(s.begin(), s.end()));
    CHECK(orders == 24);
  }
}

TEST_CASE("verify_derivations") {
  CheckReport r = verify_derivations();
  CHECK(r.pass);
  std::map<std::string, BivarPoly> quotients;
  for (const auto& row : r.details["curves"]) {
    quotients[row["quadruple"]] = parse_bivar(row["quotient"].get<std::string>());
  }
  CHECK(quotients.size() == 10);
  CHECK(equal_up_to_scalar(quotients["2345"], poly("4 + y - x")));
  CHECK(equal_up_to_scalar(quotients["1245"], poly("x")));
  CHECK(equal_up_to_scalar(quotients["1568"], poly("x")));
  for (const char* c : {"1235", "1567", "1578", "1345"}) CHECK(quotients[c].total_degree() == 0);
}

TEST_CASE("atlas curves are cocircularity loci") {
  // Independent check: across each isolated root the fourth site crosses
  // the circle through the other three.
  std::mt19937_64 rng(41);
  int crossings = 0;
  for (int n = 0; n < 40; ++n) {
    Rational y = ratio(static_cast<long>(rng() % 3800) - 1900, 500);
    for (const auto& e : builtin_atlas()) {
      auto iv = theta(e.quadruple, y);
      if (!iv) continue;
      std::vector<int> s = e.quadruple.members();
      if (e.quadruple.contains(1) && e.quadruple.contains(5)) s = {s[0], s[1], s[3], s[2]};
      UniPoly p = e.poly.at_y(y);
      if (iv->exact) {
        CHECK(cocircularity({*iv->exact, y}, s) == 0);
      } else {
        IsolatingInterval r = refine(p, *iv, ratio(1, 1000000));
        CHECK(sgn(cocircularity({r.lo, y}, s)) * sgn(cocircularity({r.hi, y}, s)) == -1);
      }
      ++crossings;
    }
  }
  CHECK(crossings > 200);
}

TEST_CASE("theta") {
  auto a = theta(q("1235"), parse_rational("1.6"));
  REQUIRE(a);
  REQUIRE(a->exact);
  CHECK(*a->exact == ratio(4, 5));
  auto b = theta(q("1567"), parse_rational("1.6"));
  REQUIRE(b);
  REQUIRE(b->exact);
  CHECK(*b->exact == ratio(4, 5));
  CHECK(!theta(q("1568"), parse_rational("0.5")));
  // 1568 exists for 12 - 8 sqrt 2 < y < 8 - 4 sqrt 3, printed 0.685 and 1.07.
  CHECK(!theta(q("1568"), parse_rational("0.685")));
  CHECK(theta(q("1568"), parse_rational("0.687")));
  CHECK(theta(q("1568"), parse_rational("1.071")));
  CHECK(!theta(q("1568"), parse_rational("1.072")));
  CHECK_THROWS_AS(theta(q("1568"), Rational(4)), DomainError);
}

TEST_CASE("transitions") {
  const TripleSet& a = initial_state();
  CHECK(a == regions().at("A"));
  auto g = transition(a, q("1567"));
  REQUIRE(g);
  CHECK(*g == regions().at("G"));
  CHECK(*transition(*g, q("1567")) == a);
  CHECK(!transition(a, q("1568")));
  for (const auto& [name, state] : regions()) {
    for (const auto& e : builtin_atlas()) {
      if (auto next = transition(state, e.quadruple)) CHECK(*transition(*next, e.quadruple) == state);
    }
  }
}

TEST_CASE("region trees match the figure") {
  for (const auto& [name, state] : regions()) {
    LabeledTree t = tree_from_triples(state);
    CHECK(t.count_degree(3) == 6);
    CHECK(t.count_degree(1) == 8);
    CHECK_MESSAGE(is_isomorphic(t, fixture_tree("region_" + name)), name);
  }
}

TEST_CASE("curve trees by collapse") {
  LabeledTree b = tree_from_triples(regions().at("B"));
  int u = -1, v = -1;
  for (int i = 0; i < b.vertex_count(); ++i) {
    if (b.vertex(i).sites == q("158")) u = i;
    if (b.vertex(i).sites == q("568")) v = i;
  }
  REQUIRE(b.find_edge(u, v));
  LabeledTree bd = collapse_edge(b, u, v);
  CHECK(bd.count_degree(4) == 1);
  CHECK(is_isomorphic(bd, fixture_tree("curve_BD")));
}

TEST_CASE("region walks") {
  CHECK(sequence("2") == "A,G,F,E,D");
  CHECK(sequence("1") == "A,H,F,E,D");
  CHECK(sequence("0.705") == "A,H,C,I,E,D");
  CHECK(sequence("0.5") == "A,H,C,I,B");
  CHECK(sequence("3.99") == "A,G,F,E,D");
  CHECK(region_walk(parse_rational("3.99")).steps.back().state == regions().at("D"));
  // Coincident roots at y = 0 are crossed together.
  RegionWalk w0 = region_walk(Rational(0));
  REQUIRE(w0.steps.size() == 2);
  CHECK(w0.steps[0].quadruples.size() == 2);
  CHECK(w0.steps[1].quadruples.size() == 2);
}

TEST_CASE("property: walk states stay typed and lower half mirrors upper half") {
  // Walk states are checked against the typing rule inside region_walk.
  std::mt19937_64 rng(42);
  for (int n = 0; n < 60; ++n) {
    Rational y = ratio(static_cast<long>(rng() % 3998) + 1, 1000);
    RegionWalk up = region_walk(y);
    RegionWalk down = region_walk(-y);
    REQUIRE(up.steps.size() == down.steps.size());
    for (std::size_t i = 0; i < up.steps.size(); ++i) {
      CHECK(cubecut::apply(rho(), up.steps[i].state) == down.steps[i].state);
    }
  }
}

TEST_CASE("atlas_locate") {
  AtlasLocation a = atlas_locate({parse_rational("1.5"), parse_rational("0.5")});
  CHECK(a.kind == AtlasLocation::Kind::Region);
  CHECK(a.state == regions().at("A"));
  AtlasLocation p = atlas_locate({parse_rational("0.8"), parse_rational("1.6")});
  CHECK(p.kind == AtlasLocation::Kind::Point);
  CHECK(p.curves.size() == 2);
  CHECK(p.left_state == regions().at("F"));
  AtlasLocation c = atlas_locate({parse_rational("0.8"), parse_rational("1.5")});
  CHECK(c.kind == AtlasLocation::Kind::Region);
  CHECK_THROWS_AS(atlas_locate({Rational(0), Rational(1)}), DomainError);
}

TEST_CASE("orderings and the 0.83 bound") {
  CheckReport r = verify_orderings(8);
  CHECK(r.pass);
  std::vector<const char*> chain3 = {"1345", "2345", "1578", "1678", "5678", "1234", "1235", "1567"};
  std::vector<const char*> chain071 = {"2345", "1578", "1678", "5678", "1567", "1568", "1234", "1235"};
  for (auto [y, chain] : {std::pair{"3", chain3}, std::pair{"0.71", chain071}}) {
    Rational yy = parse_rational(y);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      auto a = theta(q(chain[i]), yy);
      auto b = theta(q(chain[i + 1]), yy);
      REQUIRE(a);
      REQUIRE(b);
      CHECK(compare_roots(atlas_entry(q(chain[i])).poly.at_y(yy), *a, atlas_entry(q(chain[i + 1])).poly.at_y(yy), *b) < 0);
    }
  }
}

TEST_CASE("remarkable point") {
  CheckReport r = verify_remarkable_point();
  CHECK(r.pass);
  CHECK(r.details["quotients"].size() == 5);
  CHECK(r.details["root_width"].get<double>() < 1e-9);
}

TEST_CASE("no mixed transitions") {
  CheckReport a = verify_no_mixed_transitions(64);
  CheckReport b = verify_no_mixed_transitions(128);
  CHECK(a.pass);
  CHECK(b.pass);
  REQUIRE(a.details["quadruples"].size() == 9);
  for (std::size_t i = 0; i < 9; ++i) CHECK(a.details["quadruples"][i]["sign"] == b.details["quadruples"][i]["sign"]);
  CHECK_THROWS_AS(verify_no_mixed_transitions(10), DomainError);
}
