#include "cubecut/atlas.hpp"

#include <algorithm>
#include <map>

#include "cubecut/errors.hpp"

namespace cubecut {

// Curve table ---------------------------------------------------------------

const std::vector<AtlasEntry>& builtin_atlas() {
  static const std::vector<AtlasEntry> entries = [] {
    struct Printed {
      const char* name;
      const char* quadruple;
      const char* poly;
    };
    const Printed printed[] = {
        {"BD,EI", "1568", "x^2 + y^2 - 24*y + 16"},
        {"DE,BI,CI'", "2345", "y^3 + (3*x + 12)*y^2 + (x^2 + 40*x - 16)*y + 3*x^3 - 44*x^2 + 304*x - 192"},
        {"EF", "1678", "y^3 + (x - 12)*y^2 + (x^2 + 8*x - 16)*y + x^3 - 20*x^2 - 240*x + 192"},
        {"FG,HA,CH'", "1235", "x^3 - 4*x^2 + (y^2 + 8*y - 80)*x - 4*y^2 + 64"},
        {"GA,FH", "1567", "x^3 - 12*x^2 + (y^2 - 24*y + 112)*x + 4*y^2 - 64"},
    };
    std::vector<AtlasEntry> out;
    for (const auto& p : printed) {
      out.push_back({p.name, SiteSet::parse(p.quadruple), parse_bivar(p.poly).primitive(), false});
    }
    for (const auto& p : printed) {
      out.push_back({std::string(p.name) + " reflected", apply(rho(), SiteSet::parse(p.quadruple)),
                     parse_bivar(p.poly).reflect_y().primitive(), true});
    }
    return out;
  }();
  return entries;
}

const AtlasEntry& atlas_entry(SiteSet quadruple) {
  for (const auto& e : builtin_atlas()) {
    if (e.quadruple == quadruple) return e;
  }
  throw DomainError("no atlas curve for quadruple " + quadruple.to_string());
}

// Symbolic derivation -------------------------------------------------------

std::pair<BivarPoly, BivarPoly> symbolic_site(int s) {
  const char* table[8][2] = {
      {"-16 - x", "-y"},    {"-12 - y", "12 + x"}, {"-8 + x", "16 + y"},  {"12 + y", "12 - x"},
      {"16 - x", "-y"},     {"12 - y", "-12 + x"}, {"-8 + x", "-16 + y"}, {"-12 + y", "-12 - x"},
  };
  SiteIndex checked(s);
  return {parse_bivar(table[checked.value() - 1][0]), parse_bivar(table[checked.value() - 1][1])};
}

namespace {

struct Fraction {
  BivarPoly num;
  BivarPoly den;
};

}  // namespace

BivarPoly derive_quadruple_poly(SiteIndex a, SiteIndex b, SiteIndex c, SiteIndex d) {
  SiteSet q{a.value(), b.value(), c.value(), d.value()};
  if (q.size() != 4) throw DomainError("derive_quadruple_poly needs four distinct sites");
  if (q.contains(1) && q.contains(5)) throw DomainError("quadruples holding 1 and 5 use derive_quadruple_poly_15");
  // Reduction to lowest terms fixes num/den only up to a common scalar, so
  // rebuild the fraction exactly: num / den = (N/g) / (D/g) with the same g.
  auto exact = [](int i, int j, int k) {
    auto [va, wa] = symbolic_site(i);
    auto [vb, wb] = symbolic_site(j);
    auto [vc, wc] = symbolic_site(k);
    BivarPoly two = BivarPoly::constant(Integer(2));
    BivarPoly a1 = two * (vb - va), b1 = two * (wb - wa), c1 = vb * vb + wb * wb - va * va - wa * wa;
    BivarPoly a2 = two * (vc - va), b2 = two * (wc - wa), c2 = vc * vc + wc * wc - va * va - wa * wa;
    BivarPoly den = a1 * b2 - b1 * a2;
    if (den.is_zero()) throw SymbolicDegeneracy("sites " + std::to_string(i) + std::to_string(j) + std::to_string(k) + " are collinear identically");
    BivarPoly num = c1 * b2 - b1 * c2;
    BivarPoly g = gcd(num, den);
    return Fraction{*divide_exact(num, g), *divide_exact(den, g)};
  };
  Fraction A = exact(a.value(), b.value(), c.value());
  Fraction B = exact(a.value(), b.value(), d.value());
  BivarPoly n = A.num * B.den - B.num * A.den;
  if (n.is_zero()) throw SymbolicDegeneracy("circumcenters coincide identically");
  return n.primitive();
}

BivarPoly derive_quadruple_poly_15(SiteIndex b, SiteIndex c) {
  SiteSet q{1, 5, b.value(), c.value()};
  if (q.size() != 4) throw DomainError("derive_quadruple_poly_15 needs b, c outside {1, 5}");
  auto [v1, w1] = symbolic_site(1);
  auto [vb, wb] = symbolic_site(b.value());
  auto [vc, wc] = symbolic_site(c.value());
  BivarPoly two = BivarPoly::constant(Integer(2));
  BivarPoly a1 = two * (vb - v1), b1 = two * (wb - w1), c1 = vb * vb + wb * wb - v1 * v1 - w1 * w1;
  BivarPoly a2 = two * (vc - v1), b2 = two * (wc - w1), c2 = vc * vc + wc * wc - v1 * v1 - w1 * w1;
  BivarPoly den = a1 * b2 - b1 * a2;
  if (den.is_zero()) throw SymbolicDegeneracy("sites 1" + b.value() + std::to_string(c.value()) + " are collinear identically");
  BivarPoly num = c1 * b2 - b1 * c2;
  BivarPoly g = gcd(num, den);
  BivarPoly n = *divide_exact(num, g);
  BivarPoly d = *divide_exact(den, g);
  // The bisector of sites 1 and 5 is v = -x.
  BivarPoly out = n + BivarPoly::x() * d;
  if (out.is_zero()) throw SymbolicDegeneracy("condition vanishes identically");
  return out.primitive();
}

BivarPoly derive_for(SiteSet q) {
  if (q.size() != 4) throw DomainError("quadruple must have four sites");
  auto m = q.members();
  if (q.contains(1) && q.contains(5)) {
    std::vector<int> rest;
    for (int s : m) {
      if (s != 1 && s != 5) rest.push_back(s);
    }
    return derive_quadruple_poly_15(SiteIndex(rest[0]), SiteIndex(rest[1]));
  }
  return derive_quadruple_poly(SiteIndex(m[0]), SiteIndex(m[1]), SiteIndex(m[2]), SiteIndex(m[3]));
}

CheckReport verify_derivations() {
  CheckReport r{"derivations", true, nlohmann::json::object()};
  r.details["curves"] = nlohmann::json::array();
  for (const auto& e : builtin_atlas()) {
    BivarPoly derived = derive_for(e.quadruple);
    auto quotient = divide_up_to_scalar(derived, e.poly);
    nlohmann::json row{{"quadruple", e.quadruple.to_string()}, {"derived", derived.to_string()}};
    if (!quotient) {
      r.fail(e.quadruple.to_string() + ": derived polynomial is not a multiple of the atlas curve");
      row["quotient"] = nullptr;
    } else {
      row["quotient"] = quotient->to_string();
      if (quotient->total_degree() > 1) r.fail(e.quadruple.to_string() + ": quotient degree above 1");
    }
    r.details["curves"].push_back(row);
  }
  return r;
}

// Roots and transitions ----------------------------------------------------

std::optional<IsolatingInterval> theta(SiteSet q, const Rational& y) {
  if (abs(y) >= 4) throw DomainError("theta needs |y| < 4");
  const auto& e = atlas_entry(q);
  UniPoly p = e.poly.at_y(y);
  if (p.is_zero()) throw MultipleRoots("curve " + q.to_string() + " contains the whole line");
  auto roots = isolate_roots(p, Rational(0), Rational(4 - abs(y)));
  if (roots.empty()) return std::nullopt;
  if (roots.size() > 1) {
    throw MultipleRoots("curve " + q.to_string() + " has " + std::to_string(roots.size()) + " roots at y = " + to_string(y));
  }
  IsolatingInterval iv = roots.front();
  if (!iv.exact) iv.exact = rational_root(p, iv);
  return iv;
}

const TripleSet& initial_state() {
  static const TripleSet a = TripleSet::parse("123 135 345 157 567 178");
  return a;
}

namespace {

bool typed(SiteSet t) {
  static const SiteSet left{1, 2, 3, 4, 5};
  static const SiteSet right{5, 6, 7, 8, 1};
  return t.subset_of(left) || t.subset_of(right);
}

}  // namespace

LabeledTree tree_from_triples(const TripleSet& state) {
  LabeledTree t;
  const auto& triples = state.triples();
  for (const auto& tr : triples) t.add_vertex(std::nullopt, tr);
  for (int a = 1; a <= 8; ++a) {
    for (int b = a + 1; b <= 8; ++b) {
      SiteSet pair{a, b};
      std::vector<int> holders;
      for (std::size_t i = 0; i < triples.size(); ++i) {
        if (pair.subset_of(triples[i])) holders.push_back(static_cast<int>(i));
      }
      bool adj = b == a + 1 || (a == 1 && b == 8);
      if (adj) {
        if (holders.size() != 1) throw InvariantViolation("adjacent pair " + pair.to_string() + " not on exactly one vertex");
        int first = (b == a + 1) ? a : b;
        int leaf = t.add_vertex(leaf_corner(SiteIndex(first)).value(), pair);
        t.add_edge(holders[0], leaf);
      } else if (holders.size() == 2) {
        t.add_edge(holders[0], holders[1]);
      } else if (!holders.empty()) {
        throw InvariantViolation("pair " + pair.to_string() + " on " + std::to_string(holders.size()) + " vertices");
      }
    }
  }
  t.validate();
  return t;
}

std::optional<TripleSet> transition(const TripleSet& state, SiteSet q) {
  if (q.size() != 4) throw DomainError("transition needs a quadruple");
  std::vector<SiteSet> inside;
  for (const auto& t : state.triples()) {
    if (t.subset_of(q)) inside.push_back(t);
  }
  if (inside.size() != 2) return std::nullopt;
  if ((inside[0] & inside[1]).size() != 2) throw InvariantViolation("matching triples do not share a pair");
  LabeledTree tree = tree_from_triples(state);
  std::optional<int> ia, ib;
  for (int v = 0; v < tree.vertex_count(); ++v) {
    if (tree.vertex(v).sites == inside[0] && !tree.vertex(v).corner) ia = v;
    if (tree.vertex(v).sites == inside[1] && !tree.vertex(v).corner) ib = v;
  }
  if (!ia || !ib || !tree.find_edge(*ia, *ib)) {
    throw InvariantViolation("transition " + q.to_string() + " on non-adjacent vertices of " + state.to_string());
  }
  TripleSet next = state.without(inside[0]).without(inside[1]);
  for (int drop : q.members()) {
    SiteSet t = SiteSet::from_mask(static_cast<std::uint16_t>(q.mask() & ~(1U << drop)));
    if (t != inside[0] && t != inside[1]) next = next.with(t);
  }
  return next;
}

// Region walk ---------------------------------------------------------------

namespace {

struct Root {
  SiteSet q;
  UniPoly poly;
  IsolatingInterval iv;
};

std::vector<std::vector<Root>> sorted_root_groups(const Rational& y) {
  std::vector<Root> roots;
  for (const auto& e : builtin_atlas()) {
    auto iv = theta(e.quadruple, y);
    if (iv) roots.push_back({e.quadruple, e.poly.at_y(y), *iv});
  }
  // Insertion sort, descending; compare_roots refines intervals in place.
  for (std::size_t i = 1; i < roots.size(); ++i) {
    for (std::size_t j = i; j > 0; --j) {
      int c = compare_roots(roots[j - 1].poly, roots[j - 1].iv, roots[j].poly, roots[j].iv);
      if (c < 0 || (c == 0 && roots[j].q < roots[j - 1].q)) {
        std::swap(roots[j - 1], roots[j]);
      } else {
        break;
      }
    }
  }
  std::vector<std::vector<Root>> groups;
  for (auto& r : roots) {
    if (!groups.empty()) {
      Root& last = groups.back().back();
      if (compare_roots(last.poly, last.iv, r.poly, r.iv) == 0) {
        groups.back().push_back(std::move(r));
        continue;
      }
    }
    groups.push_back({std::move(r)});
  }
  return groups;
}

void check_typing(const TripleSet& s) {
  for (const auto& t : s.triples()) {
    if (!typed(t)) throw InvariantViolation("triple " + t.to_string() + " mixes both sides");
  }
}

// -1, 0, 1 as x is left of, on, or right of the root isolated by iv.
int side_of(const UniPoly& p, IsolatingInterval iv, const Rational& x) {
  while (true) {
    if (iv.exact) return x < *iv.exact ? -1 : (x == *iv.exact ? 0 : 1);
    if (x <= iv.lo) return -1;
    if (x >= iv.hi) return 1;
    if (p(x) == 0) return 0;
    iv = refine(p, iv, iv.width() / 4);
  }
}

}  // namespace

RegionWalk region_walk(const Rational& y) {
  RegionWalk w{y, initial_state(), {}, {}};
  TripleSet state = initial_state();
  for (const auto& group : sorted_root_groups(y)) {
    WalkStep step{{}, group.front().iv, state};
    for (const auto& r : group) {
      auto next = transition(state, r.q);
      if (next) {
        state = *next;
        check_typing(state);
        step.quadruples.push_back(r.q);
      } else {
        w.ineffective.push_back(r.q);
      }
    }
    if (!step.quadruples.empty()) {
      step.state = state;
      w.steps.push_back(std::move(step));
    }
  }
  return w;
}

AtlasLocation atlas_locate(const FacePoint& p) {
  if (!(p.x > 0 && p.x < 4 - abs(p.y))) throw DomainError("atlas_locate needs an interior point of Q1");
  TripleSet state = initial_state();
  for (const auto& group : sorted_root_groups(p.y)) {
    int side = side_of(group.front().poly, group.front().iv, p.x);
    if (side > 0) break;
    TripleSet before = state;
    std::vector<SiteSet> effective;
    for (const auto& r : group) {
      if (auto next = transition(state, r.q)) {
        state = *next;
        effective.push_back(r.q);
      }
    }
    if (side == 0 && !effective.empty()) {
      auto kind = effective.size() == 1 ? AtlasLocation::Kind::Curve : AtlasLocation::Kind::Point;
      return {kind, before, state, effective};
    }
  }
  return {AtlasLocation::Kind::Region, state, state, {}};
}

// Verification --------------------------------------------------------------

namespace {

// Rational strictly between the isolated root and the given side.
Rational inner_bound(const UniPoly& p, IsolatingInterval iv, bool above) {
  iv = refine(p, iv, ratio(1, 1000000000000L));
  return above ? iv.hi : iv.lo;
}

IsolatingInterval single_root(const UniPoly& p, const Rational& lo, const Rational& hi) {
  auto roots = isolate_roots(p, lo, hi);
  if (roots.size() != 1) throw InvariantViolation("expected a single root of " + p.to_string());
  return roots.front();
}

bool root_below(const UniPoly& p, IsolatingInterval iv, const Rational& bound) {
  return side_of(p, iv, bound) > 0;
}

}  // namespace

CheckReport verify_orderings(int samples_per_range) {
  CheckReport r{"orderings", true, nlohmann::json::object()};
  UniPoly remarkable = UniPoly::from_descending({1, -12, 8});
  UniPoly bdei = UniPoly::from_descending({37, -816, 304, -3456, 2560});
  IsolatingInterval r7 = single_root(remarkable, Rational(0), Rational(1));
  IsolatingInterval rb = single_root(bdei, Rational(0), Rational(1));
  // theta_1568 overtakes theta_1234 here, before y = 0.715.
  UniPoly swap = UniPoly::from_descending({1, 0, 880, -4224, 2560});
  IsolatingInterval rs = single_root(swap, ratio(7085, 10000), ratio(715, 1000));

  struct Chain {
    const char* name;
    Rational lo, hi;
    std::vector<const char*> order;
  };
  std::vector<Chain> chains = {
      {"1.6<y<4", ratio(8, 5), Rational(4), {"1345", "2345", "1578", "1678", "5678", "1234", "1235", "1567"}},
      {"6-2sqrt7<y<0.7116", inner_bound(remarkable, r7, true), inner_bound(swap, rs, false),
       {"2345", "1578", "1678", "5678", "1567", "1568", "1234", "1235"}},
      {"0.7116<y<0.715", inner_bound(swap, rs, true), ratio(143, 200),
       {"2345", "1578", "1678", "5678", "1567", "1234", "1568", "1235"}},
      {"0.7045<y<6-2sqrt7", inner_bound(bdei, rb, true), inner_bound(remarkable, r7, false),
       {"2345", "1568", "1567", "5678", "1678", "1578", "1234", "1235"}},
  };
  r.details["chains"] = nlohmann::json::array();
  r.details["swap_1568_1234"] = refine(swap, rs, ratio(1, 100000000)).approx();
  for (const auto& c : chains) {
    int checked = 0;
    for (int k = 1; k <= samples_per_range; ++k) {
      Rational y = c.lo + (c.hi - c.lo) * ratio(k, samples_per_range + 1);
      std::vector<Root> roots;
      bool complete = true;
      for (const char* q : c.order) {
        SiteSet s = SiteSet::parse(q);
        auto iv = theta(s, y);
        if (!iv) {
          r.fail(std::string(c.name) + ": no root for " + q + " at y = " + to_string(y));
          complete = false;
          break;
        }
        roots.push_back({s, atlas_entry(s).poly.at_y(y), *iv});
      }
      if (!complete) continue;
      for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
        if (compare_roots(roots[i].poly, roots[i].iv, roots[i + 1].poly, roots[i + 1].iv) >= 0) {
          r.fail(std::string(c.name) + ": " + roots[i].q.to_string() + " not below " + roots[i + 1].q.to_string() +
                 " at y = " + to_string(y));
        }
      }
      ++checked;
    }
    r.details["chains"].push_back({{"range", c.name}, {"samples", checked}});
  }

  const char* eight[] = {"1345", "2345", "1578", "1678", "5678", "1234", "1235", "1567"};
  Rational bound = ratio(83, 100);
  int bounded = 0;
  double largest = 0.0;
  for (int k = 0; k <= 4 * samples_per_range; ++k) {
    Rational y = ratio(4 * k, 4 * samples_per_range + 1);
    for (const char* q : eight) {
      SiteSet s = SiteSet::parse(q);
      auto iv = theta(s, y);
      if (!iv) {
        if (y > 0) r.fail(std::string("no root for ") + q + " at y = " + to_string(y));
        continue;
      }
      UniPoly p = atlas_entry(s).poly.at_y(y);
      if (!root_below(p, *iv, bound)) r.fail(std::string(q) + " exceeds 0.83 at y = " + to_string(y));
      largest = std::max(largest, refine(p, *iv, ratio(1, 1000000)).approx());
      ++bounded;
    }
  }
  r.details["bound_0_83"] = {{"roots_checked", bounded}, {"largest_theta", largest}};
  return r;
}

CheckReport verify_remarkable_point() {
  CheckReport r{"remarkable_point", true, nlohmann::json::object()};
  UniPoly target = UniPoly::from_descending({1, -12, 8});
  struct Source {
    const char* quadruple;
    BivarPoly poly;
  };
  std::vector<Source> sources = {
      {"1567", derive_for(SiteSet::parse("1567"))},
      {"1678", atlas_entry(SiteSet::parse("1678")).poly},
      {"1568", derive_for(SiteSet::parse("1568"))},
      {"1578", derive_for(SiteSet::parse("1578"))},
      {"5678", atlas_entry(SiteSet::parse("5678")).poly},
  };
  r.details["quotients"] = nlohmann::json::object();
  for (const auto& s : sources) {
    UniPoly diag = s.poly.on_diagonal();
    auto [quo, rem] = divmod(diag, target);
    if (!rem.is_zero()) r.fail(std::string(s.quadruple) + ": not divisible by x^2 - 12x + 8");
    if (quo.degree() != 1) r.fail(std::string(s.quadruple) + ": quotient is not linear");
    r.details["quotients"][s.quadruple] = quo.to_string();
  }
  auto roots = isolate_roots(target, Rational(0), Rational(1));
  if (roots.size() != 1) {
    r.fail("x^2 - 12x + 8 should have one root in (0, 1)");
    return r;
  }
  IsolatingInterval iv = refine(target, roots.front(), ratio(1, 10000000000L));
  // lo < 6 - 2 sqrt 7 < hi  <=>  (6 - lo)^2 > 28 > (6 - hi)^2 with both sides positive.
  Rational a = 6 - iv.lo, b = 6 - iv.hi;
  bool contains = a * a > 28 && b * b < 28 && b > 0;
  if (!contains) r.fail("isolated root does not bracket 6 - 2 sqrt 7");
  r.details["root_interval"] = {to_string(iv.lo), to_string(iv.hi)};
  r.details["root_width"] = to_double(iv.width());
  return r;
}

CheckReport verify_no_mixed_transitions(int grid_n) {
  CheckReport r{"no_mixed_transitions", true, nlohmann::json::object()};
  if (grid_n < 64) throw DomainError("grid_n must be at least 64");
  r.details["grid_n"] = grid_n;
  r.details["quadruples"] = nlohmann::json::array();
  for (int a : {2, 3, 4}) {
    for (int b : {6, 7, 8}) {
      SiteSet q{1, 5, a, b};
      BivarPoly p = derive_quadruple_poly_15(SiteIndex(a), SiteIndex(b));
      int sign = 0;
      bool constant = true;
      Rational min_abs;
      bool have_min = false;
      int samples = 0, line_roots = 0;
      for (int j = 1; j < grid_n; ++j) {
        Rational y = Rational(-4) + ratio(8 * j, grid_n);
        Rational xmax = 4 - abs(y);
        UniPoly row = p.at_y(y);
        line_roots += static_cast<int>(isolate_roots(row, Rational(0), xmax).size());
        for (int i = 1; i < grid_n; ++i) {
          Rational x = ratio(4 * i, grid_n);
          if (x >= xmax) break;
          Rational v = row(x);
          int s = sgn(v);
          if (s == 0 || (sign != 0 && s != sign)) constant = false;
          if (sign == 0) sign = s;
          Rational m = abs(v);
          if (!have_min || m < min_abs) {
            min_abs = m;
            have_min = true;
          }
          ++samples;
        }
      }
      for (int i = 1; i < grid_n; ++i) {
        Rational x = ratio(4 * i, grid_n);
        Rational ymax = 4 - x;
        if (ymax <= 0) continue;
        line_roots += static_cast<int>(isolate_roots(p.at_x(x), -ymax, ymax).size());
      }
      if (!constant) r.fail(q.to_string() + ": sign change on the grid");
      if (line_roots != 0) r.fail(q.to_string() + ": roots on grid lines inside Q1");
      r.details["quadruples"].push_back({{"quadruple", q.to_string()},
                                         {"polynomial", p.to_string()},
                                         {"sign", sign},
                                         {"samples", samples},
                                         {"min_abs", have_min ? to_double(min_abs) : 0.0},
                                         {"gridline_roots", line_roots}});
    }
  }
  return r;
}

}  // namespace cubecut
