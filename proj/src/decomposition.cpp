#include "cubecut/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "cubecut/atlas.hpp"
#include "cubecut/errors.hpp"

namespace cubecut {

// Names ---------------------------------------------------------------------

namespace {

const char* kind_name(CellKind k) {
  switch (k) {
    case CellKind::Region:
      return "region";
    case CellKind::Curve:
      return "curve";
    case CellKind::Point:
      return "point";
  }
  return "?";
}

bool symmetric_region(const std::string& name) { return name == "A" || name == "B" || name == "C"; }

std::string prime(const std::string& region) {
  if (symmetric_region(region)) return region;
  if (!region.empty() && region.back() == '\'') return region.substr(0, region.size() - 1);
  return region + "'";
}

std::string fixture_stem(const std::string& name) {
  std::string out;
  for (char c : name) out += c == '\'' ? 'p' : c;
  return out;
}

}  // namespace

std::string CellId::to_string() const {
  return std::string(kind_name(kind)) + " " + name + " q" + std::to_string(quadrant);
}

CellId parse_cell_id(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string kind, name, quadrant;
  if (!(in >> kind >> name >> quadrant) || quadrant.size() != 2 || quadrant[0] != 'q' || quadrant[1] < '0' ||
      quadrant[1] > '3') {
    throw ParseError("cell id must look like 'curve BD q2': '" + std::string(text) + "'");
  }
  CellKind k;
  if (kind == "region") {
    k = CellKind::Region;
  } else if (kind == "curve") {
    k = CellKind::Curve;
  } else if (kind == "point") {
    k = CellKind::Point;
  } else {
    throw ParseError("unknown cell kind '" + kind + "'");
  }
  return {k, quadrant[1] - '0', name};
}

CellClass class_of(const LabeledTree& t) {
  CellClass c{canonical_form(t), t.count_degree(3), 0};
  for (const auto& [d, n] : t.degree_histogram()) {
    if (d >= 4) c.degree4_count += n;
  }
  return c;
}

const CellInfo& Catalog::at(const CellId& id) const {
  auto it = cells.find(id);
  if (it == cells.end()) throw DomainError("no cell " + id.to_string());
  return it->second;
}

std::string Catalog::class_id(const CanonicalForm& c) const {
  auto it = class_ids.find(c);
  return it == class_ids.end() ? std::string() : it->second;
}

// Tables ---------------------------------------------------------------------

namespace {

const std::map<std::string, TripleSet>& region_table() {
  static const std::map<std::string, TripleSet> table = [] {
    std::map<std::string, TripleSet> t = {
        {"A", TripleSet::parse("123 135 345 157 567 178")}, {"B", TripleSet::parse("125 234 245 158 568 678")},
        {"C", TripleSet::parse("125 235 345 158 567 578")}, {"D", TripleSet::parse("125 234 245 156 168 678")},
        {"E", TripleSet::parse("125 235 345 156 168 678")}, {"F", TripleSet::parse("125 235 345 156 167 178")},
        {"G", TripleSet::parse("123 135 345 156 167 178")}, {"H", TripleSet::parse("125 235 345 157 567 178")},
        {"I", TripleSet::parse("125 235 345 158 568 678")},
    };
    for (const char* n : {"D", "E", "F", "G", "H", "I"}) t[prime(n)] = cubecut::apply(rho(), t.at(n));
    for (const char* n : {"A", "B", "C"}) {
      if (cubecut::apply(rho(), t.at(n)) != t.at(n)) throw InvariantViolation(std::string("region ") + n + " is not symmetric");
    }
    return t;
  }();
  return table;
}

}  // namespace

const std::vector<std::string>& region_names() {
  static const std::vector<std::string> names = {"A", "B", "C", "D", "E", "F", "G", "H", "I",
                                                 "D'", "E'", "F'", "G'", "H'", "I'"};
  return names;
}

const TripleSet& region_triples(const std::string& name) {
  auto it = region_table().find(name);
  if (it == region_table().end()) throw DomainError("no region named '" + name + "'");
  return it->second;
}

std::optional<std::string> region_name(const TripleSet& triples) {
  for (const auto& [name, t] : region_table()) {
    if (t == triples) return name;
  }
  return std::nullopt;
}

const std::vector<PortionSpec>& portion_specs() {
  static const std::vector<PortionSpec> specs = [] {
    struct Printed {
      const char* quadruple;
      const char* left;
      const char* right;
    };
    const Printed printed[] = {
        {"1568", "B", "D"}, {"1568", "E", "I"}, {"2345", "D", "E"},  {"2345", "B", "I"},
        {"2345", "C", "I'"}, {"1678", "E", "F"}, {"1235", "F", "G"}, {"1235", "H", "A"},
        {"1235", "C", "H'"}, {"1567", "G", "A"}, {"1567", "F", "H"},
    };
    std::vector<PortionSpec> out;
    for (const auto& p : printed) out.push_back({std::string(p.left) + p.right, SiteSet::parse(p.quadruple), p.left, p.right});
    for (const auto& p : printed) {
      std::string l = prime(p.left), r = prime(p.right);
      out.push_back({l + r, cubecut::apply(rho(), SiteSet::parse(p.quadruple)), l, r});
    }
    return out;
  }();
  return specs;
}

const std::vector<PointSpec>& point_specs() {
  static const std::vector<PointSpec> specs = [] {
    auto sets = [](std::initializer_list<const char*> items) {
      std::vector<SiteSet> out;
      for (const char* s : items) out.push_back(SiteSet::parse(s));
      std::sort(out.begin(), out.end());
      return out;
    };
    std::vector<PointSpec> upper = {
        {"BDEI", sets({"1568", "2345"}), {"B", "D", "E", "I"}},
        {"EFHCI", sets({"15678"}), {"E", "F", "H", "C", "I"}},
        {"FGHA", sets({"1235", "1567"}), {"F", "G", "H", "A"}},
    };
    std::vector<PointSpec> out;
    for (const auto& p : upper) {
      out.push_back({p.name + "+", p.groups, p.regions});
      std::vector<SiteSet> g;
      for (auto s : p.groups) g.push_back(cubecut::apply(rho(), s));
      std::sort(g.begin(), g.end());
      std::vector<std::string> r;
      for (const auto& n : p.regions) r.push_back(prime(n));
      out.push_back({p.name + "-", g, r});
    }
    out.push_back({"BII'C", sets({"2345", "5678"}), {"B", "I", "I'", "C"}});
    out.push_back({"CHH'A", sets({"1235", "1578"}), {"C", "H", "H'", "A"}});
    return out;
  }();
  return specs;
}

namespace {

const PortionSpec* portion_between(const std::string& a, const std::string& b) {
  for (const auto& p : portion_specs()) {
    if ((p.left == a && p.right == b) || (p.left == b && p.right == a)) return &p;
  }
  return nullptr;
}

const PointSpec* point_with_groups(const std::vector<SiteSet>& groups) {
  for (const auto& p : point_specs()) {
    if (p.groups == groups) return &p;
  }
  return nullptr;
}

std::vector<SiteSet> high_degree_sites(const CutLocusGraph& g) {
  std::vector<SiteSet> out;
  for (const auto& v : g.vertices) {
    if (v.degree >= 4) out.push_back(v.sites);
  }
  std::sort(out.begin(), out.end());
  return out;
}

TripleSet degree3_triples(const CutLocusGraph& g) {
  std::vector<SiteSet> t;
  for (const auto& v : g.vertices) {
    if (v.degree == 3) t.push_back(v.sites);
  }
  return TripleSet(t);
}

Permutation sigma_power(int i) { return power(sigma(), i); }

bool on_face_boundary(const FacePoint& p) { return p.x == 0 || p.x == 8 || p.y == 4 || p.y == -4; }
bool on_diagonal(const FacePoint& p) { return p.y == 4 - p.x || p.y == p.x - 4; }

const FacePoint& center() {
  static const FacePoint c{Rational(4), Rational(0)};
  return c;
}

}  // namespace

// Classification -------------------------------------------------------------

namespace {

struct Q1Identity {
  CellKind kind;
  std::string name;
  std::vector<std::string> regions;  // adjacent regions for curves
};

// Cell of an interior Q1 point from its cut locus alone.
Q1Identity identify(const CutLocusGraph& g) {
  auto high = high_degree_sites(g);
  TripleSet triples = degree3_triples(g);
  if (high.empty()) {
    auto name = region_name(triples);
    if (!name) throw InvariantViolation("cut locus triples " + triples.to_string() + " match no region");
    return {CellKind::Region, *name, {*name}};
  }
  if (high.size() == 1 && high[0].size() == 4) {
    SiteSet q = high[0];
    std::vector<SiteSet> sub;
    for (int s : q.members()) sub.push_back(SiteSet::from_mask(static_cast<std::uint16_t>(q.mask() & ~(1U << s))));
    std::vector<std::string> sides;
    for (std::size_t i = 0; i < sub.size(); ++i) {
      for (std::size_t j = i + 1; j < sub.size(); ++j) {
        if (auto n = region_name(triples.with(sub[i]).with(sub[j]))) sides.push_back(*n);
      }
    }
    if (sides.size() != 2) {
      throw InvariantViolation("degree-4 vertex " + q.to_string() + " borders " + std::to_string(sides.size()) + " regions");
    }
    const PortionSpec* p = portion_between(sides[0], sides[1]);
    if (!p || p->quadruple != q) throw InvariantViolation("no curve between " + sides[0] + " and " + sides[1]);
    return {CellKind::Curve, p->name, sides};
  }
  const PointSpec* p = point_with_groups(high);
  if (!p) {
    std::string text;
    for (auto s : high) text += " " + s.to_string();
    throw InvariantViolation("no intersection point with cocircular sets" + text);
  }
  return {CellKind::Point, p->name, p->regions};
}

void cross_check(const FacePoint& q1, const Q1Identity& id) {
  AtlasLocation loc = atlas_locate(q1);
  auto mismatch = [&](const std::string& what) {
    throw ClassifierMismatch("at (" + to_string(q1.x) + ", " + to_string(q1.y) + ") cut locus gives " +
                             std::string(kind_name(id.kind)) + " " + id.name + " but the region walk gives " + what);
  };
  auto name_of = [&](const TripleSet& t) {
    auto n = region_name(t);
    if (!n) mismatch("unknown state " + t.to_string());
    return *n;
  };
  switch (id.kind) {
    case CellKind::Region:
      if (loc.kind != AtlasLocation::Kind::Region) mismatch("a boundary");
      if (name_of(loc.state) != id.name) mismatch("region " + name_of(loc.state));
      break;
    case CellKind::Curve: {
      if (loc.kind != AtlasLocation::Kind::Curve) mismatch(loc.kind == AtlasLocation::Kind::Region ? "a region" : "a point");
      std::set<std::string> walk{name_of(loc.left_state), name_of(loc.state)};
      std::set<std::string> direct(id.regions.begin(), id.regions.end());
      if (walk != direct) mismatch("curve between " + *walk.begin() + " and " + *walk.rbegin());
      break;
    }
    case CellKind::Point: {
      if (loc.kind != AtlasLocation::Kind::Point) mismatch("no intersection point");
      const PointSpec* p = nullptr;
      for (const auto& s : point_specs()) {
        if (s.name == id.name) p = &s;
      }
      for (auto c : loc.curves) {
        bool inside = std::any_of(p->groups.begin(), p->groups.end(), [&](SiteSet g) { return c.subset_of(g); });
        if (!inside) mismatch("curve " + c.to_string() + " through the point");
      }
      break;
    }
  }
}

int corner_quadrant(const FacePoint& p) {
  for (int i = 0; i < 4; ++i) {
    if (rotate({Rational(0), Rational(4)}, i) == p) return i;
  }
  throw DomainError("not a face corner");
}

}  // namespace

LabeledTree face_tree(const FacePoint& p) {
  if (!in_face(p)) throw DomainError("point outside the face");
  if (is_face_corner(p)) return cubecut::apply(sigma_power(corner_quadrant(p)), fixture_tree("point_corner"));
  auto [q1, i] = reduce_to_q1(p);
  LabeledTree t = to_labeled_tree(compute_cut_locus(q1));
  return i == 0 ? t : cubecut::apply(sigma_power(i), t);
}

Classification classify(const FacePoint& p) {
  if (!in_face(p)) throw DomainError("point (" + to_string(p.x) + ", " + to_string(p.y) + ") is outside the face");
  if (is_face_corner(p)) {
    int i = corner_quadrant(p);
    LabeledTree t = cubecut::apply(sigma_power(i), fixture_tree("point_corner"));
    return {{CellKind::Point, i, "corner"}, class_of(t), t, std::nullopt};
  }
  auto [q1, i] = reduce_to_q1(p);
  CutLocusGraph g = compute_cut_locus(q1);
  LabeledTree t = to_labeled_tree(g);
  if (i != 0) t = cubecut::apply(sigma_power(i), t);
  CellId id{CellKind::Region, i, ""};
  if (p == center()) {
    id = {CellKind::Point, 0, "center"};
  } else if (on_face_boundary(p)) {
    id = {CellKind::Curve, i, "edge"};
  } else if (on_diagonal(p)) {
    id = {CellKind::Curve, q1.y > 0 ? i : (i + 3) % 4, "half-diagonal"};
  } else {
    Q1Identity q = identify(g);
    cross_check(q1, q);
    id = {q.kind, i, q.name};
  }
  return {id, class_of(t), t, std::move(g)};
}

void check_against(const Catalog& catalog, const Classification& c) {
  const CellInfo& info = catalog.at(c.id);
  if (info.cls.canonical != c.cls.canonical) {
    throw ClassifierMismatch(c.id.to_string() + ": computed class differs from the catalog");
  }
}

LabeledTree contract_short_edges(const CutLocusGraph& g, const Rational& max_len2) {
  LabeledTree t = to_labeled_tree(g);
  std::vector<std::pair<int, int>> shortest;
  for (const auto& e : g.edges) {
    if (norm2(g.vertices[e.from].pos - g.vertices[e.to].pos) < max_len2) shortest.emplace_back(e.from, e.to);
  }
  return collapse_edges(t, shortest);
}

// Catalog construction -------------------------------------------------------

namespace {

// Tree of a region with the edges inside each cocircular set contracted.
LabeledTree collapse_region(const std::string& region, const std::vector<SiteSet>& groups) {
  LabeledTree t = tree_from_triples(region_triples(region));
  std::vector<std::pair<int, int>> edges;
  for (auto [a, b] : t.edges()) {
    if (t.vertex(a).corner || t.vertex(b).corner) continue;
    for (auto g : groups) {
      if (t.vertex(a).sites.subset_of(g) && t.vertex(b).sites.subset_of(g)) edges.emplace_back(a, b);
    }
  }
  return collapse_edges(t, edges);
}

std::vector<SiteSet> high_degree_sites(const LabeledTree& t) {
  std::vector<SiteSet> out;
  for (int v = 0; v < t.vertex_count(); ++v) {
    if (t.degree(v) >= 4) out.push_back(t.vertex(v).sites);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct ScanResult {
  std::map<std::string, std::vector<Rational>> portion_ys;
  struct Rep {
    FacePoint p;
    Rational gap;
  };
  std::map<std::string, Rep> region_reps;
};

Rational upper_end(const IsolatingInterval& iv) { return iv.exact ? *iv.exact : iv.hi; }
Rational lower_end(const IsolatingInterval& iv) { return iv.exact ? *iv.exact : iv.lo; }

ScanResult scan_walks(CheckReport& report) {
  std::vector<Rational> ys;
  for (int k = 1; k < 256; ++k) {
    ys.push_back(ratio(k, 64));
    ys.push_back(ratio(-k, 64));
  }
  // The EI, BD and CI portions are thin near |y| = 0.7.
  for (int j = 0; j <= 164; ++j) {
    ys.push_back(ratio(2785 + j, 4096));
    ys.push_back(ratio(-2785 - j, 4096));
  }
  ScanResult out;
  int walks = 0, crossings = 0;
  for (const auto& y : ys) {
    RegionWalk w = region_walk(y);
    ++walks;
    auto name = [&](const TripleSet& t) {
      auto n = region_name(t);
      if (!n) throw InvariantViolation("walk at y = " + to_string(y) + " reaches unknown state " + t.to_string());
      return *n;
    };
    // Isolating intervals from the walk may overlap; narrow them first.
    for (auto& s : w.steps) {
      if (!s.x.exact) s.x = refine(atlas_entry(s.quadruples[0]).poly.at_y(y), s.x, ratio(1, 1 << 30));
    }
    std::string right = name(w.start);
    Rational right_x = 4 - abs(y);
    for (std::size_t k = 0; k <= w.steps.size(); ++k) {
      Rational left_x = k < w.steps.size() ? upper_end(w.steps[k].x) : Rational(0);
      if (left_x < right_x) {
        Rational gap = right_x - left_x;
        auto it = out.region_reps.find(right);
        if (it == out.region_reps.end() || gap > it->second.gap) {
          out.region_reps[right] = {{simplest_between(left_x, right_x), y}, gap};
        }
      }
      if (k == w.steps.size()) break;
      const WalkStep& s = w.steps[k];
      std::string left = name(s.state);
      if (s.quadruples.size() == 1) {
        const PortionSpec* p = portion_between(left, right);
        if (!p) {
          report.fail("unexpected crossing " + right + " -> " + left + " at y = " + to_string(y));
        } else if (p->quadruple != s.quadruples[0]) {
          report.fail(p->name + " crossed by " + s.quadruples[0].to_string() + " at y = " + to_string(y));
        } else {
          out.portion_ys[p->name].push_back(y);
        }
        ++crossings;
      }
      right = left;
      right_x = lower_end(s.x);
    }
  }
  report.details["walks"] = walks;
  report.details["crossings"] = crossings;
  return out;
}

// Rational point within about 1e-15 of the root of p in iv.
Rational snap(const UniPoly& p, const IsolatingInterval& iv) {
  if (iv.exact) return *iv.exact;
  IsolatingInterval r = refine(p, iv, ratio(1, Integer("1000000000000000")));
  return simplest_between(r.lo, r.hi);
}

const Rational& short_edge() {
  static const Rational r = ratio(1, Integer("1000000000000"));  // (1e-6)^2
  return r;
}

FacePoint near_point(const std::string& name) {
  auto root = [](const UniPoly& p, const Rational& lo, const Rational& hi) {
    auto roots = isolate_roots(p, lo, hi);
    if (roots.size() != 1) throw InvariantViolation("expected one root of " + p.to_string());
    return std::pair{snap(p, roots[0]), roots[0]};
  };
  std::string base = name;
  int sign = 1;
  if (base.back() == '+' || base.back() == '-') {
    sign = base.back() == '-' ? -1 : 1;
    base.pop_back();
  }
  if (base == "FGHA") return {ratio(4, 5), ratio(8 * sign, 5)};
  if (base == "EFHCI") {
    Rational r = root(UniPoly::from_descending({1, -12, 8}), Rational(0), Rational(1)).first;
    return {r, sign * r};
  }
  if (base == "BII'C") return {root(UniPoly::from_descending({3, -44, 304, -192}), Rational(0), Rational(1)).first, Rational(0)};
  if (base == "CHH'A") return {root(UniPoly::from_descending({1, -4, -80, 64}), Rational(0), Rational(1)).first, Rational(0)};
  if (base == "BDEI") {
    Rational y = root(UniPoly::from_descending({37, -816, 304, -3456, 2560}), ratio(7, 10), ratio(71, 100)).first;
    UniPoly p = atlas_entry(SiteSet::parse("1568")).poly.at_y(y);
    Rational x = root(p, Rational(0), 4 - y).first;
    return {x, sign * y};
  }
  throw DomainError("no intersection point named " + name);
}

std::array<double, 2> to_doubles(const FacePoint& p) { return {to_double(p.x), to_double(p.y)}; }

std::array<double, 2> rotate_double(std::array<double, 2> p, int i) {
  for (int k = 0; k < i; ++k) p = {4 + p[1], 4 - p[0]};
  return p;
}

}  // namespace

Catalog build_catalog() {
  Catalog cat;
  CheckReport regions{"catalog_regions", true, nlohmann::json::object()};
  CheckReport curves{"catalog_curves", true, nlohmann::json::object()};
  CheckReport points{"catalog_points", true, nlohmann::json::object()};
  CheckReport special{"catalog_special", true, nlohmann::json::object()};
  CheckReport fixtures{"fixtures", true, nlohmann::json::object()};
  int fixture_checks = 0;

  auto against_fixture = [&](const std::string& cell, const LabeledTree& t, const std::string& stem, bool reflected) {
    LabeledTree f = fixture_tree(stem);
    if (reflected) f = cubecut::apply(tau(), f);
    ++fixture_checks;
    if (canonical_form(f) != canonical_form(t)) fixtures.fail(cell + " differs from fixture " + stem + (reflected ? " (reflected)" : ""));
  };

  ScanResult scan = scan_walks(curves);

  // Q1 cells; quadrant images are added at the end.
  std::map<CellId, CellInfo> q1;

  for (const auto& name : region_names()) {
    LabeledTree t = tree_from_triples(region_triples(name));
    CellClass cls = class_of(t);
    if (cls.degree3_count != 6 || cls.degree4_count != 0) regions.fail(name + ": not six degree-3 vertices");
    std::optional<FacePoint> rep;
    if (name == "A") {
      rep = FacePoint{ratio(3, 2), ratio(1, 2)};
    } else if (auto it = scan.region_reps.find(name); it != scan.region_reps.end()) {
      rep = it->second.p;
    }
    if (!rep) {
      regions.fail(name + ": no representative found");
    } else {
      CutLocusGraph g = compute_cut_locus(*rep);
      if (degree3_triples(g) != region_triples(name)) regions.fail(name + ": direct triples differ at representative");
      if (canonical_form(to_labeled_tree(g)) != cls.canonical) regions.fail(name + ": direct class differs");
      regions.details["representatives"][name] = {to_string(rep->x), to_string(rep->y)};
    }
    bool reflected = name.back() == '\'';
    against_fixture("region " + name, t, "region_" + (reflected ? name.substr(0, 1) : name), reflected);
    if (symmetric_region(name) && canonical_form(cubecut::apply(tau(), t)) != cls.canonical) {
      regions.fail(name + ": symmetric region with a non-symmetric class");
    }
    q1[{CellKind::Region, 0, name}] = {rep, t, cls, Derivation::Direct, std::nullopt, {}, std::nullopt};
  }

  int agreements = 0;
  for (const auto& spec : portion_specs()) {
    LabeledTree from_left = collapse_region(spec.left, {spec.quadruple});
    LabeledTree from_right = collapse_region(spec.right, {spec.quadruple});
    CellClass cls = class_of(from_left);
    if (canonical_form(from_right) != cls.canonical) {
      curves.fail(spec.name + ": collapse from " + spec.left + " and from " + spec.right + " differ");
    } else {
      ++agreements;
    }
    if (cls.degree4_count != 1 || cls.degree3_count != 4) curves.fail(spec.name + ": expected one degree-4 and four degree-3 vertices");
    if (high_degree_sites(from_left) != std::vector<SiteSet>{spec.quadruple}) curves.fail(spec.name + ": degree-4 vertex sites");
    // The first eleven entries are the printed portions.
    bool reflected = &spec - portion_specs().data() >= 11;
    const PortionSpec& printed = portion_specs()[reflected ? &spec - portion_specs().data() - 11 : &spec - portion_specs().data()];
    against_fixture("curve " + spec.name, from_left, "curve_" + fixture_stem(printed.name), reflected);

    auto ys = scan.portion_ys.find(spec.name);
    if (ys == scan.portion_ys.end()) {
      curves.fail(spec.name + ": not met by any walk");
    } else {
      std::vector<Rational> sorted = ys->second;
      std::sort(sorted.begin(), sorted.end());
      Rational y = sorted[sorted.size() / 2];
      auto iv = theta(spec.quadruple, y);
      UniPoly p = atlas_entry(spec.quadruple).poly.at_y(y);
      FacePoint near{snap(p, *iv), y};
      LabeledTree c = contract_short_edges(compute_cut_locus(near), short_edge());
      if (canonical_form(c) != cls.canonical) curves.fail(spec.name + ": near-curve cut locus at y = " + to_string(y) + " disagrees");
      curves.details["portions"][spec.name] = {{"quadruple", spec.quadruple.to_string()},
                                               {"walks", ys->second.size()},
                                               {"sample_y", to_string(y)},
                                               {"sample_x", to_double(near.x)}};
    }
    q1[{CellKind::Curve, 0, spec.name}] = {std::nullopt, from_left, cls, Derivation::Collapse, spec.quadruple, {}, std::nullopt};
  }
  curves.details["collapse_agreements"] = agreements;
  if (scan.portion_ys.size() != portion_specs().size()) curves.fail("walks met " + std::to_string(scan.portion_ys.size()) + " portions");

  // Left edge and upper half-diagonal, sampled along their length.
  auto constant_along = [&](const std::string& name, const std::vector<FacePoint>& pts, const std::string& stem) {
    LabeledTree t = to_labeled_tree(compute_cut_locus(pts[0]));
    for (const auto& p : pts) {
      if (canonical_form(to_labeled_tree(compute_cut_locus(p))) != canonical_form(t)) {
        special.fail(name + ": class changes at (" + to_string(p.x) + ", " + to_string(p.y) + ")");
      }
    }
    against_fixture("curve " + name, t, stem, false);
    q1[{CellKind::Curve, 0, name}] = {pts[0], t, class_of(t), Derivation::Direct, std::nullopt, {}, std::nullopt};
  };
  std::vector<FacePoint> edge_pts{{Rational(0), Rational(1)}};
  for (int k = -15; k <= 15; ++k) edge_pts.push_back({Rational(0), ratio(k, 4)});
  constant_along("edge", edge_pts, "edge_left");
  std::vector<FacePoint> diag_pts{{Rational(2), Rational(2)}};
  for (int k = 1; k < 16; ++k) diag_pts.push_back({ratio(k, 4), 4 - ratio(k, 4)});
  constant_along("half-diagonal", diag_pts, "half_diagonal");

  for (const auto& spec : point_specs()) {
    std::optional<LabeledTree> t;
    for (const auto& r : spec.regions) {
      LabeledTree c = collapse_region(r, spec.groups);
      if (high_degree_sites(c) != spec.groups) points.fail(spec.name + ": collapse from " + r + " has other cocircular sets");
      if (!t) {
        t = c;
      } else if (canonical_form(c) != canonical_form(*t)) {
        points.fail(spec.name + ": collapse from " + r + " differs");
      }
    }
    CellClass cls = class_of(*t);
    std::string base = spec.name;
    bool reflected = base.back() == '-';
    if (base.back() == '+' || base.back() == '-') base.pop_back();
    against_fixture("point " + spec.name, *t, "point_" + fixture_stem(base), reflected);

    FacePoint near = near_point(spec.name);
    bool exact = spec.name.rfind("FGHA", 0) == 0;
    CutLocusGraph g = compute_cut_locus(near);
    LabeledTree c = exact ? to_labeled_tree(g) : contract_short_edges(g, short_edge());
    if (canonical_form(c) != cls.canonical) points.fail(spec.name + ": cut locus near the point disagrees");
    if (exact && high_degree_sites(g) != spec.groups) points.fail(spec.name + ": direct cocircular sets differ");
    points.details["points"][spec.name] = {{"x", to_double(near.x)}, {"y", to_double(near.y)}, {"exact", exact}};
    std::optional<FacePoint> rep;
    if (exact) rep = near;
    q1[{CellKind::Point, 0, spec.name}] = {rep, *t, cls, Derivation::Collapse, std::nullopt, spec.groups, to_doubles(near)};
  }

  {
    LabeledTree t = to_labeled_tree(compute_cut_locus(center()));
    against_fixture("point center", t, "point_center", false);
    cat.cells[{CellKind::Point, 0, "center"}] = {center(), t, class_of(t), Derivation::Direct, std::nullopt, {}, std::array<double, 2>{4.0, 0.0}};
    for (int i = 1; i < 4; ++i) {
      if (canonical_form(cubecut::apply(sigma_power(i), t)) != canonical_form(t)) special.fail("center class is not rotation invariant");
    }
  }
  {
    LabeledTree t = fixture_tree("point_corner");
    q1[{CellKind::Point, 0, "corner"}] = {FacePoint{Rational(0), Rational(4)}, t, class_of(t), Derivation::Fixture, std::nullopt, {}, std::array<double, 2>{0.0, 4.0}};
  }

  for (int i = 0; i < 4; ++i) {
    Permutation s = sigma_power(i);
    for (const auto& [id, info] : q1) {
      CellInfo c = info;
      if (i != 0) c.tree = cubecut::apply(s, info.tree);
      c.cls = class_of(c.tree);
      if (info.representative) c.representative = rotate(*info.representative, i);
      if (info.location) c.location = rotate_double(*info.location, i);
      cat.cells[{id.kind, i, id.name}] = std::move(c);
    }
  }

  std::set<CanonicalForm> forms;
  for (const auto& [id, info] : cat.cells) forms.insert(info.cls.canonical);
  int k = 0;
  for (const auto& f : forms) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "L%03d", ++k);
    cat.class_ids[f] = buf;
  }

  fixtures.details["compared"] = fixture_checks;
  cat.checks = {regions, curves, points, special, fixtures};
  for (const auto& c : cat.checks) {
    if (!c.pass) throw InvariantViolation(c.name + ": " + c.details["failures"][0].get<std::string>());
  }
  return cat;
}

const Catalog& default_catalog() {
  static const Catalog c = build_catalog();
  return c;
}

// Counting -------------------------------------------------------------------

ClassCounts distinct_classes(const Catalog& c) {
  ClassCounts out;
  std::map<CellKind, std::set<CanonicalForm>> by_kind;
  std::map<CanonicalForm, std::vector<CellId>> groups;
  for (const auto& [id, info] : c.cells) {
    by_kind[id.kind].insert(info.cls.canonical);
    groups[info.cls.canonical].push_back(id);
    switch (id.kind) {
      case CellKind::Region:
        ++out.regions;
        break;
      case CellKind::Curve:
        ++out.curves;
        break;
      case CellKind::Point:
        ++out.points;
        break;
    }
  }
  out.region_classes = static_cast<int>(by_kind[CellKind::Region].size());
  out.curve_classes = static_cast<int>(by_kind[CellKind::Curve].size());
  out.point_classes = static_cast<int>(by_kind[CellKind::Point].size());
  out.cells = static_cast<int>(c.cells.size());
  out.classes = static_cast<int>(groups.size());
  for (const auto& [form, ids] : groups) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = i + 1; j < ids.size(); ++j) out.coincidences.emplace_back(ids[i], ids[j]);
    }
  }
  return out;
}

std::vector<std::pair<CellId, CellId>> expected_coincidences() {
  std::vector<std::pair<CellId, CellId>> out;
  auto add = [&](CellId a, CellId b) { out.emplace_back(std::min(a, b), std::max(a, b)); };
  for (int e = 0; e < 2; ++e) {
    add({CellKind::Region, e, "A"}, {CellKind::Region, e + 2, "A"});
    add({CellKind::Curve, e, "half-diagonal"}, {CellKind::Curve, e + 2, "half-diagonal"});
    add({CellKind::Point, e, "FGHA+"}, {CellKind::Point, e + 2, "FGHA+"});
    add({CellKind::Point, e, "FGHA-"}, {CellKind::Point, e + 2, "FGHA-"});
  }
  for (int i = 0; i < 4; ++i) {
    add({CellKind::Curve, (i + 2) % 4, "GA"}, {CellKind::Curve, i, "HA"});
    add({CellKind::Curve, (i + 2) % 4, "G'A"}, {CellKind::Curve, i, "H'A"});
  }
  std::sort(out.begin(), out.end());
  return out;
}

CheckReport catalog_report(const Catalog& c) {
  CheckReport r{"catalog", true, nlohmann::json::object()};
  ClassCounts n = distinct_classes(c);
  auto expect = [&](const char* what, int got, int want) {
    r.details["counts"][what] = got;
    if (got != want) r.fail(std::string(what) + " = " + std::to_string(got) + ", expected " + std::to_string(want));
  };
  expect("regions", n.regions, 60);
  expect("region_classes", n.region_classes, 58);
  expect("curve_portions", n.curves, 96);
  expect("curve_classes", n.curve_classes, 86);
  expect("points", n.points, 37);
  expect("point_classes", n.point_classes, 33);
  expect("cells", n.cells, 193);
  expect("classes", n.classes, 177);
  expect("coincidence_pairs", static_cast<int>(n.coincidences.size()), 16);
  auto got = n.coincidences;
  for (auto& [a, b] : got) {
    if (b < a) std::swap(a, b);
  }
  std::sort(got.begin(), got.end());
  if (got != expected_coincidences()) r.fail("coincidence pairs differ from the expected sixteen");
  r.details["coincidences"] = nlohmann::json::array();
  for (const auto& [a, b] : got) r.details["coincidences"].push_back({a.to_string(), b.to_string()});
  r.details["build_checks"] = nlohmann::json::array();
  for (const auto& check : c.checks) {
    r.details["build_checks"].push_back(to_json(check));
    if (!check.pass) r.fail(check.name + " failed during the build");
  }
  return r;
}

// Sampling checks ------------------------------------------------------------

std::vector<FacePoint> sample_face_points(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dx(0, 8 * 4096), dy(-4 * 4096, 4 * 4096);
  std::vector<FacePoint> out;
  while (static_cast<int>(out.size()) < n) {
    FacePoint p{ratio(dx(rng), 4096), ratio(dy(rng), 4096)};
    if (!is_face_corner(p)) out.push_back(p);
  }
  return out;
}

CheckReport equivariance_check(int samples, std::uint64_t seed) {
  CheckReport r{"equivariance", true, nlohmann::json::object()};
  std::vector<FacePoint> pts = sample_face_points(samples, seed);
  std::mt19937_64 rng(seed ^ 0x5eedULL);
  std::uniform_int_distribution<int> dt(1, 4 * 4096 - 1);
  std::vector<FacePoint> diagonal;
  for (int k = 0; k < std::max(16, samples / 50); ++k) {
    Rational t = ratio(dt(rng), 4096);
    diagonal.push_back({t, 4 - t});
  }
  diagonal.push_back(center());
  int rot = 0, refl = 0;
  auto check = [&](const FacePoint& p) {
    LabeledTree t = face_tree(p);
    if (canonical_form(face_tree(rot_cw(p))) != canonical_form(cubecut::apply(sigma(), t))) {
      r.fail("rotation at (" + to_string(p.x) + ", " + to_string(p.y) + ")");
    }
    ++rot;
    if (canonical_form(face_tree({p.x, -p.y})) != canonical_form(cubecut::apply(tau(), t))) {
      r.fail("reflection at (" + to_string(p.x) + ", " + to_string(p.y) + ")");
    }
    ++refl;
  };
  for (const auto& p : pts) check(p);
  // On the diagonals rot_cw^3 of an upper point is computed in Q1 directly.
  int direct = 0;
  for (const auto& p : diagonal) {
    check(p);
    for (int i = 1; i < 4; ++i) {
      FacePoint q = rotate(p, i);
      if (in_q1(q)) {
        if (canonical_form(to_labeled_tree(compute_cut_locus(q))) != canonical_form(cubecut::apply(power(sigma(), i), face_tree(p)))) {
          r.fail("diagonal rotation at (" + to_string(p.x) + ", " + to_string(p.y) + ")");
        }
        ++direct;
      }
    }
  }
  r.details["samples"] = samples;
  r.details["seed"] = seed;
  r.details["rotation_checks"] = rot;
  r.details["reflection_checks"] = refl;
  r.details["diagonal_direct_checks"] = direct;
  return r;
}

CheckReport oracle_equivalence(int samples, std::uint64_t seed) {
  CheckReport r{"oracle_equivalence", true, nlohmann::json::object()};
  const Catalog& cat = default_catalog();
  int compared = 0, oracle = 0;
  std::map<std::string, int> kinds;
  for (const auto& p : sample_face_points(samples, seed)) {
    std::string where = "(" + to_string(p.x) + ", " + to_string(p.y) + ")";
    try {
      Classification c = classify(p);
      check_against(cat, c);
      auto [q1, i] = reduce_to_q1(p);
      if (q1.x > 0 && abs(q1.y) < 4 - q1.x) ++compared;
      ++kinds[kind_name(c.id.kind)];
      OracleReport o = oracle_check(*c.graph);
      ++oracle;
      if (!o.clean) r.fail("oracle at " + where + ": " + o.violations.front());
    } catch (const Error& e) {
      r.fail(where + ": " + e.what());
    }
  }
  r.details["samples"] = samples;
  r.details["seed"] = seed;
  r.details["walk_compared"] = compared;
  r.details["oracle_checked"] = oracle;
  r.details["kinds"] = kinds;
  return r;
}

// JSON -----------------------------------------------------------------------

nlohmann::json to_json(const CellId& id) {
  return {{"kind", kind_name(id.kind)}, {"quadrant", id.quadrant}, {"name", id.name}, {"id", id.to_string()}};
}

nlohmann::json to_json(const Catalog& c) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& [id, info] : c.cells) {
    nlohmann::json j = to_json(id);
    j["representative"] = info.representative
                              ? nlohmann::json{to_string(info.representative->x), to_string(info.representative->y)}
                              : nlohmann::json(nullptr);
    j["canonical"] = info.cls.canonical.text;
    j["class_id"] = c.class_id(info.cls.canonical);
    j["derivation"] = info.derivation == Derivation::Direct    ? "direct"
                      : info.derivation == Derivation::Collapse ? "collapse"
                                                                : "fixture";
    if (info.quadruple) j["quadruple"] = info.quadruple->to_string();
    if (!info.groups.empty()) {
      j["cocircular"] = nlohmann::json::array();
      for (auto g : info.groups) j["cocircular"].push_back(g.to_string());
    }
    if (info.location) j["location"] = {(*info.location)[0], (*info.location)[1]};
    cells.push_back(j);
  }
  return {{"cells", cells}, {"class_count", c.class_ids.size()}};
}

}  // namespace cubecut
