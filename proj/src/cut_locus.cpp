#include "cubecut/cut_locus.hpp"

#include <map>

#include "cubecut/errors.hpp"

namespace cubecut {

namespace {

bool adjacent(int a, int b) { return b == a % 8 + 1 || a == b % 8 + 1; }

// The corner between the boundary edges of two adjacent sites.
CornerId shared_corner(int a, int b) {
  int first = (b == a % 8 + 1) ? a : b;
  return leaf_corner(SiteIndex(first));
}

std::optional<FeasibleSegment> feasible(const std::array<PlanePoint, 8>& s, int a, int b) {
  const PlanePoint& pa = s[a - 1];
  const PlanePoint& pb = s[b - 1];
  PlanePoint base, dir;
  bool ray = adjacent(a, b);
  if (ray) {
    // Star unfolding corners are reflex, so the sites' midpoint lies outside
    // and the ray into the polygon points away from it.
    base = corner_position(shared_corner(a, b));
    PlanePoint mid = ratio(1, 2) * (pa + pb);
    dir = base - mid;
  } else {
    base = ratio(1, 2) * (pa + pb);
    PlanePoint d = pb - pa;
    dir = {-d.w, d.v};
  }
  std::optional<Rational> lo, hi;
  if (ray) lo = Rational(0);
  for (int c = 1; c <= 8; ++c) {
    if (c == a || c == b) continue;
    // |Q - pa|^2 <= |Q - pc|^2  <=>  2 Q.(pc - pa) <= |pc|^2 - |pa|^2
    PlanePoint d = s[c - 1] - pa;
    Rational k = 2 * dot(dir, d);
    Rational r = norm2(s[c - 1]) - norm2(pa) - 2 * dot(base, d);
    if (k == 0) {
      if (r < 0) return std::nullopt;
      continue;
    }
    Rational t = r / k;
    if (k > 0) {
      if (!hi || t < *hi) hi = t;
    } else {
      if (!lo || t > *lo) lo = t;
    }
  }
  if (lo && hi && *lo > *hi) return std::nullopt;
  if (!lo || !hi) {
    throw InvariantViolation("unbounded bisector piece for sites " + std::to_string(a) + "," + std::to_string(b));
  }
  return FeasibleSegment{base + *lo * dir, base + *hi * dir};
}

enum class Location { Inside, Boundary, Outside };

Location locate(const std::vector<BoundaryVertex>& poly, const PlanePoint& q) {
  bool inside = false;
  std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const PlanePoint& p1 = poly[i].pos;
    const PlanePoint& p2 = poly[(i + 1) % n].pos;
    if (cross(p2 - p1, q - p1) == 0 && std::min(p1.v, p2.v) <= q.v && q.v <= std::max(p1.v, p2.v) &&
        std::min(p1.w, p2.w) <= q.w && q.w <= std::max(p1.w, p2.w)) {
      return Location::Boundary;
    }
    if ((p1.w > q.w) != (p2.w > q.w)) {
      Rational v_cross = p1.v + (q.w - p1.w) * (p2.v - p1.v) / (p2.w - p1.w);
      if (q.v < v_cross) inside = !inside;
    }
  }
  return inside ? Location::Inside : Location::Outside;
}

std::optional<int> corner_at(const PlanePoint& q) {
  const auto& corners = corner_positions();
  for (int c = 0; c < 8; ++c) {
    if (corners[c] == q) return c + 1;
  }
  return std::nullopt;
}

}  // namespace

std::optional<FeasibleSegment> pair_feasible_segment(const FacePoint& p, SiteIndex a, SiteIndex b) {
  if (a == b) throw DomainError("pair_feasible_segment needs distinct sites");
  return feasible(site_positions(p), a.value(), b.value());
}

CutLocusGraph compute_cut_locus(const FacePoint& p) {
  if (is_face_corner(p)) throw DomainError("the cut locus of a face corner is not handled");
  CutLocusGraph g;
  g.source = p;
  g.sites = site_positions(p);
  auto poly = boundary_polygon(p);

  std::map<PlanePoint, int> index;
  auto vertex_at = [&](const PlanePoint& q) {
    auto [it, fresh] = index.emplace(q, static_cast<int>(g.vertices.size()));
    if (fresh) g.vertices.push_back({q, SiteSet{}, corner_at(q), 0});
    return it->second;
  };

  std::vector<std::pair<PlanePoint, SiteSet>> touch_points;
  for (int a = 1; a <= 8; ++a) {
    for (int b = a + 1; b <= 8; ++b) {
      auto seg = feasible(g.sites, a, b);
      if (!seg) continue;
      if (seg->is_point()) {
        touch_points.emplace_back(seg->from, SiteSet{a, b});
        continue;
      }
      if (!adjacent(a, b)) {
        for (const auto* end : {&seg->from, &seg->to}) {
          Location loc = locate(poly, *end);
          if (loc == Location::Outside || (loc == Location::Boundary && !corner_at(*end))) {
            throw InvariantViolation("cut edge " + std::to_string(a) + std::to_string(b) + " leaves the unfolding");
          }
        }
      }
      int u = vertex_at(seg->from);
      int v = vertex_at(seg->to);
      g.edges.push_back({a, b, u, v});
      for (int w : {u, v}) {
        g.vertices[w].sites.insert(a);
        g.vertices[w].sites.insert(b);
        ++g.vertices[w].degree;
      }
    }
  }
  for (const auto& [q, pair] : touch_points) {
    auto it = index.find(q);
    if (it == index.end()) throw InvariantViolation("isolated equidistant point in the cut locus");
    g.vertices[it->second].sites = g.vertices[it->second].sites | pair;
  }

  LabeledTree t = to_labeled_tree(g);
  if (!t.is_tree()) throw InvariantViolation("cut locus is not a tree");
  for (int c = 1; c <= 8; ++c) {
    if (!t.find_corner(c)) throw InvariantViolation("corner " + std::to_string(c) + " missing from the cut locus");
  }
  for (const auto& v : g.vertices) {
    if (v.degree == 1 && !v.corner) throw InvariantViolation("unlabeled leaf in the cut locus");
  }
  return g;
}

LabeledTree to_labeled_tree(const CutLocusGraph& g) {
  LabeledTree t;
  for (const auto& v : g.vertices) t.add_vertex(v.corner, v.sites);
  for (const auto& e : g.edges) t.add_edge(e.from, e.to);
  return t;
}

// Oracle -------------------------------------------------------------------
//
// Lines are handled as a*v + b*w = c solved for one coordinate, rather than
// the base-plus-direction form used above.

namespace {

struct Line {
  Rational a, b, c;
};

Line raw_bisector(const PlanePoint& p, const PlanePoint& q) {
  return {2 * (q.v - p.v), 2 * (q.w - p.w), norm2(q) - norm2(p)};
}

// Point on the line for parameter s; s is w if b == 0, else v.
PlanePoint on_line(const Line& l, const Rational& s) {
  if (l.b != 0) return {s, (l.c - l.a * s) / l.b};
  return {l.c / l.a, s};
}

Rational dist2(const PlanePoint& a, const PlanePoint& b) { return norm2(a - b); }

bool in_wedge(const PlanePoint& d, const PlanePoint& e1, const PlanePoint& e2) {
  // d is a nonnegative combination of e1 and e2 (wedge angle below pi).
  Rational c12 = cross(e1, e2);
  return cross(e1, d) * c12 >= 0 && cross(d, e2) * c12 >= 0;
}

}  // namespace

OracleReport oracle_check(const CutLocusGraph& g) {
  OracleReport r;
  auto flag = [&](const std::string& what) {
    r.clean = false;
    r.violations.push_back(what);
  };
  const auto& s = g.sites;

  std::map<std::pair<int, int>, int> edge_of_pair;
  for (const auto& e : g.edges) {
    ++r.edges_checked;
    std::string tag = "edge " + std::to_string(e.site_a) + std::to_string(e.site_b);
    edge_of_pair[{e.site_a, e.site_b}] += 1;
    const PlanePoint& A = g.vertices.at(e.from).pos;
    const PlanePoint& B = g.vertices.at(e.to).pos;
    PlanePoint mid = ratio(1, 2) * (A + B);
    Rational da = dist2(mid, s[e.site_a - 1]);
    if (dist2(mid, s[e.site_b - 1]) != da) flag(tag + ": midpoint not equidistant");
    for (int c = 1; c <= 8; ++c) {
      if (c == e.site_a || c == e.site_b) continue;
      if (dist2(mid, s[c - 1]) <= da) flag(tag + ": site " + std::to_string(c) + " not farther at midpoint");
    }
    if (A == B) flag(tag + ": zero length");
  }
  for (const auto& [pair, count] : edge_of_pair) {
    if (count > 1) flag("pair " + std::to_string(pair.first) + std::to_string(pair.second) + " has several edges");
  }

  for (int a = 1; a <= 8; ++a) {
    for (int b = a + 1; b <= 8; ++b) {
      if (edge_of_pair.count({a, b})) continue;
      ++r.empty_pairs_checked;
      Line l = raw_bisector(s[a - 1], s[b - 1]);
      std::optional<Rational> lo, hi;
      if (b == a + 1 || (a == 1 && b == 8)) {
        int first = (b == a % 8 + 1) ? a : b;
        const PlanePoint& c = corner_position(leaf_corner(SiteIndex(first)));
        Rational sc = l.b != 0 ? c.v : c.w;
        PlanePoint probe = on_line(l, sc + 1) - c;
        bool plus_outside = in_wedge(probe, s[a - 1] - c, s[b - 1] - c);
        if (plus_outside) {
          hi = sc;
        } else {
          lo = sc;
        }
      }
      PlanePoint origin = on_line(l, Rational(0));
      PlanePoint step = on_line(l, Rational(1)) - origin;
      for (int c = 1; c <= 8; ++c) {
        if (c == a || c == b) continue;
        PlanePoint d = s[c - 1] - s[a - 1];
        Rational k = 2 * dot(step, d);
        Rational rhs = norm2(s[c - 1]) - norm2(s[a - 1]) - 2 * dot(origin, d);
        if (k == 0) {
          if (rhs < 0) {
            lo = Rational(1);
            hi = Rational(0);
          }
          continue;
        }
        Rational t = rhs / k;
        if (k > 0) {
          if (!hi || t < *hi) hi = t;
        } else {
          if (!lo || t > *lo) lo = t;
        }
      }
      bool empty_or_point = lo && hi && *lo >= *hi;
      if (!empty_or_point) flag("pair " + std::to_string(a) + std::to_string(b) + " has a feasible segment but no edge");
    }
  }

  for (const auto& v : g.vertices) {
    ++r.vertices_checked;
    std::vector<int> members = v.sites.members();
    if (members.empty()) {
      flag("vertex without sites");
      continue;
    }
    Rational d = dist2(v.pos, s[members[0] - 1]);
    for (int c = 1; c <= 8; ++c) {
      Rational dc = dist2(v.pos, s[c - 1]);
      if (v.sites.contains(c) && dc != d) flag("vertex " + v.sites.to_string() + " not equidistant");
      if (!v.sites.contains(c) && dc <= d) flag("vertex " + v.sites.to_string() + " misses site " + std::to_string(c));
    }
  }

  if (g.edges.size() + 1 != g.vertices.size()) flag("vertex and edge counts do not form a tree");
  LabeledTree t = to_labeled_tree(g);
  if (!t.is_tree()) flag("graph is not a tree");
  return r;
}

nlohmann::json to_json(const CutLocusGraph& g) {
  nlohmann::json j;
  j["source"] = {to_string(g.source.x), to_string(g.source.y)};
  j["sites"] = nlohmann::json::array();
  for (const auto& s : g.sites) j["sites"].push_back({to_string(s.v), to_string(s.w)});
  j["vertices"] = nlohmann::json::array();
  for (const auto& v : g.vertices) {
    nlohmann::json jv;
    jv["pos"] = {to_string(v.pos.v), to_string(v.pos.w)};
    jv["sites"] = v.sites.to_string();
    jv["corner"] = v.corner ? nlohmann::json(*v.corner) : nlohmann::json(nullptr);
    jv["degree"] = v.degree;
    j["vertices"].push_back(jv);
  }
  j["edges"] = nlohmann::json::array();
  for (const auto& e : g.edges) {
    j["edges"].push_back({{"sites", std::to_string(e.site_a) + std::to_string(e.site_b)}, {"from", e.from}, {"to", e.to}});
  }
  return j;
}

nlohmann::json to_json(const OracleReport& r) {
  return {{"clean", r.clean},
          {"edges_checked", r.edges_checked},
          {"empty_pairs_checked", r.empty_pairs_checked},
          {"vertices_checked", r.vertices_checked},
          {"violations", r.violations}};
}

}  // namespace cubecut
