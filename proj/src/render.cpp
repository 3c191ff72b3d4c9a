#include "cubecut/render.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "cubecut/atlas.hpp"
#include "cubecut/cut_locus.hpp"
#include "cubecut/errors.hpp"

namespace cubecut {

std::string SvgDocument::str() const {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  for (const auto& e : elements) out << "  " << e << '\n';
  out << "</svg>\n";
  return out.str();
}

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

// r rounded half up to two decimals.
std::string fixed2(const Rational& r) {
  Rational scaled = r * 100 + ratio(1, 2);
  Integer n = scaled.get_num() / scaled.get_den();
  if (n * scaled.get_den() > scaled.get_num()) n -= 1;  // floor for negatives
  bool neg = n < 0;
  if (neg) n = -n;
  Integer whole = n / 100, frac = n % 100;
  std::string f = frac.get_str();
  if (f.size() < 2) f = "0" + f;
  return std::string(neg ? "-" : "") + whole.get_str() + "." + f;
}

std::string fixed2(double d) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", d);
  std::string s = buf;
  return s == "-0.00" ? "0.00" : s;
}

std::string line(const std::string& x1, const std::string& y1, const std::string& x2, const std::string& y2,
                 const std::string& cls) {
  return "<line class=\"" + cls + "\" x1=\"" + x1 + "\" y1=\"" + y1 + "\" x2=\"" + x2 + "\" y2=\"" + y2 +
         "\" stroke=\"black\" stroke-width=\"1\"/>";
}

struct Q1Sample {
  Rational x;
  Rational y;
};

using CurveSamples = std::map<SiteSet, std::vector<Q1Sample>>;

// Effective curve crossings on every pixel row of Q1, keyed by quadruple,
// with x refined to half a (stretched) pixel.
const CurveSamples& q1_curve_samples(int stretch) {
  static std::map<int, CurveSamples> cache;
  auto it = cache.find(stretch);
  if (it != cache.end()) return it->second;
  CurveSamples& out = cache[stretch];
  {
    const Rational half_pixel = ratio(1, 200 * stretch);
    for (int k = 399; k >= -400; --k) {
      Rational y = ratio(2 * k + 1, 200);
      RegionWalk w = region_walk(y);
      for (const auto& s : w.steps) {
        for (auto q : s.quadruples) {
          IsolatingInterval iv = s.x;
          if (!iv.exact) iv = refine(atlas_entry(q).poly.at_y(y), iv, half_pixel);
          out[q].push_back({iv.midpoint(), y});
        }
      }
    }
  }
  return out;
}

}  // namespace

SvgDocument svg_face_map(const Catalog& catalog, int stretch) {
  if (stretch < 1) throw DomainError("stretch must be at least 1");
  SvgDocument doc;
  const Rational sx = 100 * stretch, sy = 100;
  auto px = [&](const Rational& x) { return fixed2(x * sx); };
  auto py = [&](const Rational& y) { return fixed2((4 - y) * sy); };
  doc.elements.push_back("<rect x=\"0\" y=\"0\" width=\"" + px(Rational(8)) +
                         "\" height=\"800.00\" fill=\"white\" stroke=\"black\" stroke-width=\"2\"/>");
  doc.elements.push_back(line(px(Rational(0)), py(Rational(4)), px(Rational(8)), py(Rational(-4)), "diagonal"));
  doc.elements.push_back(line(px(Rational(0)), py(Rational(-4)), px(Rational(8)), py(Rational(4)), "diagonal"));

  std::set<std::pair<int, SiteSet>> curves;
  for (const auto& [id, info] : catalog.cells) {
    if (info.quadruple && (stretch == 1 || id.quadrant == 0)) curves.insert({id.quadrant, *info.quadruple});
  }
  if (!curves.empty()) {
    const auto& samples = q1_curve_samples(stretch);
    for (const auto& [quadrant, q] : curves) {
      auto it = samples.find(q);
      if (it == samples.end()) continue;
      std::string pts;
      for (const auto& s : it->second) {
        FacePoint f = rotate({s.x, s.y}, quadrant);
        if (!pts.empty()) pts += ' ';
        pts += px(f.x) + "," + py(f.y);
      }
      doc.elements.push_back("<polyline class=\"curve\" data-quadrant=\"" + std::to_string(quadrant) +
                             "\" data-quadruple=\"" + q.to_string() +
                             "\" fill=\"none\" stroke=\"blue\" stroke-width=\"1\" points=\"" + pts + "\"/>");
    }
  }

  for (const auto& [id, info] : catalog.cells) {
    if (id.kind != CellKind::Point || !info.location) continue;
    if (stretch > 1 && id.quadrant != 0) continue;
    const auto& [x, y] = *info.location;
    doc.elements.push_back("<circle class=\"point\" cx=\"" + fixed2(x * 100 * stretch) + "\" cy=\"" +
                           fixed2((4 - y) * 100) + "\" r=\"3\" fill=\"red\"><title>" + escape(id.to_string()) +
                           "</title></circle>");
  }
  return doc;
}

SvgDocument svg_unfolding(const FacePoint& p) {
  CutLocusGraph g = compute_cut_locus(p);
  SvgDocument doc;
  const double scale = 17.0;
  auto pv = [&](const Rational& v) { return fixed2(400 + scale * to_double(v)); };
  auto pw = [&](const Rational& w) { return fixed2(400 - scale * to_double(w)); };

  std::string outline;
  for (const auto& b : boundary_polygon(p)) {
    if (!outline.empty()) outline += ' ';
    outline += pv(b.pos.v) + "," + pw(b.pos.w);
  }
  doc.elements.push_back("<polygon class=\"boundary\" fill=\"#f4f4f4\" stroke=\"black\" stroke-width=\"1\" points=\"" +
                         outline + "\"/>");
  for (const auto& b : boundary_polygon(p)) {
    std::string label = b.is_site ? "P" + std::to_string(b.label) : std::to_string(b.label);
    std::string cls = b.is_site ? "site" : "corner";
    doc.elements.push_back("<circle class=\"" + cls + "\" cx=\"" + pv(b.pos.v) + "\" cy=\"" + pw(b.pos.w) +
                           "\" r=\"2.5\" fill=\"" + (b.is_site ? "green" : "black") + "\"/>");
    doc.elements.push_back("<text class=\"" + cls + "-label\" x=\"" + pv(b.pos.v) + "\" y=\"" + pw(b.pos.w) +
                           "\" dx=\"4\" dy=\"-4\" font-size=\"12\">" + label + "</text>");
  }
  for (const auto& e : g.edges) {
    const auto& a = g.vertices[e.from].pos;
    const auto& b = g.vertices[e.to].pos;
    doc.elements.push_back("<line class=\"cut\" data-sites=\"" + std::to_string(e.site_a) + std::to_string(e.site_b) +
                           "\" x1=\"" + pv(a.v) + "\" y1=\"" + pw(a.w) + "\" x2=\"" + pv(b.v) + "\" y2=\"" + pw(b.w) +
                           "\" stroke=\"red\" stroke-width=\"2\"/>");
  }
  for (const auto& v : g.vertices) {
    if (v.degree < 3) continue;
    std::string cls = v.degree >= 4 ? "vertex degree4" : "vertex";
    doc.elements.push_back("<circle class=\"" + cls + "\" cx=\"" + pv(v.pos.v) + "\" cy=\"" + pw(v.pos.w) + "\" r=\"" +
                           (v.degree >= 4 ? "5" : "3") + "\" fill=\"red\"><title>" + v.sites.to_string() +
                           "</title></circle>");
  }
  doc.elements.push_back("<text class=\"caption\" x=\"10\" y=\"790\" font-size=\"14\">P = (" + escape(to_string(p.x)) +
                         ", " + escape(to_string(p.y)) + ")</text>");
  return doc;
}

namespace {

int centroid(const LabeledTree& t) {
  auto adj = t.adjacency();
  int n = t.vertex_count();
  std::vector<int> size(n, 1), parent(n, -1), order;
  std::vector<int> stack{0};
  std::vector<bool> seen(n, false);
  seen[0] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (int u : adj[v]) {
      if (!seen[u]) {
        seen[u] = true;
        parent[u] = v;
        stack.push_back(u);
      }
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (parent[*it] >= 0) size[parent[*it]] += size[*it];
  }
  int best = 0, best_max = n;
  for (int v = 0; v < n; ++v) {
    int largest = n - size[v];
    for (int u : adj[v]) {
      if (u != parent[v]) largest = std::max(largest, size[u]);
    }
    if (largest < best_max) {
      best = v;
      best_max = largest;
    }
  }
  return best;
}

}  // namespace

SvgDocument svg_tree(const LabeledTree& t) {
  t.validate();
  SvgDocument doc;
  if (t.vertex_count() == 0) {
    doc.width = doc.height = 100;
    return doc;
  }
  auto adj = t.adjacency();
  for (auto& a : adj) std::sort(a.begin(), a.end());
  int root = centroid(t);
  std::vector<double> x(t.vertex_count());
  std::vector<int> depth(t.vertex_count());
  int next_leaf = 0, max_depth = 0;
  std::function<void(int, int, int)> place = [&](int v, int from, int d) {
    depth[v] = d;
    max_depth = std::max(max_depth, d);
    std::vector<int> kids;
    for (int u : adj[v]) {
      if (u != from) kids.push_back(u);
    }
    if (kids.empty()) {
      x[v] = next_leaf++;
      return;
    }
    double sum = 0;
    for (int u : kids) {
      place(u, v, d + 1);
      sum += x[u];
    }
    x[v] = sum / static_cast<double>(kids.size());
  };
  place(root, -1, 0);

  const double dx = 50, dy = 70, margin = 40;
  doc.width = static_cast<int>(2 * margin + dx * std::max(0, next_leaf - 1)) + 1;
  doc.height = static_cast<int>(2 * margin + dy * max_depth) + 1;
  auto cx = [&](int v) { return fixed2(margin + dx * x[v]); };
  auto cy = [&](int v) { return fixed2(margin + dy * depth[v]); };
  for (auto [a, b] : t.edges()) {
    doc.elements.push_back(line(cx(a), cy(a), cx(b), cy(b), "edge"));
  }
  for (int v = 0; v < t.vertex_count(); ++v) {
    const auto& tv = t.vertex(v);
    doc.elements.push_back("<circle class=\"" + std::string(tv.corner ? "labeled" : "vertex") + "\" cx=\"" + cx(v) +
                           "\" cy=\"" + cy(v) + "\" r=\"" + (tv.corner ? "10" : "4") + "\" fill=\"" +
                           (tv.corner ? "white" : "black") + "\" stroke=\"black\"/>");
    if (tv.corner) {
      doc.elements.push_back("<text class=\"label\" x=\"" + cx(v) + "\" y=\"" + cy(v) +
                             "\" text-anchor=\"middle\" dominant-baseline=\"central\" font-size=\"12\">" +
                             std::to_string(*tv.corner) + "</text>");
    }
  }
  return doc;
}

}  // namespace cubecut
