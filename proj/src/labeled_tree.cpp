#include "cubecut/labeled_tree.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "cubecut/errors.hpp"

namespace cubecut {

namespace detail {
const std::map<std::string, std::string>& embedded_fixtures();
}

int LabeledTree::add_vertex(std::optional<int> corner, SiteSet sites, std::string name) {
  if (corner && (*corner < 1 || *corner > 8)) throw DomainError("corner label out of range");
  vertices_.push_back({corner, sites, std::move(name)});
  return vertex_count() - 1;
}

void LabeledTree::add_edge(int a, int b) {
  if (a < 0 || b < 0 || a >= vertex_count() || b >= vertex_count() || a == b) {
    throw DomainError("bad tree edge");
  }
  edges_.emplace_back(std::min(a, b), std::max(a, b));
}

std::vector<std::vector<int>> LabeledTree::adjacency() const {
  std::vector<std::vector<int>> adj(vertices_.size());
  for (const auto& [a, b] : edges_) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

int LabeledTree::degree(int v) const {
  int d = 0;
  for (const auto& [a, b] : edges_) d += (a == v) + (b == v);
  return d;
}

int LabeledTree::count_degree(int d) const {
  int n = 0;
  for (int v = 0; v < vertex_count(); ++v) n += degree(v) == d;
  return n;
}

std::map<int, int> LabeledTree::degree_histogram() const {
  std::map<int, int> h;
  auto adj = adjacency();
  for (const auto& a : adj) ++h[static_cast<int>(a.size())];
  return h;
}

std::optional<int> LabeledTree::find_corner(int corner) const {
  for (int v = 0; v < vertex_count(); ++v) {
    if (vertices_[v].corner == corner) return v;
  }
  return std::nullopt;
}

std::optional<int> LabeledTree::find_edge(int a, int b) const {
  auto key = std::make_pair(std::min(a, b), std::max(a, b));
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i] == key) return static_cast<int>(i);
  }
  return std::nullopt;
}

bool LabeledTree::is_tree() const {
  if (vertices_.empty()) return false;
  if (edges_.size() + 1 != vertices_.size()) return false;
  auto adj = adjacency();
  std::vector<bool> seen(vertices_.size(), false);
  std::vector<int> stack{0};
  seen[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : adj[v]) {
      if (!seen[u]) {
        seen[u] = true;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  return reached == vertex_count();
}

void LabeledTree::validate() const {
  if (!is_tree()) throw InvariantViolation("labeled graph is not a tree");
  std::vector<int> used(9, 0);
  for (const auto& v : vertices_) {
    if (v.corner && ++used[*v.corner] > 1) {
      throw InvariantViolation("corner label " + std::to_string(*v.corner) + " used twice");
    }
  }
}

// Canonical form -----------------------------------------------------------

namespace {

std::vector<int> centroids(const std::vector<std::vector<int>>& adj) {
  int n = static_cast<int>(adj.size());
  std::vector<int> size(n, 1), parent(n, -1), order;
  order.reserve(n);
  std::vector<int> stack{0};
  parent[0] = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (int u : adj[v]) {
      if (parent[u] == -1) {
        parent[u] = v;
        stack.push_back(u);
      }
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (*it != 0) size[parent[*it]] += size[*it];
  }
  std::vector<int> out;
  for (int v = 0; v < n; ++v) {
    int heaviest = n - size[v];
    for (int u : adj[v]) {
      if (u != 0 && parent[u] == v) heaviest = std::max(heaviest, size[u]);
    }
    if (heaviest * 2 <= n) out.push_back(v);
  }
  return out;
}

std::string encode(const LabeledTree& t, const std::vector<std::vector<int>>& adj, int v, int from) {
  std::vector<std::string> kids;
  for (int u : adj[v]) {
    if (u != from) kids.push_back(encode(t, adj, u, v));
  }
  std::sort(kids.begin(), kids.end());
  std::string out = "(";
  const auto& corner = t.vertex(v).corner;
  out += corner ? std::to_string(*corner) : std::string("*");
  for (const auto& k : kids) out += k;
  out += ")";
  return out;
}

}  // namespace

CanonicalForm canonical_form(const LabeledTree& t) {
  t.validate();
  auto adj = t.adjacency();
  std::string best;
  for (int c : centroids(adj)) {
    std::string e = encode(t, adj, c, -1);
    if (best.empty() || e < best) best = std::move(e);
  }
  return {best};
}

bool is_isomorphic(const LabeledTree& a, const LabeledTree& b) { return canonical_form(a) == canonical_form(b); }

LabeledTree apply(const Permutation& perm, const LabeledTree& t) {
  LabeledTree out;
  for (const auto& v : t.vertices()) {
    std::optional<int> c;
    if (v.corner) c = perm.at(*v.corner);
    out.add_vertex(c, SiteSet{}, v.name);
  }
  for (const auto& [a, b] : t.edges()) out.add_edge(a, b);
  return out;
}

LabeledTree collapse_edges(const LabeledTree& t, const std::vector<std::pair<int, int>>& edges) {
  int n = t.vertex_count();
  std::vector<int> root(n);
  std::iota(root.begin(), root.end(), 0);
  std::function<int(int)> find = [&](int v) { return root[v] == v ? v : root[v] = find(root[v]); };
  for (const auto& [a, b] : edges) {
    if (!t.find_edge(a, b)) throw DomainError("collapse of a non-edge");
    root[find(a)] = find(b);
  }
  std::map<int, int> group_index;
  LabeledTree out;
  std::vector<std::optional<int>> corner;
  std::vector<SiteSet> sites;
  std::vector<std::string> names;
  for (int v = 0; v < n; ++v) {
    int r = find(v);
    auto [it, fresh] = group_index.emplace(r, static_cast<int>(corner.size()));
    if (fresh) {
      corner.emplace_back();
      sites.emplace_back();
      names.emplace_back();
    }
    int g = it->second;
    const auto& tv = t.vertex(v);
    if (tv.corner) {
      if (corner[g]) throw BothLabeled("collapse would merge corners " + std::to_string(*corner[g]) + " and " + std::to_string(*tv.corner));
      corner[g] = tv.corner;
    }
    sites[g] = sites[g] | tv.sites;
    if (names[g].empty()) {
      names[g] = tv.name;
    } else if (!tv.name.empty()) {
      names[g] += "+" + tv.name;
    }
  }
  for (std::size_t g = 0; g < corner.size(); ++g) out.add_vertex(corner[g], sites[g], names[g]);
  for (const auto& [a, b] : t.edges()) {
    int ga = group_index.at(find(a));
    int gb = group_index.at(find(b));
    if (ga != gb) out.add_edge(ga, gb);
  }
  return out;
}

LabeledTree collapse_edge(const LabeledTree& t, int a, int b) { return collapse_edges(t, {{a, b}}); }

// Text format --------------------------------------------------------------

LabeledTree parse_tree(std::string_view text) {
  LabeledTree t;
  std::map<std::string, int> ids;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream words(line);
    std::string kind;
    if (!(words >> kind)) continue;
    auto fail = [&](const std::string& what) {
      throw ParseError("tree line " + std::to_string(line_no) + ": " + what);
    };
    if (kind == "vertex") {
      std::string id;
      if (!(words >> id)) fail("missing vertex id");
      if (ids.count(id)) fail("duplicate vertex id " + id);
      std::optional<int> corner;
      SiteSet sites;
      std::string attr;
      while (words >> attr) {
        if (attr.rfind("corner=", 0) == 0) {
          try {
            corner = std::stoi(attr.substr(7));
          } catch (const std::exception&) {
            fail("bad corner in " + attr);
          }
          if (*corner < 1 || *corner > 8) fail("corner out of range");
        } else if (attr.rfind("sites=", 0) == 0) {
          sites = SiteSet::parse(attr.substr(6));
        } else {
          fail("unknown attribute " + attr);
        }
      }
      ids[id] = t.add_vertex(corner, sites, id);
    } else if (kind == "edge") {
      std::string a, b;
      if (!(words >> a >> b)) fail("edge needs two ids");
      if (!ids.count(a) || !ids.count(b)) fail("edge names an unknown vertex");
      t.add_edge(ids[a], ids[b]);
    } else {
      fail("unknown keyword " + kind);
    }
  }
  try {
    t.validate();
  } catch (const InvariantViolation& e) {
    throw ParseError(e.what());
  }
  return t;
}

std::string serialize_tree(const LabeledTree& t) {
  std::ostringstream out;
  std::vector<std::string> ids;
  for (int v = 0; v < t.vertex_count(); ++v) {
    const auto& tv = t.vertex(v);
    std::string id = tv.name.empty() || tv.name.find_first_of(" \t#") != std::string::npos ? "v" + std::to_string(v) : tv.name;
    if (std::find(ids.begin(), ids.end(), id) != ids.end()) id = "v" + std::to_string(v);
    ids.push_back(id);
    out << "vertex " << id;
    if (tv.corner) out << " corner=" << *tv.corner;
    if (!tv.sites.empty()) out << " sites=" << tv.sites.to_string();
    out << '\n';
  }
  for (const auto& [a, b] : t.edges()) out << "edge " << ids[a] << ' ' << ids[b] << '\n';
  return out.str();
}

const LabeledTree& fixture_tree(const std::string& name) {
  static const std::map<std::string, LabeledTree> trees = [] {
    std::map<std::string, LabeledTree> m;
    for (const auto& [k, body] : detail::embedded_fixtures()) m.emplace(k, parse_tree(body));
    return m;
  }();
  auto it = trees.find(name);
  if (it == trees.end()) throw DomainError("no fixture tree named " + name);
  return it->second;
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const auto& [k, body] : detail::embedded_fixtures()) out.push_back(k);
  return out;
}

}  // namespace cubecut
