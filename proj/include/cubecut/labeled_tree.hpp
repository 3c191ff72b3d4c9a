#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cubecut/site_set.hpp"

namespace cubecut {

struct TreeVertex {
  std::optional<int> corner;  // cube corner label 1..8
  SiteSet sites;              // Voronoi sites meeting here, when known
  std::string name;
};

// Finite tree whose vertices may carry a corner label. Each label occurs at
// most once. Site annotations are informational and never affect
// isomorphism.
class LabeledTree {
 public:
  int add_vertex(std::optional<int> corner, SiteSet sites = {}, std::string name = {});
  void add_edge(int a, int b);

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  const std::vector<TreeVertex>& vertices() const { return vertices_; }
  const TreeVertex& vertex(int i) const { return vertices_.at(i); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  std::vector<std::vector<int>> adjacency() const;
  int degree(int v) const;
  int count_degree(int d) const;
  std::map<int, int> degree_histogram() const;
  std::optional<int> find_corner(int corner) const;
  std::optional<int> find_edge(int a, int b) const;

  bool is_tree() const;
  // Throws InvariantViolation unless this is a tree with distinct labels.
  void validate() const;

 private:
  std::vector<TreeVertex> vertices_;
  std::vector<std::pair<int, int>> edges_;
};

// AHU encoding rooted at the centroid; the lexicographically smaller
// encoding is used when there are two centroids. A vertex encodes as
// "(" + label-or-"*" + sorted child encodings + ")".
struct CanonicalForm {
  std::string text;
  auto operator<=>(const CanonicalForm&) const = default;
};

CanonicalForm canonical_form(const LabeledTree& t);
bool is_isomorphic(const LabeledTree& a, const LabeledTree& b);

// Relabels corners by perm. Site annotations are dropped since they refer
// to the unfolding of the original point.
LabeledTree apply(const Permutation& perm, const LabeledTree& t);

// Contracts the given edges at once. Merged vertices take the union of the
// site sets and the single corner label among them. Throws BothLabeled if
// two labeled vertices would merge.
LabeledTree collapse_edges(const LabeledTree& t, const std::vector<std::pair<int, int>>& edges);
LabeledTree collapse_edge(const LabeledTree& t, int a, int b);

// Line format, '#' starts a comment:
//   vertex <id> [corner=<1..8>] [sites=<digits>]
//   edge <id> <id>
LabeledTree parse_tree(std::string_view text);
std::string serialize_tree(const LabeledTree& t);

// Trees compiled in from fixtures/trees, by file stem.
const LabeledTree& fixture_tree(const std::string& name);
std::vector<std::string> fixture_names();

}  // namespace cubecut
