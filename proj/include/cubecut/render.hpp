#pragma once

#include <string>
#include <vector>

#include "cubecut/decomposition.hpp"
#include "cubecut/labeled_tree.hpp"
#include "cubecut/unfolding.hpp"

namespace cubecut {

// Elements are kept in emission order so output is byte-stable.
struct SvgDocument {
  int width = 800;
  int height = 800;
  std::vector<std::string> elements;

  std::string str() const;
};

// Face [0,8] x [-4,4] at 100 px per unit. Each polynomial curve is sampled
// on pixel-row centers y = (2k+1)/200; the x root on each row is refined to
// half a pixel and drawn where the region walk finds the curve effective.
// One polyline per curve and quadrant (class "curve"), one circle per
// intersection point of the catalog (class "point").
//
// stretch > 1 draws only Q1 with x scaled by that factor.
SvgDocument svg_face_map(const Catalog& catalog, int stretch = 1);

// Boundary 16-gon, sites, corners and the cut locus of a Q1 point.
SvgDocument svg_unfolding(const FacePoint& p);

// Layered drawing rooted at a centroid.
SvgDocument svg_tree(const LabeledTree& t);

}  // namespace cubecut
