#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cubecut {

// Index 1..8 of a source image in the star unfolding.
class SiteIndex {
 public:
  explicit SiteIndex(int v);
  int value() const { return v_; }
  SiteIndex next() const { return SiteIndex(v_ % 8 + 1); }
  auto operator<=>(const SiteIndex&) const = default;

 private:
  int v_;
};

// Label 1..8 of a cube corner; corners 6 and 7 are the source face corners
// on the left and right of the unfolding.
class CornerId {
 public:
  explicit CornerId(int v);
  int value() const { return v_; }
  auto operator<=>(const CornerId&) const = default;

 private:
  int v_;
};

// Subset of {1..8}, stored as a bit mask.
class SiteSet {
 public:
  SiteSet() = default;
  SiteSet(std::initializer_list<int> members);
  static SiteSet from_mask(std::uint16_t mask);
  // "1235" -> {1,2,3,5}
  static SiteSet parse(std::string_view digits);

  bool contains(int s) const { return (mask_ >> s) & 1U; }
  void insert(int s);
  int size() const;
  bool empty() const { return mask_ == 0; }
  std::uint16_t mask() const { return mask_; }
  std::vector<int> members() const;
  bool subset_of(const SiteSet& other) const { return (mask_ & ~other.mask_) == 0; }

  friend SiteSet operator|(SiteSet a, SiteSet b) { return from_mask(a.mask_ | b.mask_); }
  friend SiteSet operator&(SiteSet a, SiteSet b) { return from_mask(a.mask_ & b.mask_); }
  auto operator<=>(const SiteSet&) const = default;

  std::string to_string() const;

 private:
  std::uint16_t mask_ = 0;
};

// Applies a permutation of {1..8} given as image[1..8] (image[0] unused).
using Permutation = std::vector<int>;
SiteSet apply(const Permutation& perm, SiteSet s);

// Set of 3-subsets, kept sorted so equal sets compare equal.
class TripleSet {
 public:
  TripleSet() = default;
  explicit TripleSet(std::vector<SiteSet> triples);
  // "123 135 345 ..." -> set of triples
  static TripleSet parse(std::string_view text);

  const std::vector<SiteSet>& triples() const { return t_; }
  bool contains(SiteSet s) const;
  std::size_t size() const { return t_.size(); }
  TripleSet with(SiteSet add) const;
  TripleSet without(SiteSet remove) const;
  bool operator==(const TripleSet&) const = default;
  bool operator<(const TripleSet& o) const { return t_ < o.t_; }
  std::string to_string() const;

 private:
  std::vector<SiteSet> t_;
};

TripleSet apply(const Permutation& perm, const TripleSet& t);

}  // namespace cubecut
