#include "cubecut/site_set.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "cubecut/errors.hpp"

namespace cubecut {

SiteIndex::SiteIndex(int v) : v_(v) {
  if (v < 1 || v > 8) throw DomainError("site index out of range: " + std::to_string(v));
}

CornerId::CornerId(int v) : v_(v) {
  if (v < 1 || v > 8) throw DomainError("corner id out of range: " + std::to_string(v));
}

SiteSet::SiteSet(std::initializer_list<int> members) {
  for (int s : members) insert(s);
}

SiteSet SiteSet::from_mask(std::uint16_t mask) {
  SiteSet s;
  s.mask_ = mask;
  return s;
}

SiteSet SiteSet::parse(std::string_view digits) {
  SiteSet s;
  for (char c : digits) {
    if (c < '1' || c > '8') throw ParseError("bad site digit in '" + std::string(digits) + "'");
    s.insert(c - '0');
  }
  return s;
}

void SiteSet::insert(int s) {
  if (s < 1 || s > 8) throw DomainError("site index out of range: " + std::to_string(s));
  mask_ = static_cast<std::uint16_t>(mask_ | (1U << s));
}

int SiteSet::size() const { return std::popcount(mask_); }

std::vector<int> SiteSet::members() const {
  std::vector<int> out;
  for (int s = 1; s <= 8; ++s) {
    if (contains(s)) out.push_back(s);
  }
  return out;
}

std::string SiteSet::to_string() const {
  std::string out;
  for (int s : members()) out.push_back(static_cast<char>('0' + s));
  return out;
}

SiteSet apply(const Permutation& perm, SiteSet s) {
  SiteSet out;
  for (int m : s.members()) out.insert(perm.at(m));
  return out;
}

TripleSet::TripleSet(std::vector<SiteSet> triples) : t_(std::move(triples)) {
  std::sort(t_.begin(), t_.end());
  t_.erase(std::unique(t_.begin(), t_.end()), t_.end());
}

TripleSet TripleSet::parse(std::string_view text) {
  std::vector<SiteSet> t;
  std::istringstream in{std::string(text)};
  std::string word;
  while (in >> word) t.push_back(SiteSet::parse(word));
  return TripleSet(std::move(t));
}

bool TripleSet::contains(SiteSet s) const { return std::binary_search(t_.begin(), t_.end(), s); }

TripleSet TripleSet::with(SiteSet add) const {
  auto t = t_;
  t.push_back(add);
  return TripleSet(std::move(t));
}

TripleSet TripleSet::without(SiteSet remove) const {
  auto t = t_;
  t.erase(std::remove(t.begin(), t.end(), remove), t.end());
  return TripleSet(std::move(t));
}

std::string TripleSet::to_string() const {
  std::string out;
  for (const auto& s : t_) {
    if (!out.empty()) out.push_back(' ');
    out += s.to_string();
  }
  return out;
}

TripleSet apply(const Permutation& perm, const TripleSet& t) {
  std::vector<SiteSet> out;
  for (const auto& s : t.triples()) out.push_back(apply(perm, s));
  return TripleSet(std::move(out));
}

}  // namespace cubecut
