#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wex {

// Sorted set of vertex ids with a fixed ambient universe size.
// Deterministic ordering makes witnesses reproducible in reports.
class VertexSet {
public:
  VertexSet() : universe_(0) {}
  explicit VertexSet(int universe) : universe_(universe) {}
  VertexSet(std::vector<int> ids, int universe) : ids_(std::move(ids)), universe_(universe) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
    for (int v : ids_) {
      if (v < 0 || v >= universe_)
        throw std::invalid_argument("VertexSet: id " + std::to_string(v) + " out of range");
    }
  }

  static VertexSet from_mask(std::uint64_t mask, int universe) {
    std::vector<int> ids;
    for (int v = 0; v < universe && v < 64; ++v)
      if (mask >> v & 1) ids.push_back(v);
    return VertexSet(std::move(ids), universe);
  }

  // {0, 1, ..., count-1}
  static VertexSet prefix(int count, int universe) {
    std::vector<int> ids(count);
    for (int v = 0; v < count; ++v) ids[v] = v;
    return VertexSet(std::move(ids), universe);
  }

  int universe() const { return universe_; }
  int size() const { return static_cast<int>(ids_.size()); }
  bool empty() const { return ids_.empty(); }
  const std::vector<int>& ids() const { return ids_; }

  bool contains(int v) const {
    return std::binary_search(ids_.begin(), ids_.end(), v);
  }
  bool is_subset_of(const VertexSet& other) const {
    return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
  }

  std::uint64_t mask() const {
    std::uint64_t m = 0;
    for (int v : ids_) {
      if (v >= 64) throw std::invalid_argument("VertexSet::mask: universe too large");
      m |= std::uint64_t{1} << v;
    }
    return m;
  }

  friend VertexSet set_union(const VertexSet& a, const VertexSet& b) {
    std::vector<int> out;
    std::set_union(a.ids_.begin(), a.ids_.end(), b.ids_.begin(), b.ids_.end(),
                   std::back_inserter(out));
    return VertexSet(std::move(out), std::max(a.universe_, b.universe_));
  }
  friend VertexSet set_minus(const VertexSet& a, const VertexSet& b) {
    std::vector<int> out;
    std::set_difference(a.ids_.begin(), a.ids_.end(), b.ids_.begin(), b.ids_.end(),
                        std::back_inserter(out));
    return VertexSet(std::move(out), a.universe_);
  }
  friend VertexSet set_intersect(const VertexSet& a, const VertexSet& b) {
    std::vector<int> out;
    std::set_intersection(a.ids_.begin(), a.ids_.end(), b.ids_.begin(), b.ids_.end(),
                          std::back_inserter(out));
    return VertexSet(std::move(out), std::max(a.universe_, b.universe_));
  }

  friend bool operator==(const VertexSet& a, const VertexSet& b) { return a.ids_ == b.ids_; }
  friend bool operator!=(const VertexSet& a, const VertexSet& b) { return !(a == b); }
  // Lexicographic on the sorted id sequence; used for deterministic tie-breaks.
  friend bool operator<(const VertexSet& a, const VertexSet& b) {
    return std::lexicographical_compare(a.ids_.begin(), a.ids_.end(),
                                        b.ids_.begin(), b.ids_.end());
  }

  std::string str() const {
    std::string out = "{";
    for (size_t i = 0; i < ids_.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(ids_[i]);
    }
    return out + "}";
  }

private:
  std::vector<int> ids_;
  int universe_;
};

}  // namespace wex
