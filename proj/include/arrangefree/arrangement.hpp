#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "arrangefree/hyperplane.hpp"

namespace arrangefree {

// A finite set of distinct central hyperplanes in a fixed ambient dimension.
// Hyperplane order is preserved (it is the file/construction order); the
// cache key is order-independent.
class Arrangement {
 public:
  Arrangement() = default;  // empty arrangement in the zero-dimensional space

  explicit Arrangement(int ambient_dim) : ambient_(ambient_dim) {
    if (ambient_dim < 0) throw DimensionMismatchError("ambient dimension must be nonnegative");
  }

  enum class Duplicates { Reject, Merge };

  Arrangement(int ambient_dim, std::vector<Hyperplane> hyperplanes,
              Duplicates dup = Duplicates::Reject)
      : ambient_(ambient_dim) {
    for (auto& h : hyperplanes) {
      if (h.ambient_dim() != ambient_) throw DimensionMismatchError();
      if (contains(h)) {
        if (dup == Duplicates::Reject)
          throw DuplicateHyperplaneError("duplicate hyperplane " + h.key());
        continue;
      }
      hs_.push_back(std::move(h));
    }
    rank_ = compute_rank();
  }

  int ambient_dim() const { return ambient_; }
  int size() const { return static_cast<int>(hs_.size()); }
  bool empty() const { return hs_.empty(); }
  int rank() const { return rank_; }
  const Hyperplane& operator[](int i) const { return hs_[static_cast<size_t>(i)]; }
  const std::vector<Hyperplane>& hyperplanes() const { return hs_; }

  bool contains(const Hyperplane& h) const {
    return std::find(hs_.begin(), hs_.end(), h) != hs_.end();
  }

  std::optional<int> index_of(const Hyperplane& h) const {
    auto it = std::find(hs_.begin(), hs_.end(), h);
    if (it == hs_.end()) return std::nullopt;
    return static_cast<int>(it - hs_.begin());
  }

  Arrangement deleted(int i) const {
    check_index(i);
    std::vector<Hyperplane> hs = hs_;
    hs.erase(hs.begin() + i);
    return Arrangement(ambient_, std::move(hs));
  }

  Arrangement subset(const std::vector<int>& indices) const {
    std::vector<Hyperplane> hs;
    hs.reserve(indices.size());
    for (int i : indices) {
      check_index(i);
      hs.push_back(hs_[static_cast<size_t>(i)]);
    }
    return Arrangement(ambient_, std::move(hs));
  }

  Arrangement subset_mask(uint64_t mask) const {
    std::vector<Hyperplane> hs;
    for (int i = 0; i < size(); ++i)
      if (mask >> i & 1) hs.push_back(hs_[static_cast<size_t>(i)]);
    return Arrangement(ambient_, std::move(hs));
  }

  // 0_A = intersection of all hyperplanes; codim(0_A) = rank.
  Flat center() const {
    std::vector<std::vector<Int>> rows;
    rows.reserve(hs_.size());
    for (const auto& h : hs_) rows.push_back(h.normal());
    return Flat::from_generators(ambient_, rows);
  }

  void check_index(int i) const {
    if (i < 0 || i >= size()) throw IndexOutOfRangeError();
  }

  // Order-independent canonical key: ambient dimension plus the sorted
  // multiset of canonical normals.
  const std::string& key() const {
    if (key_.empty()) {
      std::vector<std::string> ks;
      ks.reserve(hs_.size());
      for (const auto& h : hs_) ks.push_back(h.key());
      std::sort(ks.begin(), ks.end());
      std::ostringstream os;
      os << "dim " << ambient_ << " :";
      for (const auto& k : ks) os << ' ' << k << '/';
      key_ = os.str();
    }
    return key_;
  }

  friend bool operator==(const Arrangement& a, const Arrangement& b) {
    return a.ambient_ == b.ambient_ && a.hs_ == b.hs_;
  }

 private:
  int compute_rank() const {
    std::vector<std::vector<Int>> rows;
    rows.reserve(hs_.size());
    for (const auto& h : hs_) rows.push_back(h.normal());
    IntMatrix m = IntMatrix::from_rows(rows);
    if (m.rows == 0) return 0;
    return arrangefree::rank(std::move(m));
  }

  int ambient_ = 0;
  std::vector<Hyperplane> hs_;
  int rank_ = 0;
  mutable std::string key_;
};

// Same hyperplane set regardless of order.
inline bool same_arrangement(const Arrangement& a, const Arrangement& b) {
  return a.key() == b.key();
}

}  // namespace arrangefree
