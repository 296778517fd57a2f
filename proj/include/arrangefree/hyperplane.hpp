#pragma once

#include <algorithm>
#include <compare>
#include <sstream>
#include <string>
#include <vector>

#include "arrangefree/linalg.hpp"

namespace arrangefree {

inline int compare_vec(const std::vector<Int>& a, const std::vector<Int>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = 0; i < a.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c != 0) return c;
  }
  return 0;
}

// A linear hyperplane ker(n.x), stored as the unique primitive integer
// normal whose first nonzero entry is positive. Two coefficient vectors
// define the same hyperplane iff their canonical forms are equal.
class Hyperplane {
 public:
  Hyperplane(std::vector<Int> normal) : normal_(std::move(normal)) {
    if (is_zero(normal_)) throw ZeroNormalError();
    make_primitive(normal_);
  }

  static Hyperplane from_rational(const std::vector<Rat>& coeffs) {
    std::vector<Int> n = clear_denominators(coeffs);
    if (is_zero(n)) throw ZeroNormalError();
    return Hyperplane(std::move(n));
  }

  int ambient_dim() const { return static_cast<int>(normal_.size()); }
  const std::vector<Int>& normal() const { return normal_; }

  std::string key() const {
    std::ostringstream os;
    for (const Int& x : normal_) os << x.get_str() << ' ';
    return os.str();
  }

  friend bool operator==(const Hyperplane& a, const Hyperplane& b) {
    return a.normal_ == b.normal_;
  }
  friend bool operator<(const Hyperplane& a, const Hyperplane& b) {
    return compare_vec(a.normal_, b.normal_) < 0;
  }

 private:
  std::vector<Int> normal_;
};

inline Hyperplane canonical_hyperplane(const std::vector<Rat>& coeffs) {
  return Hyperplane::from_rational(coeffs);
}

// A linear subspace cut out by hyperplanes of an arrangement, represented by
// the canonical integer echelon basis of the linear forms vanishing on it.
// Equality of flats is field-wise equality of that basis.
class Flat {
 public:
  static Flat full_space(int ambient_dim) {
    Flat f;
    f.ambient_ = ambient_dim;
    return f;
  }

  static Flat of_hyperplane(const Hyperplane& h) {
    return from_generators(h.ambient_dim(), {h.normal()});
  }

  // Canonicalizes arbitrary spanning rows (zero rows allowed and dropped).
  static Flat from_generators(int ambient_dim, const std::vector<std::vector<Int>>& rows) {
    IntMatrix m = IntMatrix::from_rows(rows);
    m.cols = m.rows == 0 ? 0 : m.cols;
    Flat f;
    f.ambient_ = ambient_dim;
    if (m.rows == 0) return f;
    if (m.cols != ambient_dim) throw DimensionMismatchError();
    f.pivots_ = rref(m);
    for (size_t i = 0; i < f.pivots_.size(); ++i) f.rows_.push_back(m.row(static_cast<int>(i)));
    return f;
  }

  int ambient_dim() const { return ambient_; }
  int codim() const { return static_cast<int>(rows_.size()); }
  int dim() const { return ambient_ - codim(); }
  const std::vector<std::vector<Int>>& normal_span() const { return rows_; }
  const std::vector<int>& pivots() const { return pivots_; }

  bool is_full_space() const { return rows_.empty(); }

  // flat ⊆ ker(n.x)?
  bool contained_in(const Hyperplane& h) const {
    if (h.ambient_dim() != ambient_) throw DimensionMismatchError();
    return in_rowspace(matrix(), pivots_, h.normal());
  }

  // this ⊆ other as subspaces (other's forms vanish on this).
  bool contained_in(const Flat& other) const {
    if (other.ambient_ != ambient_) throw DimensionMismatchError();
    IntMatrix m = matrix();
    for (const auto& row : other.rows_)
      if (!in_rowspace(m, pivots_, row)) return false;
    return true;
  }

  IntMatrix matrix() const {
    IntMatrix m = IntMatrix::from_rows(rows_);
    if (m.rows > 0) m.cols = ambient_;
    else m.cols = ambient_;
    return m;
  }

  std::string key() const {
    std::ostringstream os;
    os << ambient_ << '|';
    for (const auto& row : rows_) {
      for (const Int& x : row) os << x.get_str() << ' ';
      os << ';';
    }
    return os.str();
  }

  friend bool operator==(const Flat& a, const Flat& b) {
    return a.ambient_ == b.ambient_ && a.rows_ == b.rows_;
  }
  friend bool operator<(const Flat& a, const Flat& b) {
    if (a.ambient_ != b.ambient_) return a.ambient_ < b.ambient_;
    if (a.rows_.size() != b.rows_.size()) return a.rows_.size() < b.rows_.size();
    for (size_t i = 0; i < a.rows_.size(); ++i) {
      int c = compare_vec(a.rows_[i], b.rows_[i]);
      if (c != 0) return c < 0;
    }
    return false;
  }

 private:
  int ambient_ = 0;
  std::vector<std::vector<Int>> rows_;
  std::vector<int> pivots_;
};

inline Flat intersect_flats(const Flat& a, const Flat& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatchError();
  std::vector<std::vector<Int>> rows = a.normal_span();
  rows.insert(rows.end(), b.normal_span().begin(), b.normal_span().end());
  return Flat::from_generators(a.ambient_dim(), rows);
}

inline Flat intersect_flat_hyperplane(const Flat& a, const Hyperplane& h) {
  std::vector<std::vector<Int>> rows = a.normal_span();
  rows.push_back(h.normal());
  return Flat::from_generators(a.ambient_dim(), rows);
}

}  // namespace arrangefree
