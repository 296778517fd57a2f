#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "arrangefree/rational.hpp"

namespace arrangefree {

// Dense row-major integer matrix. All elimination routines work over the
// rationals but keep rows as primitive integer vectors, so results are exact.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Int> a;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  Int& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const Int& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  static IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows_in) {
    int r = static_cast<int>(rows_in.size());
    int c = r == 0 ? 0 : static_cast<int>(rows_in[0].size());
    IntMatrix m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m.at(i, j) = rows_in[i][j];
    return m;
  }

  std::vector<Int> row(int r) const {
    return std::vector<Int>(a.begin() + static_cast<size_t>(r) * cols,
                            a.begin() + static_cast<size_t>(r + 1) * cols);
  }
};

namespace detail {

inline void row_gcd_clear(IntMatrix& m, int r) {
  Int g = 0;
  for (int c = 0; c < m.cols; ++c) {
    g = gcd(g, m.at(r, c));
    if (g == 1) return;
  }
  if (g == 0 || g == 1) return;
  for (int c = 0; c < m.cols; ++c)
    if (m.at(r, c) != 0) m.at(r, c) = div_exact(m.at(r, c), g);
}

}  // namespace detail

// In-place Gauss-Jordan elimination to the canonical reduced echelon form:
// nonzero rows first, each row primitive with positive pivot, zeros above and
// below every pivot. The form is unique per row space. Returns pivot columns.
inline std::vector<int> rref(IntMatrix& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    // smallest-magnitude pivot keeps intermediate entries short
    int pr = -1;
    for (int i = r; i < m.rows; ++i) {
      if (m.at(i, c) == 0) continue;
      if (pr < 0 || mpz_cmpabs(m.at(i, c).get_mpz_t(), m.at(pr, c).get_mpz_t()) < 0) pr = i;
    }
    if (pr < 0) continue;
    if (pr != r)
      for (int j = 0; j < m.cols; ++j) swap(m.at(pr, j), m.at(r, j));
    const Int p = m.at(r, c);
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      const Int q = m.at(i, c);
      const Int g = gcd(p, q);
      const Int fp = div_exact(p, g);
      const Int fq = div_exact(q, g);
      for (int j = 0; j < m.cols; ++j) m.at(i, j) = fp * m.at(i, j) - fq * m.at(r, j);
      detail::row_gcd_clear(m, i);
    }
    pivots.push_back(c);
    ++r;
  }
  for (int i = 0; i < static_cast<int>(pivots.size()); ++i) {
    std::vector<Int> row = m.row(i);
    make_primitive(row);
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = row[j];
  }
  for (int i = static_cast<int>(pivots.size()); i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = 0;
  return pivots;
}

inline int rank(IntMatrix m) { return static_cast<int>(rref(m).size()); }

// Basis of the right kernel over the rationals, one primitive integer vector
// per free column, sign-normalized so the first nonzero entry is positive.
// An empty result means full column rank; an empty matrix yields the
// standard basis.
inline std::vector<std::vector<Int>> kernel_basis(IntMatrix m) {
  const int n = m.cols;
  std::vector<int> pivots = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (int c : pivots) is_pivot[c] = true;

  Int l = 1;
  for (int i = 0; i < static_cast<int>(pivots.size()); ++i) l = lcm(l, m.at(i, pivots[i]));

  std::vector<std::vector<Int>> basis;
  for (int f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Int> v(n, 0);
    v[f] = l;
    for (int i = 0; i < static_cast<int>(pivots.size()); ++i)
      v[pivots[i]] = -m.at(i, f) * div_exact(l, m.at(i, pivots[i]));
    make_primitive(v);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Reduces vec against canonical echelon rows; true iff vec lies in their
// row space. Integer-only: the residual is cross-multiplied, which preserves
// vanishing.
inline bool in_rowspace(const IntMatrix& echelon, const std::vector<int>& pivots,
                        const std::vector<Int>& vec) {
  std::vector<Int> res = vec;
  for (int i = 0; i < static_cast<int>(pivots.size()); ++i) {
    const Int& r = res[pivots[i]];
    if (r == 0) continue;
    const Int p = echelon.at(i, pivots[i]);
    const Int coef = r;
    for (int j = 0; j < echelon.cols; ++j) res[j] = p * res[j] - coef * echelon.at(i, j);
  }
  return is_zero(res);
}

// Coordinates of vec in terms of canonical echelon rows, or nullopt when vec
// is outside the row space.
inline std::optional<std::vector<Rat>> rowspace_coordinates(const IntMatrix& echelon,
                                                            const std::vector<int>& pivots,
                                                            const std::vector<Int>& vec) {
  std::vector<Rat> res(vec.size());
  for (size_t j = 0; j < vec.size(); ++j) res[j] = Rat(vec[j]);
  std::vector<Rat> coords(pivots.size());
  for (int i = 0; i < static_cast<int>(pivots.size()); ++i) {
    Rat c = res[pivots[i]] / Rat(echelon.at(i, pivots[i]));
    coords[i] = c;
    if (c != 0)
      for (int j = 0; j < echelon.cols; ++j) res[j] -= c * Rat(echelon.at(i, j));
  }
  for (const Rat& x : res)
    if (x != 0) return std::nullopt;
  return coords;
}

// Incrementally maintained echelon basis (not fully reduced) for rank and
// span-membership queries over long coefficient vectors.
class EchelonBasis {
 public:
  explicit EchelonBasis(int cols) : cols_(cols) {}

  int rank() const { return static_cast<int>(rows_.size()); }

  // Reduces v against the basis; inserts the residual if nonzero.
  // Returns true iff the rank grew.
  bool insert(std::vector<Int> v) {
    reduce(v);
    int p = pivot_of(v);
    if (p < 0) return false;
    make_primitive(v);
    size_t pos = 0;
    while (pos < rows_.size() && pivots_[pos] < p) ++pos;
    rows_.insert(rows_.begin() + static_cast<long>(pos), std::move(v));
    pivots_.insert(pivots_.begin() + static_cast<long>(pos), p);
    return true;
  }

  bool contains(std::vector<Int> v) const {
    reduce(v);
    return pivot_of(v) < 0;
  }

 private:
  void reduce(std::vector<Int>& v) const {
    for (size_t i = 0; i < rows_.size(); ++i) {
      const Int& x = v[static_cast<size_t>(pivots_[i])];
      if (x == 0) continue;
      const Int p = rows_[i][static_cast<size_t>(pivots_[i])];
      const Int g = gcd(p, x);
      const Int fp = div_exact(p, g);
      const Int fx = div_exact(x, g);
      for (int j = 0; j < cols_; ++j)
        v[static_cast<size_t>(j)] = fp * v[static_cast<size_t>(j)] - fx * rows_[i][static_cast<size_t>(j)];
      if ((i & 7u) == 7u) make_primitive(v);  // keep entries short
    }
  }

  int pivot_of(const std::vector<Int>& v) const {
    for (int j = 0; j < cols_; ++j)
      if (v[static_cast<size_t>(j)] != 0) return j;
    return -1;
  }

  int cols_;
  std::vector<std::vector<Int>> rows_;
  std::vector<int> pivots_;
};

// Unique exact solution of A x = b for a full-column-rank A, if consistent.
inline std::optional<std::vector<Rat>> solve_unique(const IntMatrix& a, const std::vector<Int>& b) {
  IntMatrix aug(a.rows, a.cols + 1);
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < a.cols; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols) = b[i];
  }
  std::vector<int> pivots = rref(aug);
  std::vector<Rat> x(a.cols, Rat(0));
  for (int i = 0; i < static_cast<int>(pivots.size()); ++i) {
    if (pivots[i] == a.cols) return std::nullopt;  // inconsistent
    x[pivots[i]] = Rat(aug.at(i, a.cols)) / Rat(aug.at(i, pivots[i]));
  }
  return x;
}

}  // namespace arrangefree
