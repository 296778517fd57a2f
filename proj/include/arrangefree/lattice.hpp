#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "arrangefree/arrangement.hpp"
#include "arrangefree/charpoly.hpp"

namespace arrangefree {

struct LatticeFlat {
  Flat flat;
  std::vector<int> atoms;            // sorted indices of hyperplanes containing the flat
  std::vector<uint64_t> atom_bits;   // same set as a bitset over hyperplane indices
  Int mu = 0;
};

inline std::vector<uint64_t> make_bits(const std::vector<int>& idx, int n) {
  std::vector<uint64_t> b(static_cast<size_t>((n + 63) / 64), 0);
  if (b.empty()) b.push_back(0);
  for (int i : idx) b[static_cast<size_t>(i / 64)] |= uint64_t(1) << (i % 64);
  return b;
}

inline bool bits_subset(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

// The full intersection lattice: flats grouped by codimension, each with its
// atom set and Mobius value. Level ordering is deterministic (flats sorted by
// canonical key within a level).
class IntersectionLattice {
 public:
  int ambient_dim = 0;
  int rank = 0;
  int num_hyperplanes = 0;
  std::vector<std::vector<LatticeFlat>> levels;  // levels[k]: flats of codim k

  const LatticeFlat& top() const { return levels.back().front(); }

  int num_flats() const {
    int n = 0;
    for (const auto& lv : levels) n += static_cast<int>(lv.size());
    return n;
  }

  std::vector<int> level_sizes() const {
    std::vector<int> s;
    s.reserve(levels.size());
    for (const auto& lv : levels) s.push_back(static_cast<int>(lv.size()));
    return s;
  }

  const LatticeFlat* find(const Flat& f) const {
    int k = f.codim();
    if (k < 0 || k >= static_cast<int>(levels.size())) return nullptr;
    for (const auto& lf : levels[static_cast<size_t>(k)])
      if (lf.flat == f) return &lf;
    return nullptr;
  }

  CharPoly characteristic_polynomial() const {
    std::vector<Int> c(static_cast<size_t>(ambient_dim) + 1, 0);
    for (const auto& lv : levels)
      for (const auto& lf : lv) c[static_cast<size_t>(lf.flat.dim())] += lf.mu;
    return CharPoly(std::move(c));
  }
};

// Level-by-level construction: intersect every codim-k flat with every
// hyperplane not containing it, dedup by canonical key, then recompute atom
// sets by containment and Mobius values by the top-down recursion
// mu(V) = 1, mu(X) = -sum of mu over flats strictly containing X.
inline IntersectionLattice build_lattice(const Arrangement& a) {
  IntersectionLattice lat;
  lat.ambient_dim = a.ambient_dim();
  lat.num_hyperplanes = a.size();

  std::vector<Flat> current{Flat::full_space(a.ambient_dim())};
  std::vector<std::vector<Flat>> flat_levels{current};
  while (true) {
    std::map<std::string, Flat> next;
    for (const Flat& x : current) {
      for (int i = 0; i < a.size(); ++i) {
        if (x.contained_in(a[i])) continue;
        Flat y = intersect_flat_hyperplane(x, a[i]);
        next.emplace(y.key(), std::move(y));
      }
    }
    if (next.empty()) break;
    current.clear();
    for (auto& [k, f] : next) current.push_back(std::move(f));
    flat_levels.push_back(current);
  }

  lat.rank = static_cast<int>(flat_levels.size()) - 1;
  if (lat.rank != a.rank())
    throw InvariantViolationError("lattice rank disagrees with matrix rank");

  for (auto& lv : flat_levels) {
    std::sort(lv.begin(), lv.end());
    std::vector<LatticeFlat> out;
    out.reserve(lv.size());
    for (auto& f : lv) {
      LatticeFlat lf;
      lf.atoms.clear();
      for (int i = 0; i < a.size(); ++i)
        if (f.contained_in(a[i])) lf.atoms.push_back(i);
      lf.atom_bits = make_bits(lf.atoms, a.size());
      lf.flat = std::move(f);
      out.push_back(std::move(lf));
    }
    lat.levels.push_back(std::move(out));
  }

  if (!a.empty() && static_cast<int>(lat.levels[1].size()) != a.size())
    throw InvariantViolationError("level 1 must contain exactly |A| flats");

  lat.levels[0][0].mu = 1;
  for (size_t k = 1; k < lat.levels.size(); ++k) {
    for (auto& lf : lat.levels[k]) {
      Int acc = 0;
      for (size_t j = 0; j < k; ++j)
        for (const auto& up : lat.levels[j])
          if (bits_subset(up.atom_bits, lf.atom_bits)) acc += up.mu;
      lf.mu = -acc;
    }
  }
  return lat;
}

// Process-wide lattice cache keyed by the arrangement's canonical key. The
// freeness searches re-query sub-arrangements heavily, so sharing matters.
class LatticeCache {
 public:
  std::shared_ptr<const IntersectionLattice> get_or_build(const Arrangement& a) {
    const std::string& key = a.key();
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = m_.find(key);
      if (it != m_.end()) return it->second;
    }
    auto lat = std::make_shared<IntersectionLattice>(build_lattice(a));
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = m_.emplace(key, std::move(lat));
    return it->second;
  }

  void insert(const std::string& key, std::shared_ptr<const IntersectionLattice> lat) {
    std::lock_guard<std::mutex> lock(mu_);
    m_.emplace(key, std::move(lat));
  }

  std::shared_ptr<const IntersectionLattice> lookup(const std::string& key) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = m_.find(key);
    return it == m_.end() ? nullptr : it->second;
  }

  void clear() {
    std::lock_guard<std::mutex> lock(mu_);
    m_.clear();
  }

  size_t size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return m_.size();
  }

  static LatticeCache& global() {
    static LatticeCache cache;
    return cache;
  }

 private:
  mutable std::mutex mu_;
  std::unordered_map<std::string, std::shared_ptr<const IntersectionLattice>> m_;
};

inline std::shared_ptr<const IntersectionLattice> lattice_of(const Arrangement& a) {
  return LatticeCache::global().get_or_build(a);
}

// chi(A;t) via the Mobius sum, plus the reduced polynomial chi/(t-1) for
// nonempty arrangements. The division must be exact.
inline std::pair<CharPoly, std::optional<CharPoly>> char_poly(const Arrangement& a) {
  CharPoly chi = lattice_of(a)->characteristic_polynomial();
  if (chi.degree() != a.ambient_dim() || !chi.is_monic())
    throw InvariantViolationError("characteristic polynomial must be monic of degree l");
  if (chi.coeff(a.ambient_dim() - 1) != -Int(a.size()) && a.ambient_dim() >= 1)
    throw InvariantViolationError("coefficient of t^(l-1) must be -|A|");
  if (a.empty()) return {chi, std::nullopt};
  auto reduced = chi.divide_exact(CharPoly({Int(-1), Int(1)}));
  if (!reduced)
    throw InvariantViolationError("chi of a nonempty arrangement must be divisible by t-1");
  return {chi, *reduced};
}

// Independent oracle: the subset expansion
//   chi(A;t) = sum over B subset of A of (-1)^|B| t^(l - rank B),
// enumerated with an incremental row basis. Exponential; guarded.
inline CharPoly char_poly_whitney(const Arrangement& a) {
  if (a.size() > 20) throw TooLargeError("whitney expansion limited to |A| <= 20");
  std::vector<Int> c(static_cast<size_t>(a.ambient_dim()) + 1, 0);

  struct Rec {
    const Arrangement& a;
    std::vector<Int>& c;
    void go(int i, IntMatrix basis, std::vector<int> pivots, int sign) {
      if (i == a.size()) {
        c[static_cast<size_t>(a.ambient_dim() - static_cast<int>(pivots.size()))] += sign;
        return;
      }
      go(i + 1, basis, pivots, sign);  // skip hyperplane i
      // take hyperplane i
      if (in_rowspace(basis, pivots, a[i].normal())) {
        go(i + 1, std::move(basis), std::move(pivots), -sign);
      } else {
        IntMatrix m(basis.rows + 1, a.ambient_dim());
        for (int r = 0; r < basis.rows; ++r)
          for (int j = 0; j < basis.cols; ++j) m.at(r, j) = basis.at(r, j);
        for (int j = 0; j < a.ambient_dim(); ++j) m.at(basis.rows, j) = a[i].normal()[static_cast<size_t>(j)];
        std::vector<int> p = rref(m);
        go(i + 1, std::move(m), std::move(p), -sign);
      }
    }
  } rec{a, c};
  IntMatrix empty(0, a.ambient_dim());
  rec.go(0, std::move(empty), {}, 1);
  return CharPoly(std::move(c));
}

// Sub-arrangement of hyperplanes containing the flat x, which must itself be
// a lattice element (the intersection of the hyperplanes containing it).
inline Arrangement localization(const Arrangement& a, const Flat& x) {
  if (x.ambient_dim() != a.ambient_dim()) throw DimensionMismatchError();
  std::vector<int> idx;
  std::vector<std::vector<Int>> rows;
  for (int i = 0; i < a.size(); ++i) {
    if (x.contained_in(a[i])) {
      idx.push_back(i);
      rows.push_back(a[i].normal());
    }
  }
  if (!(Flat::from_generators(a.ambient_dim(), rows) == x)) throw FlatNotInLatticeError();
  return a.subset(idx);
}

// Restriction A^H: the traces of the other hyperplanes on H, expressed in a
// basis of H. `basis_cols` records the chosen basis (columns spanning H);
// `origins[j]` lists the indices of the hyperplanes of A whose trace is the
// j-th restricted hyperplane.
struct Restriction {
  Arrangement arr;
  int h_index = -1;
  std::vector<std::vector<Int>> basis_cols;  // each of length ambient_dim(A)
  std::vector<std::vector<int>> origins;
};

inline std::vector<Int> trace_normal(const Hyperplane& h,
                                     const std::vector<std::vector<Int>>& basis_cols) {
  std::vector<Int> out(basis_cols.size(), 0);
  for (size_t j = 0; j < basis_cols.size(); ++j) {
    Int acc = 0;
    for (size_t k = 0; k < h.normal().size(); ++k) acc += h.normal()[k] * basis_cols[j][k];
    out[j] = acc;
  }
  return out;
}

inline Restriction restriction_with_basis(const Arrangement& a, int h,
                                          const std::vector<std::vector<Int>>& basis_cols) {
  a.check_index(h);
  Restriction res;
  res.h_index = h;
  res.basis_cols = basis_cols;
  std::vector<Hyperplane> traces;
  std::map<std::string, int> seen;
  for (int i = 0; i < a.size(); ++i) {
    if (i == h) continue;
    std::vector<Int> t = trace_normal(a[i], basis_cols);
    if (is_zero(t))
      throw InvariantViolationError("a distinct hyperplane cannot contain H");
    Hyperplane th(std::move(t));
    auto [it, inserted] = seen.emplace(th.key(), static_cast<int>(traces.size()));
    if (inserted) {
      traces.push_back(std::move(th));
      res.origins.emplace_back();
    }
    res.origins[static_cast<size_t>(it->second)].push_back(i);
  }
  res.arr = Arrangement(a.ambient_dim() - 1, std::move(traces));
  return res;
}

// Default basis of H: the canonical kernel basis of its normal form.
inline Restriction restriction(const Arrangement& a, int h) {
  a.check_index(h);
  IntMatrix m = IntMatrix::from_rows({a[h].normal()});
  return restriction_with_basis(a, h, kernel_basis(std::move(m)));
}

// Restriction A^X onto an arbitrary flat of the lattice: traces of the
// hyperplanes not containing X, in the canonical basis of X.
struct FlatRestriction {
  Arrangement arr;
  std::vector<std::vector<Int>> basis_cols;
  std::vector<std::vector<int>> origins;
};

inline FlatRestriction restriction_to_flat(const Arrangement& a, const Flat& x) {
  if (x.ambient_dim() != a.ambient_dim()) throw DimensionMismatchError();
  FlatRestriction res;
  res.basis_cols = kernel_basis(x.matrix());
  std::vector<Hyperplane> traces;
  std::map<std::string, int> seen;
  for (int i = 0; i < a.size(); ++i) {
    if (x.contained_in(a[i])) continue;
    std::vector<Int> t = trace_normal(a[i], res.basis_cols);
    if (is_zero(t)) throw InvariantViolationError("trace of a non-containing hyperplane is zero");
    Hyperplane th(std::move(t));
    auto [it, inserted] = seen.emplace(th.key(), static_cast<int>(traces.size()));
    if (inserted) {
      traces.push_back(std::move(th));
      res.origins.emplace_back();
    }
    res.origins[static_cast<size_t>(it->second)].push_back(i);
  }
  res.arr = Arrangement(x.dim(), std::move(traces));
  return res;
}

// Essential part: the same arrangement written in coordinates of V modulo
// the center. chi(A;t) = t^(l-rank) * chi(essential;t). The quotient map
// records the coordinate change (rows are the new coordinate forms).
struct EssentialPart {
  Arrangement arr;
  std::vector<std::vector<Int>> quotient_rows;  // rank x ambient_dim(A)
};

inline EssentialPart essential_part(const Arrangement& a) {
  std::vector<std::vector<Int>> rows;
  rows.reserve(static_cast<size_t>(a.size()));
  for (const auto& h : a.hyperplanes()) rows.push_back(h.normal());
  IntMatrix m = IntMatrix::from_rows(rows);
  if (m.rows == 0) {
    return {Arrangement(0), {}};
  }
  std::vector<int> pivots = rref(m);
  EssentialPart out;
  for (size_t i = 0; i < pivots.size(); ++i) out.quotient_rows.push_back(m.row(static_cast<int>(i)));
  std::vector<Hyperplane> hs;
  hs.reserve(static_cast<size_t>(a.size()));
  for (const auto& h : a.hyperplanes()) {
    auto coords = rowspace_coordinates(m, pivots, h.normal());
    if (!coords) throw InvariantViolationError("normal outside its own span");
    hs.push_back(Hyperplane::from_rational(*coords));
  }
  out.arr = Arrangement(static_cast<int>(pivots.size()), std::move(hs));
  return out;
}

// Cone of an affine arrangement {alpha = k}: hyperplanes {alpha - k z = 0}
// plus {z = 0}, with z appended as the last coordinate. Duplicates merged.
struct AffineHyperplane {
  std::vector<Rat> normal;
  Rat constant;
};

inline Arrangement cone(const std::vector<AffineHyperplane>& affine, int ambient_dim) {
  std::vector<Hyperplane> hs;
  hs.reserve(affine.size() + 1);
  for (const auto& ah : affine) {
    if (static_cast<int>(ah.normal.size()) != ambient_dim) throw DimensionMismatchError();
    bool zero = true;
    for (const Rat& x : ah.normal)
      if (x != 0) zero = false;
    if (zero) throw ZeroNormalError("affine hyperplane has zero normal");
    std::vector<Rat> v = ah.normal;
    v.push_back(-ah.constant);
    hs.push_back(Hyperplane::from_rational(v));
  }
  std::vector<Rat> z(static_cast<size_t>(ambient_dim) + 1, Rat(0));
  z.back() = 1;
  hs.push_back(Hyperplane::from_rational(z));
  return Arrangement(ambient_dim + 1, std::move(hs), Arrangement::Duplicates::Merge);
}

}  // namespace arrangefree
