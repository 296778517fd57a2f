#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "arrangefree/lattice.hpp"

namespace arrangefree {

enum class RootType { A, B, C, D, G2, F4, E6, E7, E8 };

inline std::string root_type_name(RootType t) {
  switch (t) {
    case RootType::A: return "A";
    case RootType::B: return "B";
    case RootType::C: return "C";
    case RootType::D: return "D";
    case RootType::G2: return "G2";
    case RootType::F4: return "F4";
    case RootType::E6: return "E6";
    case RootType::E7: return "E7";
    default: return "E8";
  }
}

// Crystallographic positive roots in their standard coordinates.
// A_l lives in l+1 coordinates and G2 in 3 (both non-essential); F4 and the
// E types are stored doubled so that every entry is an integer, which changes
// nothing downstream (hyperplanes and the ideal order are scale-invariant).
class RootSystem {
 public:
  RootType type;
  int rank = 0;
  int coords = 0;
  std::vector<std::vector<Int>> positive_roots;
  std::vector<int> simple_indices;              // positions of the simple roots
  std::vector<std::vector<int>> simple_coeffs;  // expansion of each root over the simple ones

  const std::vector<Int>& simple_root(int i) const {
    return positive_roots[static_cast<size_t>(simple_indices[static_cast<size_t>(i)])];
  }

  int num_positive() const { return static_cast<int>(positive_roots.size()); }

  // root_a - root_b lies in the nonnegative span of the simple roots;
  // expansions are unique, so this is a coefficientwise comparison.
  bool dominates(int a, int b) const {
    for (int i = 0; i < rank; ++i)
      if (simple_coeffs[static_cast<size_t>(a)][static_cast<size_t>(i)] <
          simple_coeffs[static_cast<size_t>(b)][static_cast<size_t>(i)])
        return false;
    return true;
  }

  int height(int a) const {
    int s = 0;
    for (int c : simple_coeffs[static_cast<size_t>(a)]) s += c;
    return s;
  }
};

namespace detail {

inline std::vector<Int> unit(int n, int i, int v = 1) {
  std::vector<Int> e(static_cast<size_t>(n), 0);
  e[static_cast<size_t>(i)] = v;
  return e;
}

inline std::vector<Int> combine(const std::vector<Int>& a, const std::vector<Int>& b, int sb) {
  std::vector<Int> r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] += sb * b[i];
  return r;
}

inline long expected_count(RootType t, int rank) {
  switch (t) {
    case RootType::A: return static_cast<long>(rank) * (rank + 1) / 2;
    case RootType::B:
    case RootType::C: return static_cast<long>(rank) * rank;
    case RootType::D: return static_cast<long>(rank) * (rank - 1);
    case RootType::G2: return 6;
    case RootType::F4: return 24;
    case RootType::E6: return 36;
    case RootType::E7: return 63;
    default: return 120;
  }
}

inline Int dot(const std::vector<Int>& a, const std::vector<Int>& b) {
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline void validate_root_system(RootSystem& rs) {
  if (rs.num_positive() != expected_count(rs.type, rs.rank))
    throw InvariantViolationError("positive root count does not match the closed form");

  // expansions over the simple roots: nonnegative integers
  IntMatrix simples(rs.coords, rs.rank);
  for (int j = 0; j < rs.rank; ++j)
    for (int i = 0; i < rs.coords; ++i) simples.at(i, j) = rs.simple_root(j)[static_cast<size_t>(i)];
  for (const auto& root : rs.positive_roots) {
    auto sol = solve_unique(simples, root);
    if (!sol) throw InvariantViolationError("positive root outside the simple-root span");
    std::vector<int> coeffs;
    for (const Rat& c : *sol) {
      if (c.get_den() != 1 || c < 0)
        throw InvariantViolationError("simple-root expansion must be nonnegative integral");
      coeffs.push_back(static_cast<int>(c.get_num().get_si()));
    }
    rs.simple_coeffs.push_back(std::move(coeffs));
  }

  // closure under reflections, and integrality of the Cartan pairings
  auto find_root = [&](const std::vector<Int>& v) {
    for (const auto& r : rs.positive_roots) {
      if (r == v) return true;
      bool neg = true;
      for (size_t i = 0; i < v.size(); ++i)
        if (r[i] != -v[i]) {
          neg = false;
          break;
        }
      if (neg) return true;
    }
    return false;
  };
  for (const auto& alpha : rs.positive_roots) {
    const Int aa = dot(alpha, alpha);
    for (const auto& beta : rs.positive_roots) {
      Int num = 2 * dot(alpha, beta);
      if (num % aa != 0) throw InvariantViolationError("Cartan pairing is not integral");
      Int c = num / aa;
      std::vector<Int> refl = beta;
      for (size_t i = 0; i < refl.size(); ++i) refl[i] -= c * alpha[i];
      if (!find_root(refl)) throw InvariantViolationError("reflection leaves the root set");
    }
  }

  // every non-simple positive root decomposes as (positive root) + (simple root)
  for (int a = 0; a < rs.num_positive(); ++a) {
    if (std::find(rs.simple_indices.begin(), rs.simple_indices.end(), a) !=
        rs.simple_indices.end())
      continue;
    bool decomposes = false;
    for (int s = 0; s < rs.rank && !decomposes; ++s) {
      std::vector<Int> diff = combine(rs.positive_roots[static_cast<size_t>(a)], rs.simple_root(s), -1);
      for (const auto& r : rs.positive_roots)
        if (r == diff) {
          decomposes = true;
          break;
        }
    }
    if (!decomposes)
      throw InvariantViolationError("a non-simple positive root does not decompose");
  }
}

}  // namespace detail

inline RootSystem positive_roots(RootType type, int rank) {
  RootSystem rs;
  rs.type = type;
  using detail::unit;

  auto push = [&](std::vector<Int> v) { rs.positive_roots.push_back(std::move(v)); };
  auto mark_simple = [&](const std::vector<Int>& v) {
    for (int i = 0; i < rs.num_positive(); ++i)
      if (rs.positive_roots[static_cast<size_t>(i)] == v) {
        rs.simple_indices.push_back(i);
        return;
      }
    throw InvariantViolationError("simple root missing from the positive roots");
  };

  switch (type) {
    case RootType::A: {
      if (rank < 1) throw InvalidTypeRankError("type A requires rank >= 1");
      rs.rank = rank;
      rs.coords = rank + 1;
      for (int i = 0; i < rs.coords; ++i)
        for (int j = i + 1; j < rs.coords; ++j)
          push(detail::combine(unit(rs.coords, i), unit(rs.coords, j), -1));
      for (int i = 0; i < rank; ++i)
        mark_simple(detail::combine(unit(rs.coords, i), unit(rs.coords, i + 1), -1));
      break;
    }
    case RootType::B:
    case RootType::C: {
      if (rank < 2) throw InvalidTypeRankError("types B and C require rank >= 2");
      rs.rank = rank;
      rs.coords = rank;
      const int short_scale = type == RootType::B ? 1 : 2;
      for (int i = 0; i < rank; ++i) push(unit(rank, i, short_scale));
      for (int i = 0; i < rank; ++i)
        for (int j = i + 1; j < rank; ++j) {
          push(detail::combine(unit(rank, i), unit(rank, j), -1));
          push(detail::combine(unit(rank, i), unit(rank, j), +1));
        }
      for (int i = 0; i + 1 < rank; ++i)
        mark_simple(detail::combine(unit(rank, i), unit(rank, i + 1), -1));
      mark_simple(unit(rank, rank - 1, short_scale));
      break;
    }
    case RootType::D: {
      if (rank < 3) throw InvalidTypeRankError("type D requires rank >= 3");
      rs.rank = rank;
      rs.coords = rank;
      for (int i = 0; i < rank; ++i)
        for (int j = i + 1; j < rank; ++j) {
          push(detail::combine(unit(rank, i), unit(rank, j), -1));
          push(detail::combine(unit(rank, i), unit(rank, j), +1));
        }
      for (int i = 0; i + 1 < rank; ++i)
        mark_simple(detail::combine(unit(rank, i), unit(rank, i + 1), -1));
      mark_simple(detail::combine(unit(rank, rank - 2), unit(rank, rank - 1), +1));
      break;
    }
    case RootType::G2: {
      if (rank != 2) throw InvalidTypeRankError("G2 has rank 2");
      rs.rank = 2;
      rs.coords = 3;
      // alpha1 = e1-e2, alpha2 = -2e1+e2+e3
      const std::vector<std::vector<int>> data = {
          {1, -1, 0}, {-2, 1, 1}, {-1, 0, 1}, {0, -1, 1}, {1, -2, 1}, {-1, -1, 2}};
      for (const auto& d : data) {
        std::vector<Int> v;
        for (int x : d) v.push_back(x);
        push(std::move(v));
      }
      mark_simple({Int(1), Int(-1), Int(0)});
      mark_simple({Int(-2), Int(1), Int(1)});
      break;
    }
    case RootType::F4: {
      if (rank != 4) throw InvalidTypeRankError("F4 has rank 4");
      rs.rank = 4;
      rs.coords = 4;
      // doubled coordinates: short roots 2e_i and e1+-e2+-e3+-e4, long 2e_i+-2e_j
      for (int i = 0; i < 4; ++i) push(unit(4, i, 2));
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
          push(detail::combine(unit(4, i, 2), unit(4, j, 2), -1));
          push(detail::combine(unit(4, i, 2), unit(4, j, 2), +1));
        }
      for (int s2 = -1; s2 <= 1; s2 += 2)
        for (int s3 = -1; s3 <= 1; s3 += 2)
          for (int s4 = -1; s4 <= 1; s4 += 2)
            push({Int(1), Int(s2), Int(s3), Int(s4)});
      mark_simple({Int(0), Int(2), Int(-2), Int(0)});
      mark_simple({Int(0), Int(0), Int(2), Int(-2)});
      mark_simple({Int(0), Int(0), Int(0), Int(2)});
      mark_simple({Int(1), Int(-1), Int(-1), Int(-1)});
      break;
    }
    case RootType::E6:
    case RootType::E7:
    case RootType::E8: {
      const int want = type == RootType::E6 ? 6 : type == RootType::E7 ? 7 : 8;
      if (rank != want)
        throw InvalidTypeRankError(root_type_name(type) + " has rank " + std::to_string(want));
      rs.rank = want;
      rs.coords = 8;
      // doubled coordinates: 2e_j +- 2e_i and e8 + sum eps_i e_i patterns
      const int top = type == RootType::E8 ? 8 : type == RootType::E7 ? 6 : 5;
      for (int i = 0; i < top; ++i)
        for (int j = i + 1; j < top; ++j) {
          push(detail::combine(unit(8, j, 2), unit(8, i, 2), -1));
          push(detail::combine(unit(8, j, 2), unit(8, i, 2), +1));
        }
      if (type == RootType::E7) push(detail::combine(unit(8, 7, 2), unit(8, 6, 2), -1));
      const int nfree = type == RootType::E8 ? 7 : top;
      for (int bits = 0; bits < (1 << nfree); ++bits) {
        int minus = __builtin_popcount(bits);
        bool keep = type == RootType::E7 ? (minus % 2 == 1) : (minus % 2 == 0);
        if (!keep) continue;
        std::vector<Int> v(8, 0);
        for (int i = 0; i < nfree; ++i) v[static_cast<size_t>(i)] = (bits >> i & 1) ? -1 : 1;
        v[7] = 1;
        if (type != RootType::E8) v[6] = -1;
        if (type == RootType::E6) v[5] = -1;
        push(std::move(v));
      }
      // Bourbaki simple roots (doubled)
      mark_simple({Int(1), Int(-1), Int(-1), Int(-1), Int(-1), Int(-1), Int(-1), Int(1)});
      mark_simple({Int(2), Int(2), Int(0), Int(0), Int(0), Int(0), Int(0), Int(0)});
      for (int i = 1; i < want - 1; ++i) {
        std::vector<Int> v(8, 0);
        v[static_cast<size_t>(i)] = 2;
        v[static_cast<size_t>(i - 1)] = -2;
        mark_simple(v);
      }
      break;
    }
  }
  detail::validate_root_system(rs);
  return rs;
}

// Literal check of the lower-ideal closure: alpha in I and alpha-beta a
// nonnegative combination of simple roots forces beta in I.
inline bool is_lower_ideal(const RootSystem& rs, const std::vector<int>& subset) {
  std::vector<bool> in(static_cast<size_t>(rs.num_positive()), false);
  for (int i : subset) {
    if (i < 0 || i >= rs.num_positive()) throw IndexOutOfRangeError();
    in[static_cast<size_t>(i)] = true;
  }
  for (int a = 0; a < rs.num_positive(); ++a) {
    if (!in[static_cast<size_t>(a)]) continue;
    for (int b = 0; b < rs.num_positive(); ++b)
      if (!in[static_cast<size_t>(b)] && rs.dominates(a, b)) return false;
  }
  return true;
}

// All downward-closed subsets, enumerated over roots sorted by height and
// returned in a deterministic order (by size, then lexicographic membership).
inline std::vector<std::vector<int>> enumerate_lower_ideals(const RootSystem& rs) {
  const int n = rs.num_positive();
  if (n > 24) throw TooLargeError("lower-ideal enumeration limited to |Phi+| <= 24");

  std::vector<int> order(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return rs.height(a) < rs.height(b); });

  std::vector<std::vector<int>> below(static_cast<size_t>(n));  // strictly dominated, by position
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < p; ++q)
      if (rs.dominates(order[static_cast<size_t>(p)], order[static_cast<size_t>(q)]))
        below[static_cast<size_t>(p)].push_back(q);

  std::vector<std::vector<int>> ideals;
  std::vector<bool> member(static_cast<size_t>(n), false);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == n) {
      std::vector<int> ideal;
      for (int p = 0; p < n; ++p)
        if (member[static_cast<size_t>(p)]) ideal.push_back(order[static_cast<size_t>(p)]);
      std::sort(ideal.begin(), ideal.end());
      ideals.push_back(std::move(ideal));
      return;
    }
    member[static_cast<size_t>(pos)] = false;
    rec(pos + 1);
    bool can = true;
    for (int q : below[static_cast<size_t>(pos)])
      if (!member[static_cast<size_t>(q)]) {
        can = false;
        break;
      }
    if (can) {
      member[static_cast<size_t>(pos)] = true;
      rec(pos + 1);
      member[static_cast<size_t>(pos)] = false;
    }
  };
  rec(0);
  std::sort(ideals.begin(), ideals.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return ideals;
}

// The reflection arrangement {ker(alpha) : alpha in Phi+}.
inline Arrangement weyl_arrangement(const RootSystem& rs) {
  std::vector<Hyperplane> hs;
  hs.reserve(static_cast<size_t>(rs.num_positive()));
  for (const auto& r : rs.positive_roots) hs.push_back(Hyperplane(r));
  return Arrangement(rs.coords, std::move(hs));
}

enum class DeformationFamily { Shi, Catalan };

namespace detail {

inline std::vector<AffineHyperplane> deformation_layers(const RootSystem& rs, int k_min, int k_max) {
  std::vector<AffineHyperplane> affine;
  for (const auto& r : rs.positive_roots) {
    std::vector<Rat> n;
    n.reserve(r.size());
    for (const Int& x : r) n.emplace_back(x);
    for (int k = k_min; k <= k_max; ++k) affine.push_back({n, Rat(k)});
  }
  return affine;
}

}  // namespace detail

// Coned Shi^m (layers -m+1..m) or Catalan^m (layers -m..m); the cone adds
// the hyperplane z = 0 as the last coordinate.
inline Arrangement build_family(const RootSystem& rs, DeformationFamily family, int m) {
  if (m < 1) throw Error("deformation family requires m >= 1");
  const int k_min = family == DeformationFamily::Shi ? -m + 1 : -m;
  return cone(detail::deformation_layers(rs, k_min, m), rs.coords);
}

enum class IdealSign { Plus, Minus };

// Ideal deformations of the Shi arrangement: the plus variant adds the layer
// alpha = -m over the ideal, the minus variant removes the layer alpha = m.
inline Arrangement ideal_shi(const RootSystem& rs, int m, const std::vector<int>& ideal,
                             IdealSign sign) {
  if (m < 1) throw Error("ideal-Shi requires m >= 1");
  if (!is_lower_ideal(rs, ideal)) throw NotALowerIdealError();
  std::vector<bool> in(static_cast<size_t>(rs.num_positive()), false);
  for (int i : ideal) in[static_cast<size_t>(i)] = true;

  std::vector<AffineHyperplane> affine;
  for (int i = 0; i < rs.num_positive(); ++i) {
    const auto& r = rs.positive_roots[static_cast<size_t>(i)];
    std::vector<Rat> n;
    n.reserve(r.size());
    for (const Int& x : r) n.emplace_back(x);
    const int k_max = (sign == IdealSign::Minus && in[static_cast<size_t>(i)]) ? m - 1 : m;
    for (int k = -m + 1; k <= k_max; ++k) affine.push_back({n, Rat(k)});
    if (sign == IdealSign::Plus && in[static_cast<size_t>(i)]) affine.push_back({n, Rat(-m)});
  }
  return cone(affine, rs.coords);
}

}  // namespace arrangefree
