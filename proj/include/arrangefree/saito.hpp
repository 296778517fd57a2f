#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "arrangefree/lattice.hpp"
#include "arrangefree/multipoly.hpp"

namespace arrangefree {

inline long binom(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Int b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return b.get_si();
}

// Number of degree-d monomials in n variables.
inline long monomial_count(int n, int d) {
  if (d < 0) return 0;
  if (n == 0) return d == 0 ? 1 : 0;
  return binom(d + n - 1, n - 1);
}

namespace detail {

inline void enumerate_monomials_rec(int nvars, int var, int left, std::vector<int>& cur,
                                    std::vector<std::vector<int>>& out) {
  if (var == nvars - 1) {
    cur[static_cast<size_t>(var)] = left;
    out.push_back(cur);
    return;
  }
  for (int e = left; e >= 0; --e) {
    cur[static_cast<size_t>(var)] = e;
    enumerate_monomials_rec(nvars, var + 1, left - e, cur, out);
  }
}

}  // namespace detail

// Degree-d monomials in a fixed deterministic order.
inline std::vector<std::vector<int>> monomials_of_degree(int nvars, int d) {
  std::vector<std::vector<int>> out;
  if (nvars == 0) {
    if (d == 0) out.push_back({});
    return out;
  }
  std::vector<int> cur(static_cast<size_t>(nvars), 0);
  detail::enumerate_monomials_rec(nvars, 0, d, cur, out);
  return out;
}

struct GradedPiece {
  int dim = 0;
  std::vector<Derivation> basis;
};

// Graded piece D(A)_d by exact linear algebra: unknowns are the monomial
// coefficients of (f_1,...,f_l); for each H the form sum a_i f_i is reduced
// modulo alpha_H by substituting the largest-index pivot coordinate, and all
// reduced coefficients must vanish. The constraint matrix is integer (rows
// are scaled by a power of the pivot coefficient).
inline GradedPiece graded_dim(const Arrangement& a, int d) {
  if (d < 0) throw Error("graded_dim: degree must be nonnegative");
  const int l = a.ambient_dim();
  GradedPiece out;
  if (l == 0) return out;

  const auto mons = monomials_of_degree(l, d);
  const int md = static_cast<int>(mons.size());
  std::map<std::vector<int>, int> mon_index;
  for (int i = 0; i < md; ++i) mon_index.emplace(mons[static_cast<size_t>(i)], i);

  // constraint rows per hyperplane: one per reduced monomial
  std::vector<std::vector<Int>> rows;
  for (const auto& h : a.hyperplanes()) {
    const std::vector<Int>& n = h.normal();
    int pivot = -1;
    for (int i = l - 1; i >= 0; --i)
      if (n[static_cast<size_t>(i)] != 0) {
        pivot = i;
        break;
      }
    // s = -(sum_{j != pivot} n_j x_j); powers s^k expanded once
    MultiPoly s(l);
    for (int j = 0; j < l; ++j) {
      if (j == pivot || n[static_cast<size_t>(j)] == 0) continue;
      MultiPoly::Monomial m(static_cast<size_t>(l), 0);
      m[static_cast<size_t>(j)] = 1;
      s.add_term(m, -Rat(n[static_cast<size_t>(j)]));
    }
    std::vector<MultiPoly> s_pow(static_cast<size_t>(d) + 1);
    s_pow[0] = MultiPoly::constant(l, Rat(1));
    for (int k = 1; k <= d; ++k) s_pow[static_cast<size_t>(k)] = s_pow[static_cast<size_t>(k - 1)] * s;

    // reduced monomial index: degree-d monomials with zero pivot exponent
    std::map<std::vector<int>, int> red_index;
    int red_count = 0;
    for (const auto& m : mons)
      if (m[static_cast<size_t>(pivot)] == 0) red_index.emplace(m, red_count++);

    // row block for this hyperplane
    std::vector<std::vector<Int>> block(static_cast<size_t>(red_count),
                                        std::vector<Int>(static_cast<size_t>(l) * md, 0));
    for (int mi = 0; mi < md; ++mi) {
      const auto& mu = mons[static_cast<size_t>(mi)];
      const int k = mu[static_cast<size_t>(pivot)];
      const Int scale = pow_int(n[static_cast<size_t>(pivot)], static_cast<unsigned long>(d - k));
      // reduced image of mu times pivot^d: scale * rest(mu) * s^k
      for (const auto& [sm, sc] : s_pow[static_cast<size_t>(k)].terms()) {
        std::vector<int> m = mu;
        m[static_cast<size_t>(pivot)] = 0;
        for (size_t j = 0; j < m.size(); ++j) m[j] += sm[j];
        const Int coef = scale * sc.get_num();  // s^k has integer coefficients
        const int r = red_index.at(m);
        for (int i = 0; i < l; ++i) {
          if (n[static_cast<size_t>(i)] == 0) continue;
          block[static_cast<size_t>(r)][static_cast<size_t>(i) * md + mi] += n[static_cast<size_t>(i)] * coef;
        }
      }
    }
    for (auto& row : block)
      if (!is_zero(row)) rows.push_back(std::move(row));
  }

  IntMatrix mat = IntMatrix::from_rows(rows);
  mat.cols = l * md;  // correct even when there are no constraint rows
  std::vector<std::vector<Int>> ker = kernel_basis(std::move(mat));

  out.dim = static_cast<int>(ker.size());
  for (const auto& v : ker) {
    Derivation th;
    th.degree = d;
    for (int i = 0; i < l; ++i) {
      MultiPoly f(l);
      for (int mi = 0; mi < md; ++mi) {
        const Int& c = v[static_cast<size_t>(i) * md + mi];
        if (c != 0) f.add_term(mons[static_cast<size_t>(mi)], Rat(c));
      }
      th.components.push_back(std::move(f));
    }
    out.basis.push_back(std::move(th));
  }
  return out;
}

// Flattened coefficient vector of a degree-d derivation over the monomial
// basis; used for span bookkeeping. Components must be integral.
inline std::vector<Int> derivation_coords(const Derivation& th,
                                          const std::vector<std::vector<int>>& mons,
                                          const std::map<std::vector<int>, int>& mon_index) {
  const int l = th.num_vars();
  const int md = static_cast<int>(mons.size());
  std::vector<Int> v(static_cast<size_t>(l) * md, 0);
  for (int i = 0; i < l; ++i) {
    for (const auto& [m, c] : th.components[static_cast<size_t>(i)].terms()) {
      if (c.get_den() != 1) throw Error("derivation_coords expects integral coefficients");
      v[static_cast<size_t>(i) * md + mon_index.at(m)] = c.get_num();
    }
  }
  return v;
}

// Saito's determinant criterion: l candidate derivations with degree sum |A|
// form a basis of D(A) iff det of their coefficient matrix is a nonzero
// scalar multiple of Q = prod alpha_H.
inline bool saito_check(const Arrangement& a, const std::vector<Derivation>& candidate) {
  const int l = a.ambient_dim();
  if (static_cast<int>(candidate.size()) != l)
    throw DegreeSumMismatchError("candidate must consist of exactly l derivations");
  long sum = 0;
  for (const auto& th : candidate) {
    if (th.is_zero()) return false;
    sum += th.degree;
  }
  if (sum != a.size()) throw DegreeSumMismatchError();
  if (l == 0) return true;

  std::vector<std::vector<MultiPoly>> m(static_cast<size_t>(l));
  for (int i = 0; i < l; ++i) m[static_cast<size_t>(i)] = candidate[static_cast<size_t>(i)].components;
  MultiPoly det = poly_determinant(m, l);
  if (det.is_zero()) return false;
  MultiPoly q = defining_polynomial(a);
  const auto& [m0, c0] = *q.terms().begin();
  Rat c = det.coeff(m0) / c0;
  if (c == 0) return false;
  return (det - c * q).is_zero();
}

namespace detail {

// Minimal-generator accumulator shared by the basis search and the verdict:
// walks degrees upward, quotients out multiples of already-chosen generators,
// and records the new generators appearing at each degree.
struct GeneratorAccumulator {
  const Arrangement& a;
  std::vector<Derivation> gens;
  std::vector<int> gen_degrees;

  explicit GeneratorAccumulator(const Arrangement& a_) : a(a_) {}

  // Returns the graded piece at degree d after recording new generators.
  GradedPiece step(int d) {
    GradedPiece gp = graded_dim(a, d);
    if (gp.dim == 0) return gp;
    const int l = a.ambient_dim();
    const auto mons = monomials_of_degree(l, d);
    std::map<std::vector<int>, int> mon_index;
    for (size_t i = 0; i < mons.size(); ++i) mon_index.emplace(mons[i], static_cast<int>(i));

    EchelonBasis span(l * static_cast<int>(mons.size()));
    for (const auto& g : gens) {
      for (const auto& mult : monomials_of_degree(l, d - g.degree)) {
        Derivation gm;
        gm.degree = d;
        MultiPoly mono(l);
        mono.add_term(mult, Rat(1));
        for (const auto& f : g.components) gm.components.push_back(mono * f);
        span.insert(derivation_coords(gm, mons, mon_index));
      }
    }
    for (const auto& th : gp.basis) {
      if (span.insert(derivation_coords(th, mons, mon_index))) {
        gens.push_back(th);
        gen_degrees.push_back(d);
      }
    }
    return gp;
  }
};

inline bool try_select_basis(const Arrangement& a, const std::vector<Derivation>& gens,
                             std::vector<Derivation>& out) {
  const int l = a.ambient_dim();
  const int n = static_cast<int>(gens.size());
  if (n < l) return false;
  // subsets of size l with degree sum |A|; the generator list is small, and
  // for a free module the first full selection already passes
  std::vector<int> pick;
  int attempts = 0;
  const int max_attempts = 200;
  std::function<bool(int, long)> rec = [&](int from, long sum) -> bool {
    if (static_cast<int>(pick.size()) == l) {
      if (sum != a.size()) return false;
      if (++attempts > max_attempts) return false;
      std::vector<Derivation> cand;
      for (int idx : pick) cand.push_back(gens[static_cast<size_t>(idx)]);
      if (saito_check(a, cand)) {
        out = std::move(cand);
        return true;
      }
      return false;
    }
    for (int i = from; i < n; ++i) {
      pick.push_back(i);
      if (rec(i + 1, sum + gens[static_cast<size_t>(i)].degree)) return true;
      pick.pop_back();
      if (attempts > max_attempts) return false;
    }
    return false;
  };
  return rec(0, 0);
}

}  // namespace detail

// Accumulates minimal generators degree by degree and accepts the first
// selection of l of them, with degrees summing to |A|, that passes the
// determinant criterion. Returns nullopt when no basis is found within the
// degree bound (default bound |A|).
inline std::optional<std::vector<Derivation>> find_saito_basis(const Arrangement& a,
                                                               int degree_bound = -1) {
  const int l = a.ambient_dim();
  if (l == 0) return std::vector<Derivation>{};
  const int bound = degree_bound < 0 ? a.size() : degree_bound;
  detail::GeneratorAccumulator acc(a);
  for (int d = 0; d <= bound; ++d) {
    acc.step(d);
    // a free module has exactly l minimal generators, so an overshoot means
    // no selection can ever pass the determinant criterion
    if (static_cast<int>(acc.gens.size()) > l) return std::nullopt;
    long sum = std::accumulate(acc.gen_degrees.begin(), acc.gen_degrees.end(), 0L);
    if (static_cast<int>(acc.gens.size()) == l && sum == a.size()) {
      std::vector<Derivation> basis;
      if (detail::try_select_basis(a, acc.gens, basis)) return basis;
    }
  }
  return std::nullopt;
}

enum class Freeness { Free, NotFree, Unknown };
enum class NotFreeReason { None, ChiNotIntegerRooted, GradedDimensionDeficit };

struct SaitoVerdict {
  Freeness status = Freeness::Unknown;
  std::vector<int> exponents;          // engaged for Free
  std::vector<Derivation> basis;       // engaged for Free
  NotFreeReason reason = NotFreeReason::None;
  int deficit_degree = -1;             // for GradedDimensionDeficit
  int degree_bound = -1;               // for Unknown
};

// Decision procedure:
//  (1) chi without a full set of nonnegative integer roots -> NotFree;
//  (2) a graded dimension strictly below the Hilbert function of the free
//      module with the candidate exponents -> NotFree;
//  (3) an explicit basis passing the determinant criterion -> Free;
//  anything else within the bound -> Unknown.
inline SaitoVerdict freeness_verdict(const Arrangement& a, int degree_bound = -1) {
  SaitoVerdict v;
  const int l = a.ambient_dim();
  if (l == 0) {
    v.status = Freeness::Free;
    return v;
  }
  const int bound = degree_bound < 0 ? a.size() : degree_bound;
  CharPoly chi = char_poly(a).first;
  auto exps = exponents_from_charpoly(chi);
  if (!exps) {
    v.status = Freeness::NotFree;
    v.reason = NotFreeReason::ChiNotIntegerRooted;
    return v;
  }
  const int emax = exps->empty() ? 0 : exps->back();
  // a free module has all generators in degrees <= max exponent, so the
  // effective bound never loses a Free verdict
  const int eff = std::min(bound, emax);

  detail::GeneratorAccumulator acc(a);
  for (int d = 0; d <= eff; ++d) {
    GradedPiece gp = acc.step(d);
    long expected = 0;
    for (int e : *exps) expected += monomial_count(l, d - e);
    if (gp.dim < expected) {
      v.status = Freeness::NotFree;
      v.reason = NotFreeReason::GradedDimensionDeficit;
      v.deficit_degree = d;
      return v;
    }
    // generator degrees of a free module match the exponent multiset; an
    // inconsistent pattern can only end in Unknown, so stop early
    {
      std::vector<int> got = acc.gen_degrees;
      std::sort(got.begin(), got.end());
      size_t gi = 0;
      bool sub = true;
      for (int e : *exps) {
        if (gi < got.size() && got[gi] == e) ++gi;
      }
      sub = gi == got.size();
      if (!sub) {
        v.status = Freeness::Unknown;
        v.degree_bound = bound;
        return v;
      }
    }
    if (static_cast<int>(acc.gens.size()) == l &&
        std::accumulate(acc.gen_degrees.begin(), acc.gen_degrees.end(), 0L) == a.size()) {
      std::vector<Derivation> basis;
      if (detail::try_select_basis(a, acc.gens, basis)) {
        v.status = Freeness::Free;
        v.basis = std::move(basis);
        for (const auto& th : v.basis) v.exponents.push_back(th.degree);
        std::sort(v.exponents.begin(), v.exponents.end());
        return v;
      }
    }
  }
  v.status = Freeness::Unknown;
  v.degree_bound = bound;
  return v;
}

// Graded identity dim D(A)_d = dim S_{d-1} + dim D_H(A)_d for all d <= d_max,
// where D_H(A)_d is the kernel of theta -> theta(alpha_H) on D(A)_d.
// Equivalent form used here: the evaluation map has rank exactly dim S_{d-1}.
inline bool dh_decomposition_check(const Arrangement& a, int h, int d_max) {
  if (a.empty()) throw EmptyArrangementError();
  a.check_index(h);
  const int l = a.ambient_dim();
  for (int d = 0; d <= d_max; ++d) {
    GradedPiece gp = graded_dim(a, d);
    const auto mons = monomials_of_degree(l, d);
    std::map<std::vector<int>, int> mon_index;
    for (size_t i = 0; i < mons.size(); ++i) mon_index.emplace(mons[i], static_cast<int>(i));
    EchelonBasis image(static_cast<int>(mons.size()));
    for (const auto& th : gp.basis) {
      MultiPoly val = th.apply_linear(a[h].normal());
      std::vector<Int> v(mons.size(), 0);
      for (const auto& [m, c] : val.terms()) {
        if (c.get_den() != 1) throw Error("unexpected non-integral value");
        v[static_cast<size_t>(mon_index.at(m))] = c.get_num();
      }
      image.insert(std::move(v));
    }
    if (image.rank() != monomial_count(l, d - 1)) return false;
  }
  return true;
}

}  // namespace arrangefree
