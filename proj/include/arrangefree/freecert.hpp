#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "arrangefree/lattice.hpp"
#include "arrangefree/saito.hpp"

namespace arrangefree {

using Exponents = std::vector<int>;  // sorted ascending, size = ambient dim

inline Exponents sorted_exponents(Exponents e) {
  std::sort(e.begin(), e.end());
  return e;
}

// ---------------------------------------------------------------------------
// Divisionality along a hyperplane
// ---------------------------------------------------------------------------

struct FlatDivisibility {
  Flat restriction_flat;           // X as a flat of A^H
  std::vector<int> localization;   // indices into A of A_X (always includes h)
  CharPoly chi_localization;       // chi(A_X)
  CharPoly chi_restricted;         // chi(A_X^H) = chi((A^H)_X)
  bool divides = false;
  bool is_top = false;             // X = intersection of all of A^H
};

struct DivisionalityReport {
  int h = -1;
  int restriction_size = 0;        // |A^H|
  bool is_divisional = false;
  bool is_locally_divisional = false;
  bool is_globally_divisional = false;
  bool local_vacuous = false;      // A^H empty: the local quantifier is empty
  std::vector<FlatDivisibility> per_flat;
};

// chi(A_X^H) | chi(A_X) for every flat X of the restriction lattice.
// Flats are pulled back to A through the trace origins: A_X consists of H
// together with every hyperplane whose trace contains X, which is exactly
// the localization at X viewed inside V.
inline DivisionalityReport divisionality(const Arrangement& a, int h) {
  a.check_index(h);
  Restriction res = restriction(a, h);
  auto rlat = lattice_of(res.arr);

  DivisionalityReport rep;
  rep.h = h;
  rep.restriction_size = res.arr.size();
  rep.local_vacuous = res.arr.empty();
  bool all = true, local = true, global = true;

  for (int k = 0; k < static_cast<int>(rlat->levels.size()); ++k) {
    for (const auto& lf : rlat->levels[static_cast<size_t>(k)]) {
      FlatDivisibility fd;
      fd.restriction_flat = lf.flat;
      fd.is_top = (k == rlat->rank);  // unique flat at the top level

      std::vector<int> loc{h};
      for (int j : lf.atoms)
        for (int orig : res.origins[static_cast<size_t>(j)]) loc.push_back(orig);
      std::sort(loc.begin(), loc.end());
      fd.localization = loc;

      fd.chi_localization = char_poly(a.subset(loc)).first;
      fd.chi_restricted = char_poly(res.arr.subset(lf.atoms)).first;
      fd.divides = fd.chi_localization.divisible_by(fd.chi_restricted);

      all = all && fd.divides;
      if (fd.is_top)
        global = fd.divides;
      else
        local = local && fd.divides;
      rep.per_flat.push_back(std::move(fd));
    }
  }
  rep.is_divisional = all;
  rep.is_locally_divisional = local;
  rep.is_globally_divisional = global;
  return rep;
}

// ---------------------------------------------------------------------------
// Freeness certificates
// ---------------------------------------------------------------------------

struct AdditionFiltrationCert {
  std::vector<Hyperplane> order;          // H_1..H_n, built up from the empty arrangement
  std::vector<Exponents> step_exponents;  // exponents after each addition
};

struct DivisionalFlagCert {
  std::vector<Flat> flag;  // X_1 superset ... superset X_{l-2}
};

struct StairStep {
  std::vector<Hyperplane> deletions;  // deleted one by one, each step divisional
  Hyperplane restriction;             // then restrict onto this hyperplane
};

struct StairCert {
  std::vector<StairStep> steps;  // replayed top-down until rank <= 2
};

struct SaitoBasisCert {
  std::vector<Derivation> basis;
};

struct Certificate {
  int ambient_dim = 0;
  Exponents exponents;
  std::variant<AdditionFiltrationCert, DivisionalFlagCert, StairCert, SaitoBasisCert> evidence;
};

inline const char* certificate_kind(const Certificate& c) {
  switch (c.evidence.index()) {
    case 0: return "addition_filtration";
    case 1: return "divisional_flag";
    case 2: return "stair";
    default: return "saito_basis";
  }
}

// Exponent update of the addition-deletion triple: adding H to A' replaces
// one copy of |A'| - |A^H| by |A| - |A^H| = |A'| - |A^H| + 1.
inline std::optional<Exponents> exponents_after_addition(const Exponents& before, int old_value) {
  Exponents out = before;
  auto it = std::find(out.begin(), out.end(), old_value);
  if (it == out.end()) return std::nullopt;
  *it = old_value + 1;
  return sorted_exponents(out);
}

inline std::optional<Exponents> exponents_after_deletion(const Exponents& before, int old_value) {
  Exponents out = before;
  auto it = std::find(out.begin(), out.end(), old_value);
  if (it == out.end()) return std::nullopt;
  *it = old_value - 1;
  return sorted_exponents(out);
}

// ---------------------------------------------------------------------------
// Certificate verification (replay from scratch)
// ---------------------------------------------------------------------------

struct VerifyResult {
  bool ok = true;
  std::vector<std::string> diagnostics;

  void fail(const std::string& msg) {
    ok = false;
    diagnostics.push_back("FAIL: " + msg);
  }
  void note(const std::string& msg) { diagnostics.push_back(msg); }
};

namespace detail {

inline bool common_certificate_checks(const Arrangement& a, const Certificate& c, VerifyResult& r) {
  if (c.ambient_dim != a.ambient_dim()) {
    r.fail("certificate ambient dimension does not match the arrangement");
    return false;
  }
  if (static_cast<int>(c.exponents.size()) != a.ambient_dim())
    r.fail("exponent multiset must have exactly l entries");
  long sum = 0;
  for (int e : c.exponents) sum += e;
  if (sum != a.size()) r.fail("exponents must sum to |A|");
  if (!a.empty() &&
      std::find(c.exponents.begin(), c.exponents.end(), 1) == c.exponents.end())
    r.fail("exponents of a nonempty free arrangement must contain 1");
  return r.ok;
}

}  // namespace detail

inline VerifyResult verify_addition_filtration(const Arrangement& a, const Certificate& c) {
  VerifyResult r;
  if (!detail::common_certificate_checks(a, c, r)) return r;
  const auto& cert = std::get<AdditionFiltrationCert>(c.evidence);
  if (static_cast<int>(cert.order.size()) != a.size()) {
    r.fail("filtration must list every hyperplane exactly once");
    return r;
  }
  {
    std::vector<Hyperplane> sorted_order = cert.order;
    std::vector<Hyperplane> sorted_a = a.hyperplanes();
    std::sort(sorted_order.begin(), sorted_order.end());
    std::sort(sorted_a.begin(), sorted_a.end());
    if (!(sorted_order == sorted_a)) {
      r.fail("filtration hyperplanes differ from the arrangement");
      return r;
    }
  }
  if (cert.step_exponents.size() != cert.order.size()) {
    r.fail("one exponent multiset per addition step is required");
    return r;
  }
  Exponents cur(static_cast<size_t>(a.ambient_dim()), 0);
  std::vector<Hyperplane> prefix;
  for (size_t i = 0; i < cert.order.size(); ++i) {
    prefix.push_back(cert.order[i]);
    Arrangement ai(a.ambient_dim(), prefix);
    DivisionalityReport rep = divisionality(ai, static_cast<int>(i));
    if (!rep.is_divisional) {
      r.fail("step " + std::to_string(i + 1) + " is not divisional along its hyperplane");
      return r;
    }
    auto next = exponents_after_addition(cur, static_cast<int>(prefix.size()) - 1 - rep.restriction_size);
    if (!next) {
      r.fail("step " + std::to_string(i + 1) + ": exponent bookkeeping impossible");
      return r;
    }
    cur = *next;
    if (cur != cert.step_exponents[i]) {
      r.fail("step " + std::to_string(i + 1) + ": stated exponents disagree with replay");
      return r;
    }
  }
  if (cur != c.exponents) r.fail("final exponents disagree with replay");
  return r;
}

inline VerifyResult verify_divisional_flag(const Arrangement& a, const Certificate& c) {
  VerifyResult r;
  if (!detail::common_certificate_checks(a, c, r)) return r;
  const int l = a.ambient_dim();
  if (a.rank() != l) {
    r.fail("divisional flags require an essential arrangement");
    return r;
  }
  const auto& cert = std::get<DivisionalFlagCert>(c.evidence);
  if (static_cast<int>(cert.flag.size()) != std::max(l - 2, 0)) {
    r.fail("flag must contain exactly l-2 flats");
    return r;
  }
  CharPoly chi_prev = char_poly(a).first;
  Exponents exps;
  Flat prev = Flat::full_space(l);
  for (size_t i = 0; i < cert.flag.size(); ++i) {
    const Flat& x = cert.flag[i];
    if (x.codim() != static_cast<int>(i) + 1) {
      r.fail("flag member " + std::to_string(i + 1) + " has wrong codimension");
      return r;
    }
    if (!x.contained_in(prev)) {
      r.fail("flag is not a descending chain");
      return r;
    }
    try {
      localization(a, x);  // membership in L(A)
    } catch (const FlatNotInLatticeError&) {
      r.fail("flag member " + std::to_string(i + 1) + " is not a lattice flat");
      return r;
    }
    CharPoly chi_x = char_poly(restriction_to_flat(a, x).arr).first;
    auto q = chi_prev.divide_exact(chi_x);
    if (!q) {
      r.fail("chi(A^X_" + std::to_string(i + 1) + ") does not divide the previous restriction");
      return r;
    }
    exps.push_back(static_cast<int>(Int(-q->coeff(0)).get_si()));
    chi_prev = chi_x;
    prev = x;
  }
  auto base = exponents_from_charpoly(chi_prev);
  if (!base) {
    r.fail("final restriction polynomial does not factor over nonnegative integers");
    return r;
  }
  exps.insert(exps.end(), base->begin(), base->end());
  if (sorted_exponents(exps) != c.exponents) r.fail("stated exponents disagree with replay");
  return r;
}

// Replays the stair conditions top-down: inside each step every partial
// deletion must be divisional along the next deleted hyperplane, and after
// the deletions chi of the restriction must divide chi of the current stage.
// A certificate is conclusive only if it descends to rank <= 2, where
// freeness is unconditional.
inline VerifyResult verify_stair_certificate(const Arrangement& a, const Certificate& c) {
  VerifyResult r;
  if (!detail::common_certificate_checks(a, c, r)) return r;
  const auto& cert = std::get<StairCert>(c.evidence);
  Arrangement stage = a;
  int step_no = 0;
  for (const auto& step : cert.steps) {
    ++step_no;
    Arrangement cur = stage;
    int del_no = 0;
    for (const auto& hd : step.deletions) {
      ++del_no;
      auto idx = cur.index_of(hd);
      if (!idx)
        throw MalformedCertificateError("step " + std::to_string(step_no) + " deletion " +
                                        std::to_string(del_no) +
                                        " references a hyperplane absent from the stage");
      DivisionalityReport rep = divisionality(cur, *idx);
      if (rep.is_divisional) {
        r.note("step " + std::to_string(step_no) + " deletion " + std::to_string(del_no) +
               ": divisional");
      } else {
        r.fail("step " + std::to_string(step_no) + " deletion " + std::to_string(del_no) +
               ": not divisional");
      }
      cur = cur.deleted(*idx);
    }
    auto ridx = cur.index_of(step.restriction);
    if (!ridx)
      throw MalformedCertificateError("step " + std::to_string(step_no) +
                                      " restriction hyperplane absent from the stage");
    Arrangement next = restriction(cur, *ridx).arr;
    CharPoly chi_cur = char_poly(cur).first;
    CharPoly chi_next = char_poly(next).first;
    if (chi_cur.divisible_by(chi_next)) {
      r.note("step " + std::to_string(step_no) + ": chi of the restriction divides");
    } else {
      r.fail("step " + std::to_string(step_no) + ": chi of the restriction does not divide");
    }
    stage = next;
  }
  if (stage.rank() <= 2) {
    r.note("final stage has rank " + std::to_string(stage.rank()) + ": free unconditionally");
  } else {
    r.fail("certificate does not descend to rank <= 2 (final rank " +
           std::to_string(stage.rank()) + ")");
  }
  auto exps = exponents_from_charpoly(char_poly(a).first);
  if (!exps) {
    r.fail("chi does not factor over nonnegative integers");
  } else if (r.ok && *exps != sorted_exponents(c.exponents)) {
    r.fail("stated exponents disagree with the roots of chi");
  }
  return r;
}

inline VerifyResult verify_saito_basis(const Arrangement& a, const Certificate& c) {
  VerifyResult r;
  if (!detail::common_certificate_checks(a, c, r)) return r;
  const auto& cert = std::get<SaitoBasisCert>(c.evidence);
  if (static_cast<int>(cert.basis.size()) != a.ambient_dim()) {
    r.fail("basis must consist of exactly l derivations");
    return r;
  }
  Exponents degs;
  for (const auto& th : cert.basis) {
    if (th.num_vars() != a.ambient_dim()) {
      r.fail("derivation has wrong number of variables");
      return r;
    }
    for (const auto& f : th.components) {
      auto hd = f.homogeneous_degree();
      if (!f.is_zero() && (!hd || *hd != th.degree)) {
        r.fail("derivation components must be homogeneous of the stated degree");
        return r;
      }
    }
    if (!in_derivation_module(th, a)) {
      r.fail("a stated derivation does not preserve the arrangement ideal");
      return r;
    }
    degs.push_back(th.degree);
  }
  long sum = 0;
  for (int d : degs) sum += d;
  if (sum != a.size()) {
    r.fail("degrees must sum to |A|");
    return r;
  }
  if (!saito_check(a, cert.basis)) {
    r.fail("determinant is not a nonzero scalar multiple of the defining polynomial");
    return r;
  }
  if (sorted_exponents(degs) != c.exponents) r.fail("stated exponents disagree with the degrees");
  return r;
}

inline VerifyResult verify_certificate(const Arrangement& a, const Certificate& c) {
  switch (c.evidence.index()) {
    case 0: return verify_addition_filtration(a, c);
    case 1: return verify_divisional_flag(a, c);
    case 2: return verify_stair_certificate(a, c);
    default: return verify_saito_basis(a, c);
  }
}

}  // namespace arrangefree
