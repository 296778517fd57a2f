#pragma once

#include "arrangefree/freecert.hpp"

namespace arrangefree {

enum class SearchStatus { Found, Exhausted, NotFoundWithinBudget };

struct SearchOptions {
  uint64_t node_budget = 200000;
};

struct SearchResult {
  SearchStatus status = SearchStatus::NotFoundWithinBudget;
  std::optional<Certificate> certificate;
  uint64_t nodes = 0;
};

namespace detail {

struct BudgetExhausted {};

struct AFSearcher {
  const Arrangement& a;
  uint64_t budget;
  uint64_t nodes = 0;
  std::unordered_set<uint64_t> failed;
  // per subset: bit j of first = divisionality computed for hyperplane j,
  // bit j of second = result
  std::unordered_map<uint64_t, std::pair<uint64_t, uint64_t>> div_memo;
  std::vector<int> order;  // filled on success, order[i] = index added at step i+1

  AFSearcher(const Arrangement& a_, uint64_t budget_) : a(a_), budget(budget_) {
    order.assign(static_cast<size_t>(a.size()), -1);
  }

  static int index_within(uint64_t mask, int i) {
    return __builtin_popcountll(mask & ((uint64_t(1) << i) - 1));
  }

  bool divisional(uint64_t mask, int i, const Arrangement& sub) {
    auto& entry = div_memo[mask];
    const uint64_t bit = uint64_t(1) << i;
    if (entry.first & bit) return entry.second & bit;
    if (++nodes > budget) throw BudgetExhausted{};
    bool ok = divisionality(sub, index_within(mask, i)).is_divisional;
    entry.first |= bit;
    if (ok) entry.second |= bit;
    return ok;
  }

  bool solve(uint64_t mask) {
    if (mask == 0) return true;
    if (failed.count(mask)) return false;
    Arrangement sub = a.subset_mask(mask);
    // candidates in ascending |A_i| - |A_i^{H_i}|, then index
    std::vector<std::pair<int, int>> cands;
    for (int i = 0; i < a.size(); ++i) {
      if (!(mask >> i & 1)) continue;
      int r = restriction(sub, index_within(mask, i)).arr.size();
      cands.emplace_back(sub.size() - r, i);
    }
    std::sort(cands.begin(), cands.end());
    for (const auto& [w, i] : cands) {
      if (!divisional(mask, i, sub)) continue;
      if (solve(mask & ~(uint64_t(1) << i))) {
        order[static_cast<size_t>(__builtin_popcountll(mask)) - 1] = i;
        return true;
      }
    }
    failed.insert(mask);
    return false;
  }
};

// Builds the filtration certificate for a known-good addition order.
inline Certificate make_addition_filtration_cert(const Arrangement& a,
                                                 const std::vector<Hyperplane>& order) {
  Certificate c;
  c.ambient_dim = a.ambient_dim();
  AdditionFiltrationCert af;
  af.order = order;
  Exponents cur(static_cast<size_t>(a.ambient_dim()), 0);
  std::vector<Hyperplane> prefix;
  for (size_t i = 0; i < order.size(); ++i) {
    prefix.push_back(order[i]);
    Arrangement ai(a.ambient_dim(), prefix);
    int rsize = restriction(ai, static_cast<int>(i)).arr.size();
    auto next = exponents_after_addition(cur, static_cast<int>(i) - rsize);
    if (!next)
      throw InvariantViolationError("addition filtration exponent bookkeeping failed");
    cur = *next;
    af.step_exponents.push_back(cur);
  }
  c.exponents = cur;
  c.evidence = std::move(af);
  return c;
}

}  // namespace detail

// Backtracking search for an ordering H_1..H_n with every prefix divisional
// along its last hyperplane. Deterministic candidate order; failed subsets
// memoized, so a completed search is exhaustive and Exhausted is a proof
// that no additional filtration exists.
inline SearchResult search_additional_filtration(const Arrangement& a, SearchOptions opt = {}) {
  SearchResult res;
  if (a.size() > 63) {
    res.status = SearchStatus::NotFoundWithinBudget;
    return res;
  }
  detail::AFSearcher s(a, opt.node_budget);
  const uint64_t full = a.size() == 0 ? 0 : (~uint64_t(0) >> (64 - a.size()));
  bool found = false;
  try {
    found = s.solve(full);
    res.status = found ? SearchStatus::Found : SearchStatus::Exhausted;
  } catch (const detail::BudgetExhausted&) {
    res.status = SearchStatus::NotFoundWithinBudget;
  }
  res.nodes = s.nodes;
  if (found) {
    std::vector<Hyperplane> order;
    order.reserve(s.order.size());
    for (int i : s.order) order.push_back(a[i]);
    res.certificate = detail::make_addition_filtration_cert(a, order);
  }
  return res;
}

// Depth-first search for a divisional flag. Complete (the lattice is finite),
// so the negative answer is definitive. Requires an essential arrangement.
inline SearchResult search_divisional_flag(const Arrangement& a) {
  const int l = a.ambient_dim();
  if (a.rank() != l) throw NotEssentialError();
  SearchResult res;
  res.status = SearchStatus::Exhausted;

  std::vector<Flat> flag;
  std::vector<int> quotients;
  auto lat = lattice_of(a);

  std::function<bool(int, const LatticeFlat*, const CharPoly&)> dfs =
      [&](int level, const LatticeFlat* prev, const CharPoly& chi_prev) -> bool {
    if (level > l - 2) return true;
    for (const auto& lf : lat->levels[static_cast<size_t>(level)]) {
      ++res.nodes;
      if (prev && !bits_subset(prev->atom_bits, lf.atom_bits)) continue;  // need X ⊂ prev
      CharPoly chi_x = char_poly(restriction_to_flat(a, lf.flat).arr).first;
      auto q = chi_prev.divide_exact(chi_x);
      if (!q) continue;
      flag.push_back(lf.flat);
      quotients.push_back(static_cast<int>(Int(-q->coeff(0)).get_si()));
      if (dfs(level + 1, &lf, chi_x)) return true;
      flag.pop_back();
      quotients.pop_back();
    }
    return false;
  };

  CharPoly chi = char_poly(a).first;
  if (dfs(1, nullptr, chi)) {
    Certificate c;
    c.ambient_dim = l;
    CharPoly chi_last = flag.empty() ? chi : char_poly(restriction_to_flat(a, flag.back()).arr).first;
    auto base = exponents_from_charpoly(chi_last);
    if (!base) throw InvariantViolationError("rank-2 restriction must factor over the integers");
    Exponents e = quotients;
    e.insert(e.end(), base->begin(), base->end());
    c.exponents = sorted_exponents(e);
    c.evidence = DivisionalFlagCert{flag};
    res.status = SearchStatus::Found;
    res.certificate = std::move(c);
  }
  return res;
}

// Recursive inductive-freeness search with global memoization on canonical
// keys. A success is converted to an addition filtration (IF is contained in
// the additionally free class), which the caller can re-verify.
class InductiveFreenessSearch {
 public:
  explicit InductiveFreenessSearch(SearchOptions opt = {}) : opt_(opt) {}

  SearchResult run(const Arrangement& a) {
    SearchResult res;
    try {
      auto exps = decide(a);
      res.nodes = nodes_;
      if (!exps) {
        res.status = SearchStatus::Exhausted;
        return res;
      }
      std::vector<Hyperplane> order;
      Arrangement cur = a;
      while (!cur.empty()) {
        int h = choice_.at(cur.key());
        order.push_back(cur[h]);
        cur = cur.deleted(h);
      }
      std::reverse(order.begin(), order.end());
      res.status = SearchStatus::Found;
      res.certificate = detail::make_addition_filtration_cert(a, order);
    } catch (const detail::BudgetExhausted&) {
      res.status = SearchStatus::NotFoundWithinBudget;
      res.nodes = nodes_;
    }
    return res;
  }

 private:
  std::optional<Exponents> decide(const Arrangement& a) {
    if (a.empty()) return Exponents(static_cast<size_t>(a.ambient_dim()), 0);
    auto it = memo_.find(a.key());
    if (it != memo_.end()) return it->second;
    if (++nodes_ > opt_.node_budget) throw detail::BudgetExhausted{};
    std::optional<Exponents> result;
    for (int h = 0; h < a.size() && !result; ++h) {
      auto del = decide(a.deleted(h));
      if (!del) continue;
      Arrangement restr = restriction(a, h).arr;
      auto res = decide(restr);
      if (!res) continue;
      // exponent condition of the addition-deletion triple:
      // exp(A^H) plus one copy of |A'| - |A^H| must equal exp(A')
      Exponents expect = *res;
      expect.push_back(a.size() - 1 - restr.size());
      if (sorted_exponents(expect) != *del) continue;
      Exponents full = *res;
      full.push_back(a.size() - restr.size());
      result = sorted_exponents(full);
      choice_[a.key()] = h;
    }
    memo_[a.key()] = result;
    return result;
  }

  SearchOptions opt_;
  uint64_t nodes_ = 0;
  std::unordered_map<std::string, std::optional<Exponents>> memo_;
  std::unordered_map<std::string, int> choice_;
};

inline SearchResult search_inductively_free(const Arrangement& a, SearchOptions opt = {}) {
  return InductiveFreenessSearch(opt).run(a);
}

// ---------------------------------------------------------------------------
// Addition, deletion and division theorems as certificate transformers
// ---------------------------------------------------------------------------

struct TheoremApplication {
  bool applicable = false;          // divisional (addition/deletion), divides (division)
  Arrangement result;               // the arrangement the verdict refers to
  std::optional<DivisionalityReport> report;
  std::optional<Exponents> exponents;        // engaged iff freeness concluded
  std::optional<Certificate> certificate;
  std::string note;
};

namespace detail {

inline void light_validate(const Arrangement& a, const Certificate& c) {
  if (c.ambient_dim != a.ambient_dim())
    throw MissingCertificateError("certificate ambient dimension mismatch");
  long sum = 0;
  for (int e : c.exponents) sum += e;
  if (static_cast<int>(c.exponents.size()) != a.ambient_dim() || sum != a.size())
    throw MissingCertificateError("certificate exponents do not fit the arrangement");
}

inline std::optional<Certificate> synthesize(const Arrangement& a, uint64_t budget) {
  SearchResult s = search_additional_filtration(a, {budget});
  if (s.status == SearchStatus::Found) return s.certificate;
  return std::nullopt;
}

}  // namespace detail

// A' certified free; decides freeness of A = A' + H. Divisional => free with
// the updated exponents; not divisional => A is certified NOT free.
inline TheoremApplication apply_addition(const Arrangement& a_minus, const Certificate& cert_minus,
                                         const Hyperplane& h, SearchOptions opt = {}) {
  detail::light_validate(a_minus, cert_minus);
  if (a_minus.contains(h)) throw DuplicateHyperplaneError();
  std::vector<Hyperplane> hs = a_minus.hyperplanes();
  hs.push_back(h);
  Arrangement a(a_minus.ambient_dim(), std::move(hs));

  TheoremApplication out{.applicable = false, .result = a};
  out.report = divisionality(a, a.size() - 1);
  if (!out.report->is_divisional) {
    out.note = "not divisional along H, and A\\{H} is free: A is not free";
    return out;
  }
  out.applicable = true;
  auto exps = exponents_after_addition(cert_minus.exponents,
                                       a_minus.size() - out.report->restriction_size);
  if (!exps) throw InvariantViolationError("addition exponent bookkeeping failed");
  out.exponents = *exps;

  if (std::holds_alternative<AdditionFiltrationCert>(cert_minus.evidence)) {
    Certificate c = cert_minus;
    auto& af = std::get<AdditionFiltrationCert>(c.evidence);
    af.order.push_back(h);
    af.step_exponents.push_back(*exps);
    c.exponents = *exps;
    out.certificate = std::move(c);
  } else {
    out.certificate = detail::synthesize(a, opt.node_budget);
    if (!out.certificate)
      out.note = "free by the addition theorem; no composable certificate produced";
  }
  return out;
}

// A certified free; decides freeness of A \ {H}.
inline TheoremApplication apply_deletion(const Arrangement& a, const Certificate& cert, int h,
                                         SearchOptions opt = {}) {
  detail::light_validate(a, cert);
  a.check_index(h);
  Arrangement a_minus = a.deleted(h);
  TheoremApplication out{.applicable = false, .result = a_minus};
  out.report = divisionality(a, h);
  if (!out.report->is_divisional) {
    out.note = "not divisional along H, and A is free: A\\{H} is not free";
    return out;
  }
  out.applicable = true;
  auto exps = exponents_after_deletion(cert.exponents, a.size() - out.report->restriction_size);
  if (!exps) throw InvariantViolationError("deletion exponent bookkeeping failed");
  out.exponents = *exps;

  const auto* af = std::get_if<AdditionFiltrationCert>(&cert.evidence);
  if (af && !af->order.empty() && af->order.back() == a[h]) {
    Certificate c;
    c.ambient_dim = a.ambient_dim();
    AdditionFiltrationCert trimmed;
    trimmed.order.assign(af->order.begin(), af->order.end() - 1);
    trimmed.step_exponents.assign(af->step_exponents.begin(), af->step_exponents.end() - 1);
    c.exponents = *exps;
    c.evidence = std::move(trimmed);
    out.certificate = std::move(c);
  } else {
    out.certificate = detail::synthesize(a_minus, opt.node_budget);
    if (!out.certificate)
      out.note = "free by the deletion theorem; no composable certificate produced";
  }
  return out;
}

// Division theorem: A^H certified free and chi(A^H) | chi(A) => A free.
// Failure of the divisibility gives no conclusion.
inline TheoremApplication apply_division(const Arrangement& a, int h,
                                         const Certificate& restriction_cert,
                                         SearchOptions opt = {}) {
  a.check_index(h);
  Restriction res = restriction(a, h);
  detail::light_validate(res.arr, restriction_cert);

  TheoremApplication out{.applicable = false, .result = a};
  CharPoly chi_a = char_poly(a).first;
  CharPoly chi_r = char_poly(res.arr).first;
  if (!chi_a.divisible_by(chi_r)) {
    out.note = "chi(A^H) does not divide chi(A): the division theorem gives no conclusion";
    return out;
  }
  out.applicable = true;
  Exponents exps = restriction_cert.exponents;
  exps.push_back(a.size() - res.arr.size());
  out.exponents = sorted_exponents(exps);

  const auto* df = std::get_if<DivisionalFlagCert>(&restriction_cert.evidence);
  if (df && a.rank() == a.ambient_dim()) {
    // lift the flag of A^H through H: X_(i+1) = H meet the originals whose
    // traces contain the flag member
    DivisionalFlagCert lifted;
    lifted.flag.push_back(Flat::of_hyperplane(a[h]));
    for (const auto& fx : df->flag) {
      std::vector<std::vector<Int>> rows{a[h].normal()};
      for (int j = 0; j < res.arr.size(); ++j) {
        if (fx.contained_in(res.arr[j]))
          for (int orig : res.origins[static_cast<size_t>(j)])
            rows.push_back(a[orig].normal());
      }
      lifted.flag.push_back(Flat::from_generators(a.ambient_dim(), rows));
    }
    Certificate c;
    c.ambient_dim = a.ambient_dim();
    c.exponents = *out.exponents;
    c.evidence = std::move(lifted);
    out.certificate = std::move(c);
  } else {
    out.certificate = detail::synthesize(a, opt.node_budget);
    if (!out.certificate)
      out.note = "free by the division theorem; no composable certificate produced";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Probe for the open addition conjectures
// ---------------------------------------------------------------------------

enum class ProbeStatus { Consistent, Counterexample, HypothesisNotMet };

struct ProbePart {
  bool hypothesis_met = false;
  std::optional<bool> conclusion_holds;
  ProbeStatus status = ProbeStatus::HypothesisNotMet;
  std::string detail;
};

struct ProbeResult {
  ProbePart global_divisional;  // A' free + globally divisional => A free?
  ProbePart chi_shape;          // chi_0 root pattern => both free?
  DivisionalityReport report;
};

using FreenessOracle = std::function<SaitoVerdict(const Arrangement&)>;

inline SaitoVerdict decided(const FreenessOracle& oracle, const Arrangement& a) {
  SaitoVerdict v = oracle(a);
  if (v.status == Freeness::Unknown) throw OracleUndecidedError();
  return v;
}

inline ProbeResult conjecture_probe(const Arrangement& a, int h, const FreenessOracle& oracle) {
  a.check_index(h);
  ProbeResult out{.global_divisional = {}, .chi_shape = {}, .report = divisionality(a, h)};
  Arrangement a_minus = a.deleted(h);

  // part 1
  {
    ProbePart& p = out.global_divisional;
    SaitoVerdict vminus = decided(oracle, a_minus);
    p.hypothesis_met =
        vminus.status == Freeness::Free && out.report.is_globally_divisional;
    if (p.hypothesis_met) {
      SaitoVerdict va = decided(oracle, a);
      p.conclusion_holds = va.status == Freeness::Free;
      p.status = *p.conclusion_holds ? ProbeStatus::Consistent : ProbeStatus::Counterexample;
      p.detail = *p.conclusion_holds ? "A' free, globally divisional, A free"
                                     : "A' free and globally divisional, but A is NOT free";
    } else {
      p.status = ProbeStatus::HypothesisNotMet;
      p.detail = vminus.status != Freeness::Free ? "A\\{H} is not free"
                                                 : "A is not globally divisional along H";
    }
  }

  // part 2: chi_0(A) = (t-d2-1) prod (t-d_i), chi_0(A') = (t-d2) prod (t-d_i)
  {
    ProbePart& p = out.chi_shape;
    if (a_minus.empty()) {
      p.status = ProbeStatus::HypothesisNotMet;
      p.detail = "A\\{H} is empty: the reduced polynomial shape does not apply";
    } else {
      auto chi0_a = char_poly(a).second;
      auto chi0_m = char_poly(a_minus).second;
      auto ra = chi0_a->integer_roots();
      auto rm = chi0_m->integer_roots();
      bool hyp = false;
      if (ra && rm) {
        for (size_t i = 0; i < rm->size() && !hyp; ++i) {
          std::vector<Int> shifted = *rm;
          shifted[i] += 1;
          std::sort(shifted.begin(), shifted.end());
          hyp = shifted == *ra;
        }
      }
      p.hypothesis_met = hyp;
      if (!hyp) {
        p.status = ProbeStatus::HypothesisNotMet;
        p.detail = "reduced polynomials do not have the required root pattern";
      } else {
        bool both = decided(oracle, a).status == Freeness::Free &&
                    decided(oracle, a_minus).status == Freeness::Free;
        p.conclusion_holds = both;
        p.status = both ? ProbeStatus::Consistent : ProbeStatus::Counterexample;
        p.detail = both ? "root pattern present and both arrangements free"
                        : "root pattern present but a member is NOT free";
      }
    }
  }
  return out;
}

}  // namespace arrangefree
