// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. Criteria with stated runtime budgets are timed and fail when the
// budget is exceeded.

#include <chrono>
#include <cstdio>
#include <unordered_map>

#include "arrangefree/report.hpp"
#include "arrangefree/rootsys.hpp"
#include "corpus.hpp"

using namespace arrangefree;
using namespace arrangefree::testcorpus;

namespace {

struct Summary {
  int failures = 0;

  void report(int criterion, bool ok, const std::string& what, double seconds,
              const std::string& detail = "") {
    std::printf("%s  criterion %2d: %s (%.1f s)%s%s\n", ok ? "PASS" : "FAIL", criterion,
                what.c_str(), seconds, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct VerdictCache {
  std::unordered_map<std::string, SaitoVerdict> map;

  const SaitoVerdict& of(const Arrangement& a) {
    auto it = map.find(a.key());
    if (it == map.end()) it = map.emplace(a.key(), freeness_verdict(a)).first;
    return it->second;
  }
};

std::string exps_str(const std::vector<int>& e) {
  std::string s = "{";
  for (size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return s + "}";
}

}  // namespace

int main() {
  Summary summary;
  auto corpus = random_corpus(200);

  // criterion 1: chi oracle equivalence on the random corpus, < 60 s
  {
    auto start = std::chrono::steady_clock::now();
    int bad = 0;
    for (const auto& a : corpus)
      if (!(char_poly(a).first == char_poly_whitney(a))) ++bad;
    double secs = seconds_since(start);
    summary.report(1, bad == 0 && secs < 60.0,
                   "chi equals the Whitney subset oracle on 200 random arrangements", secs,
                   bad ? std::to_string(bad) + " disagreements" : "");
  }

  // criterion 2: deletion-restriction identity over the same corpus
  {
    auto start = std::chrono::steady_clock::now();
    int bad = 0;
    for (const auto& a : corpus) {
      CharPoly chi = char_poly(a).first;
      for (int h = 0; h < a.size(); ++h)
        if (!(chi == char_poly(a.deleted(h)).first - char_poly(restriction(a, h).arr).first))
          ++bad;
    }
    summary.report(2, bad == 0, "deletion-restriction identity for every (A, H) in the corpus",
                   seconds_since(start), bad ? std::to_string(bad) + " violations" : "");
  }

  // criterion 3: braid arrangements, < 2 min
  std::vector<Certificate> integrity_certs;           // fed into criterion 11
  std::vector<Arrangement> integrity_arrs;
  {
    auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (int l = 3; l <= 5; ++l) {
      Arrangement braid = braid_arrangement(l);
      std::vector<Int> roots;
      for (int i = 0; i < l; ++i) roots.emplace_back(i);
      if (!(char_poly(braid).first == CharPoly::from_roots(roots))) {
        ok = false;
        detail += "chi(braid " + std::to_string(l) + ") wrong; ";
      }
      if (l <= 4 && !(char_poly(braid).first == char_poly_whitney(braid))) {
        ok = false;
        detail += "whitney disagrees at l=" + std::to_string(l) + "; ";
      }
      if (l <= 4) {
        SaitoVerdict v = freeness_verdict(braid);
        std::vector<int> want;
        for (int i = 0; i < l; ++i) want.push_back(i);
        if (v.status != Freeness::Free || v.exponents != want) {
          ok = false;
          detail += "saito verdict wrong at l=" + std::to_string(l) + "; ";
        } else {
          Certificate c;
          c.ambient_dim = l;
          c.exponents = v.exponents;
          c.evidence = SaitoBasisCert{v.basis};
          integrity_certs.push_back(std::move(c));
          integrity_arrs.push_back(braid);
        }
      }
    }
    double secs = seconds_since(start);
    summary.report(3, ok && secs < 120.0,
                   "braid chi factorizations and Saito verdicts (l = 3, 4, 5)", secs, detail);
  }

  // criterion 4: the generic negative control
  {
    auto start = std::chrono::steady_clock::now();
    Arrangement g = generic4();
    bool ok = true;
    std::string detail;
    if (!(char_poly(g).first == CharPoly({Int(-3), Int(6), Int(-4), Int(1)}))) {
      ok = false;
      detail += "chi wrong; ";
    }
    SaitoVerdict v = freeness_verdict(g);
    if (v.status != Freeness::NotFree || v.reason != NotFreeReason::ChiNotIntegerRooted) {
      ok = false;
      detail += "oracle verdict wrong; ";
    }
    for (int h = 0; h < g.size(); ++h)
      if (divisionality(g, h).is_divisional) {
        ok = false;
        detail += "divisional along h=" + std::to_string(h) + "; ";
      }
    if (search_additional_filtration(g).status != SearchStatus::Exhausted) {
      ok = false;
      detail += "addition search did not exhaust; ";
    }
    if (search_divisional_flag(g).status != SearchStatus::Exhausted) {
      ok = false;
      detail += "flag search found something; ";
    }
    if (search_inductively_free(g).status == SearchStatus::Found) {
      ok = false;
      detail += "inductive search found something; ";
    }
    summary.report(4, ok, "generic 4 planes: refuted by every route", seconds_since(start),
                   detail);
  }

  // criteria 5-7: the addition-deletion biconditionals and Terao
  // factorization against the Saito oracle, corpus-wide
  VerdictCache verdicts;
  {
    auto start = std::chrono::steady_clock::now();
    int pairs = 0, exceptions = 0;
    for (const auto& a : corpus) {
      for (int h = 0; h < a.size(); ++h) {
        const SaitoVerdict& vd = verdicts.of(a.deleted(h));
        if (vd.status != Freeness::Free) continue;
        ++pairs;
        bool divisional = divisionality(a, h).is_divisional;
        bool a_free = verdicts.of(a).status == Freeness::Free;
        if (a_free != divisional) ++exceptions;
      }
    }
    summary.report(5, exceptions == 0,
                   "main theorem biconditional on " + std::to_string(pairs) + " corpus pairs",
                   seconds_since(start),
                   exceptions ? std::to_string(exceptions) + " exceptions" : "");
  }
  {
    auto start = std::chrono::steady_clock::now();
    int pairs = 0, exceptions = 0;
    for (const auto& a : corpus) {
      if (verdicts.of(a).status != Freeness::Free) continue;
      for (int h = 0; h < a.size(); ++h) {
        ++pairs;
        bool divisional = divisionality(a, h).is_divisional;
        bool del_free = verdicts.of(a.deleted(h)).status == Freeness::Free;
        if (del_free != divisional) ++exceptions;
      }
    }
    summary.report(6, exceptions == 0,
                   "deletion theorem biconditional on " + std::to_string(pairs) + " corpus pairs",
                   seconds_since(start),
                   exceptions ? std::to_string(exceptions) + " exceptions" : "");
  }
  {
    auto start = std::chrono::steady_clock::now();
    int free_count = 0, bad = 0;
    for (const auto& [key, v] : verdicts.map) {
      if (v.status != Freeness::Free) continue;
      ++free_count;
    }
    for (const auto& a : corpus) {
      const SaitoVerdict& v = verdicts.of(a);
      if (v.status != Freeness::Free) continue;
      auto roots = exponents_from_charpoly(char_poly(a).first);
      if (!roots || *roots != v.exponents) ++bad;
    }
    summary.report(7, bad == 0,
                   "Terao factorization: Free exponents equal chi roots (" +
                       std::to_string(free_count) + " free verdicts)",
                   seconds_since(start), bad ? std::to_string(bad) + " mismatches" : "");
  }

  // criterion 8: Shi and Catalan reproduction, < 5 min each
  {
    struct Case {
      const char* name;
      RootType type;
      DeformationFamily family;
      std::vector<int> exponents;
    };
    const std::vector<Case> cases = {
        {"Shi^1(A2)", RootType::A, DeformationFamily::Shi, {1, 3, 3}},
        {"Catalan^1(A2)", RootType::A, DeformationFamily::Catalan, {1, 4, 5}},
        {"Shi^1(B2)", RootType::B, DeformationFamily::Shi, {1, 4, 4}},
    };
    for (const auto& c : cases) {
      auto start = std::chrono::steady_clock::now();
      RootSystem rs = positive_roots(c.type, 2);
      Arrangement coned = build_family(rs, c.family, 1);
      Arrangement ess = essential_part(coned).arr;
      bool ok = true;
      std::string detail;
      SearchResult r = search_additional_filtration(ess);
      if (r.status != SearchStatus::Found || r.certificate->exponents != c.exponents) {
        ok = false;
        detail += "filtration search failed or exponents differ; ";
      } else if (!verify_certificate(ess, *r.certificate).ok) {
        ok = false;
        detail += "certificate replay failed; ";
      }
      SaitoVerdict v = freeness_verdict(ess);
      if (v.status != Freeness::Free || v.exponents != c.exponents) {
        ok = false;
        detail += "saito oracle disagrees; ";
      }
      double secs = seconds_since(start);
      if (ok && r.certificate) {
        integrity_certs.push_back(*r.certificate);
        integrity_arrs.push_back(ess);
        Certificate sc;
        sc.ambient_dim = ess.ambient_dim();
        sc.exponents = v.exponents;
        sc.evidence = SaitoBasisCert{v.basis};
        integrity_certs.push_back(std::move(sc));
        integrity_arrs.push_back(ess);
      }
      summary.report(8, ok && secs < 300.0,
                     std::string(c.name) + " certified with exponents " + exps_str(c.exponents),
                     secs, detail);
    }
  }

  // criterion 9: every ideal-Shi variant of A2 and B2 admits an additional
  // filtration and the oracle confirms freeness, < 15 min total
  {
    auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    int cases = 0;
    for (RootType type : {RootType::A, RootType::B}) {
      RootSystem rs = positive_roots(type, 2);
      for (const auto& ideal : enumerate_lower_ideals(rs)) {
        for (IdealSign sign : {IdealSign::Plus, IdealSign::Minus}) {
          ++cases;
          Arrangement arr = essential_part(ideal_shi(rs, 1, ideal, sign)).arr;
          SearchResult r = search_additional_filtration(arr);
          SaitoVerdict v = freeness_verdict(arr);
          bool case_ok = r.status == SearchStatus::Found && v.status == Freeness::Free &&
                         r.certificate->exponents == v.exponents &&
                         verify_certificate(arr, *r.certificate).ok;
          if (!case_ok) {
            ok = false;
            detail += root_type_name(type) + "2 ideal size " + std::to_string(ideal.size()) +
                      (sign == IdealSign::Plus ? "+" : "-") + " failed; ";
          } else {
            integrity_certs.push_back(*r.certificate);
            integrity_arrs.push_back(arr);
          }
        }
      }
    }
    double secs = seconds_since(start);
    summary.report(9, ok && secs < 900.0,
                   "all " + std::to_string(cases) +
                       " ideal-Shi variants of A2 and B2 are additionally free",
                   secs, detail);
  }

  // criterion 10: graded decomposition identity for all d <= |A|
  {
    auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    std::vector<Arrangement> targets;
    for (int l = 1; l <= 3; ++l) targets.push_back(boolean_arrangement(l));
    targets.push_back(braid_arrangement(3));
    int picked = 0;
    for (size_t i = 0; i < corpus.size() && picked < 20; i += 7) {
      if (corpus[i].empty()) continue;
      targets.push_back(corpus[i]);
      ++picked;
    }
    for (const auto& a : targets) {
      for (int h = 0; h < a.size(); ++h) {
        if (!dh_decomposition_check(a, h, a.size())) {
          ok = false;
          detail += "failed on |A|=" + std::to_string(a.size()) +
                    " l=" + std::to_string(a.ambient_dim()) + " h=" + std::to_string(h) + "; ";
          break;
        }
      }
    }
    summary.report(10, ok,
                   "graded decomposition identity on booleans, braid and " +
                       std::to_string(picked) + " corpus arrangements",
                   seconds_since(start), detail);
  }

  // criterion 11: serialize -> parse -> replay for every certificate above
  {
    auto start = std::chrono::steady_clock::now();
    int bad = 0;
    for (size_t i = 0; i < integrity_certs.size(); ++i) {
      json j = certificate_to_json(integrity_certs[i]);
      Certificate back = certificate_from_json(json::parse(j.dump()));
      if (!verify_certificate(integrity_arrs[i], back).ok) ++bad;
    }
    summary.report(11, bad == 0 && !integrity_certs.empty(),
                   "certificate integrity for " + std::to_string(integrity_certs.size()) +
                       " certificates from criteria 3, 8, 9",
                   seconds_since(start), bad ? std::to_string(bad) + " replay failures" : "");
  }

  if (summary.failures == 0)
    std::printf("all acceptance criteria passed\n");
  else
    std::printf("%d acceptance criteria FAILED\n", summary.failures);
  return summary.failures;
}
