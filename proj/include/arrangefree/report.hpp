#pragma once

#include <json.hpp>

#include "arrangefree/arrfile.hpp"
#include "arrangefree/searches.hpp"

namespace arrangefree {

using json = nlohmann::json;

// Big integers and rationals are serialized as strings so reports stay exact
// at any size; small counts (dimensions, indices, exponents) stay numeric.

inline json int_vec_to_json(const std::vector<Int>& v) {
  json a = json::array();
  for (const Int& x : v) a.push_back(x.get_str());
  return a;
}

inline std::vector<Int> int_vec_from_json(const json& a) {
  std::vector<Int> v;
  for (const auto& x : a) v.push_back(parse_int(x.get<std::string>()));
  return v;
}

inline json hyperplane_to_json(const Hyperplane& h) { return int_vec_to_json(h.normal()); }

inline Hyperplane hyperplane_from_json(const json& a) { return Hyperplane(int_vec_from_json(a)); }

inline json flat_to_json(const Flat& f) {
  json rows = json::array();
  for (const auto& r : f.normal_span()) rows.push_back(int_vec_to_json(r));
  return json{{"ambient_dim", f.ambient_dim()}, {"rows", rows}};
}

inline Flat flat_from_json(const json& j) {
  std::vector<std::vector<Int>> rows;
  for (const auto& r : j.at("rows")) rows.push_back(int_vec_from_json(r));
  return Flat::from_generators(j.at("ambient_dim").get<int>(), rows);
}

inline json charpoly_to_json(const CharPoly& p) {
  json coeffs = json::array();
  for (const Int& c : p.coeffs()) coeffs.push_back(c.get_str());
  return json{{"coeffs", coeffs}, {"pretty", p.pretty()}};
}

inline CharPoly charpoly_from_json(const json& j) {
  return CharPoly(int_vec_from_json(j.at("coeffs")));
}

inline json arrangement_to_json(const Arrangement& a) {
  json hs = json::array();
  for (const auto& h : a.hyperplanes()) hs.push_back(hyperplane_to_json(h));
  return json{{"ambient_dim", a.ambient_dim()},
              {"num_hyperplanes", a.size()},
              {"rank", a.rank()},
              {"digest", arrangement_digest(a)},
              {"hyperplanes", hs}};
}

inline Arrangement arrangement_from_json(const json& j) {
  std::vector<Hyperplane> hs;
  for (const auto& h : j.at("hyperplanes")) hs.push_back(hyperplane_from_json(h));
  return Arrangement(j.at("ambient_dim").get<int>(), std::move(hs));
}

inline json multipoly_to_json(const MultiPoly& p) {
  json terms = json::array();
  for (const auto& [m, c] : p.terms()) {
    json mono = json::array();
    for (int e : m) mono.push_back(e);
    terms.push_back(json{{"exps", mono}, {"coeff", to_string(c)}});
  }
  return json{{"num_vars", p.num_vars()}, {"terms", terms}};
}

inline MultiPoly multipoly_from_json(const json& j) {
  MultiPoly p(j.at("num_vars").get<int>());
  for (const auto& t : j.at("terms")) {
    MultiPoly::Monomial m;
    for (const auto& e : t.at("exps")) m.push_back(e.get<int>());
    p.add_term(m, parse_rat(t.at("coeff").get<std::string>()));
  }
  return p;
}

inline json derivation_to_json(const Derivation& d) {
  json comps = json::array();
  for (const auto& f : d.components) comps.push_back(multipoly_to_json(f));
  return json{{"degree", d.degree}, {"components", comps}};
}

inline Derivation derivation_from_json(const json& j) {
  Derivation d;
  d.degree = j.at("degree").get<int>();
  for (const auto& f : j.at("components")) d.components.push_back(multipoly_from_json(f));
  return d;
}

inline json certificate_to_json(const Certificate& c) {
  json j{{"kind", certificate_kind(c)},
         {"ambient_dim", c.ambient_dim},
         {"exponents", c.exponents}};
  if (const auto* af = std::get_if<AdditionFiltrationCert>(&c.evidence)) {
    json order = json::array();
    for (const auto& h : af->order) order.push_back(hyperplane_to_json(h));
    j["order"] = order;
    j["step_exponents"] = af->step_exponents;
  } else if (const auto* df = std::get_if<DivisionalFlagCert>(&c.evidence)) {
    json flag = json::array();
    for (const auto& f : df->flag) flag.push_back(flat_to_json(f));
    j["flag"] = flag;
  } else if (const auto* st = std::get_if<StairCert>(&c.evidence)) {
    json steps = json::array();
    for (const auto& s : st->steps) {
      json dels = json::array();
      for (const auto& h : s.deletions) dels.push_back(hyperplane_to_json(h));
      steps.push_back(json{{"deletions", dels}, {"restriction", hyperplane_to_json(s.restriction)}});
    }
    j["steps"] = steps;
  } else {
    const auto& sb = std::get<SaitoBasisCert>(c.evidence);
    json basis = json::array();
    for (const auto& d : sb.basis) basis.push_back(derivation_to_json(d));
    j["basis"] = basis;
  }
  return j;
}

inline Certificate certificate_from_json(const json& j) {
  Certificate c;
  c.ambient_dim = j.at("ambient_dim").get<int>();
  c.exponents = j.at("exponents").get<std::vector<int>>();
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "addition_filtration") {
    AdditionFiltrationCert af;
    for (const auto& h : j.at("order")) af.order.push_back(hyperplane_from_json(h));
    af.step_exponents = j.at("step_exponents").get<std::vector<std::vector<int>>>();
    c.evidence = std::move(af);
  } else if (kind == "divisional_flag") {
    DivisionalFlagCert df;
    for (const auto& f : j.at("flag")) df.flag.push_back(flat_from_json(f));
    c.evidence = std::move(df);
  } else if (kind == "stair") {
    StairCert st;
    for (const auto& s : j.at("steps")) {
      std::vector<Hyperplane> dels;
      for (const auto& h : s.at("deletions")) dels.push_back(hyperplane_from_json(h));
      st.steps.push_back(StairStep{std::move(dels), hyperplane_from_json(s.at("restriction"))});
    }
    c.evidence = std::move(st);
  } else if (kind == "saito_basis") {
    SaitoBasisCert sb;
    for (const auto& d : j.at("basis")) sb.basis.push_back(derivation_from_json(d));
    c.evidence = std::move(sb);
  } else {
    throw MalformedCertificateError("unknown certificate kind '" + kind + "'");
  }
  return c;
}

inline json divisibility_to_json(const FlatDivisibility& fd) {
  return json{{"flat", flat_to_json(fd.restriction_flat)},
              {"localization", fd.localization},
              {"chi_localization", charpoly_to_json(fd.chi_localization)},
              {"chi_restricted_localization", charpoly_to_json(fd.chi_restricted)},
              {"divides", fd.divides},
              {"is_top", fd.is_top}};
}

inline json divisionality_report_to_json(const DivisionalityReport& rep) {
  json per_flat = json::array();
  for (const auto& fd : rep.per_flat) per_flat.push_back(divisibility_to_json(fd));
  return json{{"h", rep.h},
              {"restriction_size", rep.restriction_size},
              {"is_divisional", rep.is_divisional},
              {"is_locally_divisional", rep.is_locally_divisional},
              {"is_globally_divisional", rep.is_globally_divisional},
              {"local_condition_vacuous", rep.local_vacuous},
              {"per_flat", per_flat}};
}

inline const char* freeness_name(Freeness f) {
  switch (f) {
    case Freeness::Free: return "free";
    case Freeness::NotFree: return "not_free";
    default: return "unknown";
  }
}

inline json saito_verdict_to_json(const SaitoVerdict& v, bool include_basis = true) {
  json j{{"verdict", freeness_name(v.status)}};
  if (v.status == Freeness::Free) {
    j["exponents"] = v.exponents;
    if (include_basis) {
      json basis = json::array();
      for (const auto& d : v.basis) basis.push_back(derivation_to_json(d));
      j["basis"] = basis;
    }
  } else if (v.status == Freeness::NotFree) {
    j["reason"] = v.reason == NotFreeReason::ChiNotIntegerRooted ? "chi-not-integer-rooted"
                                                                 : "graded-dimension-deficit";
    if (v.reason == NotFreeReason::GradedDimensionDeficit) j["deficit_degree"] = v.deficit_degree;
  } else {
    j["degree_bound"] = v.degree_bound;
  }
  return j;
}

inline const char* probe_status_name(ProbeStatus s) {
  switch (s) {
    case ProbeStatus::Consistent: return "consistent";
    case ProbeStatus::Counterexample: return "counterexample";
    default: return "hypothesis-not-met";
  }
}

inline json probe_part_to_json(const ProbePart& p) {
  json j{{"hypothesis_met", p.hypothesis_met},
         {"status", probe_status_name(p.status)},
         {"detail", p.detail}};
  if (p.conclusion_holds) j["conclusion_holds"] = *p.conclusion_holds;
  return j;
}

inline json probe_result_to_json(const ProbeResult& r) {
  return json{{"part1_globally_divisional", probe_part_to_json(r.global_divisional)},
              {"part2_chi_shape", probe_part_to_json(r.chi_shape)},
              {"divisionality", divisionality_report_to_json(r.report)}};
}

inline const char* search_status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::Exhausted: return "exhausted";
    default: return "not-found-within-budget";
  }
}

inline json verify_result_to_json(const VerifyResult& v) {
  return json{{"ok", v.ok}, {"diagnostics", v.diagnostics}};
}

}  // namespace arrangefree
