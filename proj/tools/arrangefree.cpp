#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "arrangefree/diskcache.hpp"
#include "arrangefree/report.hpp"
#include "arrangefree/rootsys.hpp"

using namespace arrangefree;

namespace {

// exit codes: 0 success (including "unknown"), 1 sound negative result, 2 error
constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kError = 2;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

struct CacheSession {
  std::optional<DiskCache> disk;

  explicit CacheSession(const std::string& dir) {
    if (!dir.empty()) disk.emplace(dir);
  }

  void prime(const Arrangement& a) {
    if (!disk) return;
    if (auto lat = disk->load(a)) LatticeCache::global().insert(a.key(), lat);
  }

  void persist(const Arrangement& a) {
    if (!disk) return;
    if (auto lat = LatticeCache::global().lookup(a.key())) disk->store(a, *lat);
  }
};

struct LoadedInput {
  Arrangement arr;
  json report;  // envelope with input description
  std::optional<EssentialPart> essential;
};

LoadedInput load_input(const std::string& path, bool essentialize, CacheSession& cache) {
  ParsedArrangement parsed = parse_arrangement_file(path);
  LoadedInput in;
  in.arr = parsed.coned();
  in.report["input_path"] = path;
  in.report["coned"] = parsed.affine;
  in.report["input"] = arrangement_to_json(in.arr);
  if (essentialize) {
    in.essential = essential_part(in.arr);
    json q = json::array();
    for (const auto& row : in.essential->quotient_rows) q.push_back(int_vec_to_json(row));
    in.report["essentialized"] = {{"arrangement", arrangement_to_json(in.essential->arr)},
                                  {"quotient_map", q}};
    in.arr = in.essential->arr;
  }
  cache.prime(in.arr);
  return in;
}

void emit(const json& report) { std::cout << report.dump(2) << "\n"; }

json chi_block(const Arrangement& a) {
  auto [chi, chi0] = char_poly(a);
  json j{{"chi", charpoly_to_json(chi)}};
  j["chi_reduced"] = chi0 ? charpoly_to_json(*chi0) : json(nullptr);
  auto exps = exponents_from_charpoly(chi);
  j["chi_integer_rooted"] = exps.has_value();
  if (exps) j["chi_roots"] = *exps;
  return j;
}

int cmd_chi(const std::string& path, bool essentialize, CacheSession& cache) {
  Timer t;
  LoadedInput in = load_input(path, essentialize, cache);
  json rep = in.report;
  rep["command"] = "chi";
  rep.update(chi_block(in.arr));
  rep["lattice_level_sizes"] = lattice_of(in.arr)->level_sizes();
  rep["timing_ms"] = t.ms();
  cache.persist(in.arr);
  emit(rep);
  return kOk;
}

int cmd_lattice(const std::string& path, bool essentialize, CacheSession& cache) {
  Timer t;
  LoadedInput in = load_input(path, essentialize, cache);
  auto lat = lattice_of(in.arr);
  json levels = json::array();
  for (const auto& lvl : lat->levels) {
    json level = json::array();
    for (const auto& lf : lvl)
      level.push_back(json{{"flat", flat_to_json(lf.flat)},
                           {"atoms", lf.atoms},
                           {"mu", lf.mu.get_str()}});
    levels.push_back(std::move(level));
  }
  json rep = in.report;
  rep["command"] = "lattice";
  rep["rank"] = lat->rank;
  rep["level_sizes"] = lat->level_sizes();
  rep["levels"] = levels;
  rep.update(chi_block(in.arr));
  rep["timing_ms"] = t.ms();
  cache.persist(in.arr);
  emit(rep);
  return kOk;
}

int cmd_divisional(const std::string& path, int h, bool essentialize, CacheSession& cache) {
  Timer t;
  LoadedInput in = load_input(path, essentialize, cache);
  DivisionalityReport rep = divisionality(in.arr, h);
  json out = in.report;
  out["command"] = "divisional";
  out["divisionality"] = divisionality_report_to_json(rep);
  out["timing_ms"] = t.ms();
  cache.persist(in.arr);
  emit(out);
  return rep.is_divisional ? kOk : kNegative;
}

struct CertifyOutcome {
  std::string verdict;  // "certified" | "not-free" | "not-certified" | "unknown"
  json detail;
  std::optional<Certificate> cert;
};

CertifyOutcome certify_run(const Arrangement& arr, const std::string& method, uint64_t budget) {
  CertifyOutcome out;
  out.detail = json::object();

  auto chi = char_poly(arr).first;
  if (!exponents_from_charpoly(chi)) {
    out.verdict = "not-free";
    out.detail["reason"] = "chi-not-integer-rooted";
    return out;
  }

  bool any_budget_limited = false;
  auto try_method = [&](const std::string& name) -> bool {
    if (name == "addition") {
      SearchResult r = search_additional_filtration(arr, {budget});
      out.detail["addition"] = {{"status", search_status_name(r.status)}, {"nodes", r.nodes}};
      if (r.status == SearchStatus::Found) {
        out.cert = r.certificate;
        return true;
      }
      if (r.status == SearchStatus::NotFoundWithinBudget) any_budget_limited = true;
      return false;
    }
    if (name == "division-flag") {
      EssentialPart ess = essential_part(arr);
      SearchResult r = search_divisional_flag(ess.arr);
      out.detail["division_flag"] = {{"status", search_status_name(r.status)},
                                     {"on_essential_part", !(ess.arr == arr)}};
      if (r.status == SearchStatus::Found) {
        if (!(ess.arr == arr)) {
          // certificate lives on the essential part; report it there
          out.detail["division_flag"]["essential_arrangement"] = arrangement_to_json(ess.arr);
          // pad exponents with zeros for the trivial coordinates
          Exponents padded = r.certificate->exponents;
          padded.insert(padded.end(),
                        static_cast<size_t>(arr.ambient_dim() - ess.arr.ambient_dim()), 0);
          out.detail["division_flag"]["exponents_in_ambient"] = sorted_exponents(padded);
        }
        out.cert = r.certificate;
        return true;
      }
      return false;
    }
    if (name == "inductive") {
      SearchResult r = search_inductively_free(arr, {budget});
      out.detail["inductive"] = {{"status", search_status_name(r.status)}, {"nodes", r.nodes}};
      if (r.status == SearchStatus::Found) {
        out.cert = r.certificate;
        return true;
      }
      if (r.status == SearchStatus::NotFoundWithinBudget) any_budget_limited = true;
      return false;
    }
    throw Error("unknown certify method '" + name + "'");
  };

  std::vector<std::string> methods;
  if (method == "auto")
    methods = {"addition", "division-flag", "inductive"};
  else
    methods = {method};
  for (const auto& m : methods)
    if (try_method(m)) break;

  if (out.cert)
    out.verdict = "certified";
  else if (any_budget_limited)
    out.verdict = "unknown";
  else
    out.verdict = "not-certified";
  return out;
}

int cmd_certify(const std::string& path, const std::string& method, uint64_t budget,
                const std::string& cert_path, bool essentialize, CacheSession& cache) {
  Timer t;
  LoadedInput in = load_input(path, essentialize, cache);
  json rep = in.report;
  rep["command"] = "certify";
  rep["method"] = method;
  rep.update(chi_block(in.arr));

  if (method == "stair") {
    if (cert_path.empty())
      throw Error("--method stair verifies a supplied certificate; pass --certificate FILE");
    std::ifstream cin_(cert_path);
    if (!cin_) throw Error("cannot open certificate file '" + cert_path + "'");
    json cj;
    cin_ >> cj;
    Certificate cert = certificate_from_json(cj);
    if (!std::holds_alternative<StairCert>(cert.evidence))
      throw MalformedCertificateError("--method stair expects a stair certificate");
    VerifyResult vr = verify_stair_certificate(in.arr, cert);
    rep["certificate"] = certificate_to_json(cert);
    rep["verification"] = verify_result_to_json(vr);
    rep["timing_ms"] = t.ms();
    cache.persist(in.arr);
    emit(rep);
    return vr.ok ? kOk : kNegative;
  }

  CertifyOutcome out = certify_run(in.arr, method, budget);
  rep["verdict"] = out.verdict;
  rep["searches"] = out.detail;
  if (out.cert) {
    // searched on the essential part for division flags
    const Arrangement target =
        std::holds_alternative<DivisionalFlagCert>(out.cert->evidence) && in.arr.rank() != in.arr.ambient_dim()
            ? essential_part(in.arr).arr
            : in.arr;
    VerifyResult vr = verify_certificate(target, *out.cert);
    rep["certificate"] = certificate_to_json(*out.cert);
    rep["verification"] = verify_result_to_json(vr);
    if (!vr.ok) throw InvariantViolationError("freshly produced certificate failed verification");
  }
  rep["timing_ms"] = t.ms();
  cache.persist(in.arr);
  emit(rep);
  if (out.verdict == "certified" || out.verdict == "unknown") return out.verdict == "certified" ? kOk : kOk;
  return kNegative;
}

int cmd_saito(const std::string& path, int bound, bool essentialize, CacheSession& cache) {
  Timer t;
  LoadedInput in = load_input(path, essentialize, cache);
  SaitoVerdict v = freeness_verdict(in.arr, bound);
  json rep = in.report;
  rep["command"] = "saito";
  rep.update(chi_block(in.arr));
  rep["saito"] = saito_verdict_to_json(v);
  rep["timing_ms"] = t.ms();
  cache.persist(in.arr);
  emit(rep);
  return v.status == Freeness::NotFree ? kNegative : kOk;
}

RootType parse_root_type(const std::string& t) {
  if (t == "A" || t == "a") return RootType::A;
  if (t == "B" || t == "b") return RootType::B;
  if (t == "C" || t == "c") return RootType::C;
  if (t == "D" || t == "d") return RootType::D;
  if (t == "G2" || t == "g2") return RootType::G2;
  if (t == "F4" || t == "f4") return RootType::F4;
  if (t == "E6" || t == "e6") return RootType::E6;
  if (t == "E7" || t == "e7") return RootType::E7;
  if (t == "E8" || t == "e8") return RootType::E8;
  throw InvalidTypeRankError("unknown root system type '" + t + "'");
}

int default_rank(RootType t, int rank) {
  switch (t) {
    case RootType::G2: return 2;
    case RootType::F4: return 4;
    case RootType::E6: return 6;
    case RootType::E7: return 7;
    case RootType::E8: return 8;
    default:
      if (rank <= 0) throw InvalidTypeRankError("--rank is required for types A-D");
      return rank;
  }
}

std::vector<int> parse_ideal_spec(const RootSystem& rs, const std::string& spec) {
  std::vector<int> ideal;
  if (spec == "all") {
    for (int i = 0; i < rs.num_positive(); ++i) ideal.push_back(i);
  } else if (spec != "empty" && spec != "none" && !spec.empty()) {
    std::istringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        ideal.push_back(std::stoi(tok));
      } catch (...) {
        throw Error("invalid ideal spec entry '" + tok + "'");
      }
    }
  }
  return ideal;
}

int cmd_build(const std::string& family, const std::string& type, int rank, int m,
              const std::string& ideal_spec, const std::string& sign, bool essentialize) {
  RootType rt = parse_root_type(type);
  RootSystem rs = positive_roots(rt, default_rank(rt, rank));
  Arrangement arr;
  if (family == "weyl") {
    arr = weyl_arrangement(rs);
  } else if (family == "shi") {
    arr = build_family(rs, DeformationFamily::Shi, m);
  } else if (family == "catalan") {
    arr = build_family(rs, DeformationFamily::Catalan, m);
  } else if (family == "ideal-shi") {
    std::vector<int> ideal = parse_ideal_spec(rs, ideal_spec);
    IdealSign s = sign == "-" ? IdealSign::Minus : IdealSign::Plus;
    arr = ideal_shi(rs, m, ideal, s);
  } else {
    throw Error("unknown family '" + family + "'");
  }
  if (essentialize) arr = essential_part(arr).arr;
  std::cout << write_arrangement_text(arr);
  return kOk;
}

int cmd_ideals(const std::string& type, int rank) {
  RootType rt = parse_root_type(type);
  RootSystem rs = positive_roots(rt, default_rank(rt, rank));
  auto ideals = enumerate_lower_ideals(rs);
  json roots = json::array();
  for (const auto& r : rs.positive_roots) roots.push_back(int_vec_to_json(r));
  json list = json::array();
  for (const auto& ideal : ideals) list.push_back(ideal);
  emit(json{{"command", "ideals"},
            {"type", root_type_name(rt)},
            {"rank", rs.rank},
            {"positive_roots", roots},
            {"num_ideals", ideals.size()},
            {"ideals", list}});
  return kOk;
}

int cmd_probe(const std::string& path, int h, int bound, bool essentialize, CacheSession& cache) {
  Timer t;
  LoadedInput in = load_input(path, essentialize, cache);
  json rep = in.report;
  rep["command"] = "probe-conjecture";
  FreenessOracle oracle = [&](const Arrangement& a) { return freeness_verdict(a, bound); };
  try {
    ProbeResult pr = conjecture_probe(in.arr, h, oracle);
    rep["probe"] = probe_result_to_json(pr);
    rep["timing_ms"] = t.ms();
    cache.persist(in.arr);
    emit(rep);
    bool counterexample = pr.global_divisional.status == ProbeStatus::Counterexample ||
                          pr.chi_shape.status == ProbeStatus::Counterexample;
    return counterexample ? kNegative : kOk;
  } catch (const OracleUndecidedError& e) {
    rep["probe"] = {{"status", "oracle-undecided"}, {"detail", e.what()}};
    rep["timing_ms"] = t.ms();
    emit(rep);
    return kOk;
  }
}

json oracle_compare_one(const Arrangement& arr, uint64_t budget, int bound) {
  json j;
  CertifyOutcome cert = certify_run(arr, "auto", budget);
  SaitoVerdict vt = freeness_verdict(arr, bound);
  j["certify"] = {{"verdict", cert.verdict}, {"searches", cert.detail}};
  if (cert.cert) j["certify"]["exponents"] = cert.cert->exponents;
  j["saito"] = saito_verdict_to_json(vt, /*include_basis=*/false);

  bool contradiction = false;
  std::string status;
  if (cert.cert && vt.status == Freeness::NotFree) {
    contradiction = true;
    status = "CONTRADICTION: a certificate exists but the oracle refutes freeness";
  } else if (cert.cert && vt.status == Freeness::Free) {
    // compare exponents in the common (essential) picture: a divisional-flag
    // certificate lives on the essential part, so pad with zeros
    Exponents ce = cert.cert->exponents;
    while (ce.size() < vt.exponents.size()) ce.insert(ce.begin(), 0);
    contradiction = ce != vt.exponents;
    status = contradiction ? "CONTRADICTION: certificate and oracle exponents differ"
                           : "agree: free";
  } else if (!cert.cert && vt.status == Freeness::Free) {
    status = cert.verdict == "unknown" ? "oracle free; search budget exhausted"
                                       : "oracle free; no combinatorial certificate found";
  } else if (vt.status == Freeness::NotFree) {
    status = "agree: not free";
  } else {
    status = "undecided";
  }
  j["consistent"] = !contradiction;
  j["status"] = status;
  return j;
}

int cmd_oracle_compare(const std::string& path, const std::string& dir, uint64_t budget, int bound,
                       const std::string& out_dir, bool essentialize, CacheSession& cache) {
  Timer t;
  if (dir.empty()) {
    LoadedInput in = load_input(path, essentialize, cache);
    json rep = in.report;
    rep["command"] = "oracle-compare";
    rep.update(chi_block(in.arr));
    json cmp = oracle_compare_one(in.arr, budget, bound);
    rep["comparison"] = cmp;
    rep["timing_ms"] = t.ms();
    cache.persist(in.arr);
    emit(rep);
    if (!cmp["consistent"].get<bool>()) return kError;
    return cmp["saito"]["verdict"] == "not_free" ? kNegative : kOk;
  }

  // corpus mode: *.arr sorted by filename, deterministic summary
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".arr")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  json summary = json::array();
  bool all_consistent = true;
  for (const auto& f : files) {
    LoadedInput in = load_input(f.string(), essentialize, cache);
    json one = in.report;
    one["command"] = "oracle-compare";
    json cmp = oracle_compare_one(in.arr, budget, bound);
    one["comparison"] = cmp;
    cache.persist(in.arr);
    all_consistent = all_consistent && cmp["consistent"].get<bool>();
    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      auto out_path = std::filesystem::path(out_dir) / (f.stem().string() + ".report.json");
      auto tmp = out_path;
      tmp += ".tmp";
      {
        std::ofstream os(tmp);
        os << one.dump(2) << "\n";
      }
      std::filesystem::rename(tmp, out_path);
    }
    summary.push_back(json{{"file", f.filename().string()},
                           {"status", cmp["status"]},
                           {"consistent", cmp["consistent"]}});
  }
  emit(json{{"command", "oracle-compare"},
            {"dir", dir},
            {"num_files", files.size()},
            {"all_consistent", all_consistent},
            {"summary", summary},
            {"timing_ms", t.ms()}});
  return all_consistent ? kOk : kError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact invariants and freeness certificates for central hyperplane arrangements"};
  app.require_subcommand(1);
  // --h is a documented option of several subcommands, so help is --help only
  app.set_help_flag("--help", "print help and exit");

  std::string cache_dir;
  if (const char* env = std::getenv("ARRANGEFREE_CACHE")) cache_dir = env;
  app.add_option("--cache", cache_dir, "directory for the persistent lattice cache")
      ->envname("ARRANGEFREE_CACHE");

  std::string file, method = "auto", cert_path, type, family, ideal_spec, sign = "+", dir, out_dir;
  int h = 0, bound = -1, rank = 0, m = 1;
  uint64_t budget = 200000;
  bool essentialize = false;

  auto add_common = [&](CLI::App* sub, bool with_file = true) {
    sub->set_help_flag("--help", "print help and exit");
    sub->fallthrough();
    if (with_file) sub->add_option("file", file, "arrangement file")->required();
    sub->add_flag("--essentialize", essentialize, "analyze the essential part");
  };

  auto* chi = app.add_subcommand("chi", "characteristic polynomial and its reduced form");
  add_common(chi);

  auto* lattice = app.add_subcommand("lattice", "full intersection lattice with Mobius values");
  add_common(lattice);

  auto* divisional = app.add_subcommand("divisional", "divisionality report along one hyperplane");
  add_common(divisional);
  divisional->add_option("--h", h, "hyperplane index")->required();

  auto* certify = app.add_subcommand("certify", "search for a freeness certificate");
  add_common(certify);
  certify->add_option("--method", method, "addition|division-flag|inductive|stair|auto")
      ->check(CLI::IsMember({"addition", "division-flag", "inductive", "stair", "auto"}));
  certify->add_option("--budget", budget, "search node budget");
  certify->add_option("--certificate", cert_path, "stair certificate to verify (JSON)");

  auto* saito = app.add_subcommand("saito", "algebraic freeness oracle");
  add_common(saito);
  saito->add_option("--bound", bound, "degree bound (default |A|)");

  auto* build = app.add_subcommand("build", "emit a root-system arrangement file");
  build->add_option("--family", family, "weyl|shi|catalan|ideal-shi")->required();
  build->add_option("--type", type, "A|B|C|D|G2|F4|E6|E7|E8")->required();
  build->add_option("--rank", rank, "rank for types A-D");
  build->add_option("--m", m, "deformation parameter (default 1)");
  build->add_option("--ideal", ideal_spec, "lower ideal: all|empty|i,j,k (root indices)");
  build->add_option("--sign", sign, "+ adds the -m layer, - removes the m layer")
      ->check(CLI::IsMember({"+", "-"}));
  build->add_flag("--essentialize", essentialize, "essentialize before writing");

  auto* ideals = app.add_subcommand("ideals", "list the lower ideals of a root system");
  ideals->add_option("--type", type, "A|B|C|D|G2|F4|E6|E7|E8")->required();
  ideals->add_option("--rank", rank, "rank for types A-D");

  auto* probe = app.add_subcommand("probe-conjecture", "probe the open addition conjectures");
  add_common(probe);
  probe->add_option("--h", h, "hyperplane index")->required();
  probe->add_option("--bound", bound, "oracle degree bound");

  auto* oracle = app.add_subcommand("oracle-compare",
                                    "run certificate searches and the oracle, assert agreement");
  oracle->fallthrough();
  oracle->add_option("file", file, "arrangement file");
  oracle->add_flag("--essentialize", essentialize, "analyze the essential part");
  oracle->add_option("--dir", dir, "process every .arr file in a directory");
  oracle->add_option("--out", out_dir, "write per-file reports here (corpus mode)");
  oracle->add_option("--budget", budget, "search node budget");
  oracle->add_option("--bound", bound, "oracle degree bound");

  CLI11_PARSE(app, argc, argv);

  try {
    CacheSession cache(cache_dir);
    if (chi->parsed()) return cmd_chi(file, essentialize, cache);
    if (lattice->parsed()) return cmd_lattice(file, essentialize, cache);
    if (divisional->parsed()) return cmd_divisional(file, h, essentialize, cache);
    if (certify->parsed()) return cmd_certify(file, method, budget, cert_path, essentialize, cache);
    if (saito->parsed()) return cmd_saito(file, bound, essentialize, cache);
    if (build->parsed()) return cmd_build(family, type, rank, m, ideal_spec, sign, essentialize);
    if (ideals->parsed()) return cmd_ideals(type, rank);
    if (probe->parsed()) return cmd_probe(file, h, bound, essentialize, cache);
    if (oracle->parsed()) {
      if (dir.empty() && file.empty()) throw Error("oracle-compare needs a file or --dir");
      return cmd_oracle_compare(file, dir, budget, bound, out_dir, essentialize, cache);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
