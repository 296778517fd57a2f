#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "arrangefree/diskcache.hpp"
#include "arrangefree/report.hpp"
#include "arrangefree/searches.hpp"
#include "corpus.hpp"

using namespace arrangefree;
using namespace arrangefree::testcorpus;

namespace {

ParsedArrangement parse(const std::string& text) {
  std::istringstream in(text);
  return parse_arrangement_text(in);
}

}  // namespace

TEST_CASE("arrangement file parsing") {
  SECTION("boolean l=2") {
    ParsedArrangement p = parse("arrangement 2\n1 0\n0 1\n");
    CHECK(!p.affine);
    CHECK(same_arrangement(p.central(), boolean_arrangement(2)));
  }
  SECTION("rationals canonicalize") {
    ParsedArrangement p = parse("arrangement 2\n1/2 -1/2\n");
    REQUIRE(p.central().size() == 1);
    CHECK(p.central()[0].normal() == std::vector<Int>{Int(1), Int(-1)});
  }
  SECTION("duplicates are rejected with both line numbers") {
    try {
      parse("arrangement 2\n1 0\n2 0\n");
      FAIL("expected DuplicateHyperplaneError");
    } catch (const DuplicateHyperplaneError& e) {
      std::string msg = e.what();
      CHECK(msg.find("2") != std::string::npos);
      CHECK(msg.find("3") != std::string::npos);
    }
  }
  SECTION("zero normal carries its line number") {
    try {
      parse("arrangement 2\n1 1\n0 0\n");
      FAIL("expected ZeroNormalError");
    } catch (const ZeroNormalError& e) {
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }
  SECTION("comments and blank lines") {
    ParsedArrangement p = parse("# header comment\narrangement 2\n\n1 0  # axis\n0 1\n");
    CHECK(p.central().size() == 2);
  }
  SECTION("malformed input") {
    CHECK_THROWS_AS(parse("arrangment 2\n"), ParseError);
    CHECK_THROWS_AS(parse("arrangement x\n"), ParseError);
    CHECK_THROWS_AS(parse("arrangement 2\n1 2 3\n"), ParseError);
    CHECK_THROWS_AS(parse("arrangement 2\n1 q\n"), ParseError);
    CHECK_THROWS_AS(parse(""), ParseError);
  }
  SECTION("affine mode carries constants and cones") {
    ParsedArrangement p = parse("arrangement 1 affine\n1 0\n1 1\n1 -1\n");
    CHECK(p.affine);
    REQUIRE(p.affine_rows.size() == 3);
    Arrangement c = p.coned();
    CHECK(c.ambient_dim() == 2);
    CHECK(c.size() == 4);
    CHECK_THROWS_AS(p.central(), Error);
  }
  SECTION("round trip through the writer") {
    Arrangement a = generic4();
    ParsedArrangement p = parse(write_arrangement_text(a));
    CHECK(p.central() == a);
  }
  SECTION("header without rows is the empty arrangement") {
    ParsedArrangement p = parse("arrangement 2\n");
    CHECK(p.central().empty());
    CHECK(char_poly(p.central()).first == CharPoly({Int(0), Int(0), Int(1)}));
  }
}

TEST_CASE("digest is order independent") {
  Arrangement a = braid_arrangement(3);
  Arrangement b(3, {a[2], a[0], a[1]});
  CHECK(arrangement_digest(a) == arrangement_digest(b));
  CHECK(arrangement_digest(a) != arrangement_digest(boolean_arrangement(3)));
}

TEST_CASE("certificate serialization round trips and re-verifies") {
  SECTION("addition filtration") {
    Arrangement a = boolean_arrangement(3);
    SearchResult r = search_additional_filtration(a);
    REQUIRE(r.status == SearchStatus::Found);
    json j = certificate_to_json(*r.certificate);
    Certificate back = certificate_from_json(json::parse(j.dump()));
    CHECK(certificate_to_json(back) == j);
    CHECK(verify_certificate(a, back).ok);
  }
  SECTION("divisional flag") {
    Arrangement a = boolean_arrangement(3);
    SearchResult r = search_divisional_flag(a);
    REQUIRE(r.status == SearchStatus::Found);
    json j = certificate_to_json(*r.certificate);
    Certificate back = certificate_from_json(json::parse(j.dump()));
    CHECK(verify_certificate(a, back).ok);
  }
  SECTION("saito basis") {
    Arrangement a = braid_arrangement(3);
    SaitoVerdict v = freeness_verdict(a);
    REQUIRE(v.status == Freeness::Free);
    Certificate c;
    c.ambient_dim = a.ambient_dim();
    c.exponents = v.exponents;
    c.evidence = SaitoBasisCert{v.basis};
    json j = certificate_to_json(c);
    Certificate back = certificate_from_json(json::parse(j.dump()));
    CHECK(verify_certificate(a, back).ok);
  }
  SECTION("stair") {
    Arrangement a = boolean_arrangement(3);
    Certificate c;
    c.ambient_dim = 3;
    c.exponents = {1, 1, 1};
    c.evidence = StairCert{{StairStep{{}, a[0]}}};
    json j = certificate_to_json(c);
    Certificate back = certificate_from_json(json::parse(j.dump()));
    CHECK(verify_stair_certificate(a, back).ok);
  }
  SECTION("tampered exponents fail verification") {
    Arrangement a = boolean_arrangement(3);
    SearchResult r = search_additional_filtration(a);
    json j = certificate_to_json(*r.certificate);
    j["exponents"] = {0, 1, 2};
    Certificate bad = certificate_from_json(j);
    CHECK(!verify_certificate(a, bad).ok);
  }
}

TEST_CASE("report blocks round trip") {
  Arrangement a = generic4();
  json ja = arrangement_to_json(a);
  CHECK(arrangement_from_json(json::parse(ja.dump())) == a);

  CharPoly chi = char_poly(a).first;
  CHECK(charpoly_from_json(json::parse(charpoly_to_json(chi).dump())) == chi);

  DivisionalityReport rep = divisionality(a, 0);
  json jr = divisionality_report_to_json(rep);
  CHECK(json::parse(jr.dump()) == jr);
}

TEST_CASE("disk cache stores and validates lattices") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "arrangefree_cache_test";
  fs::remove_all(dir);
  DiskCache cache(dir.string());

  Arrangement a = braid_arrangement(4);
  IntersectionLattice lat = build_lattice(a);
  cache.store(a, lat);

  SECTION("round trip") {
    auto loaded = cache.load(a);
    REQUIRE(loaded != nullptr);
    CHECK(loaded->level_sizes() == lat.level_sizes());
    CHECK(loaded->top().mu == lat.top().mu);
  }
  SECTION("corrupted file is rejected") {
    std::ofstream out(cache.path_for(a));
    out << "{ not json";
    out.close();
    CHECK(cache.load(a) == nullptr);
  }
  SECTION("tampered mobius value is rejected") {
    std::ifstream in(cache.path_for(a));
    json j;
    in >> j;
    in.close();
    j["levels"].back()[0]["mu"] = "123456";
    std::ofstream out(cache.path_for(a));
    out << j.dump();
    out.close();
    CHECK(cache.load(a) == nullptr);
  }
  SECTION("wrong arrangement misses") {
    CHECK(cache.load(boolean_arrangement(3)) == nullptr);
  }
  fs::remove_all(dir);
}
