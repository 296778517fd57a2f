#include <catch2/catch_amalgamated.hpp>

#include <atomic>
#include <thread>

#include "arrangefree/lattice.hpp"
#include "corpus.hpp"

using namespace arrangefree;
using namespace arrangefree::testcorpus;

namespace {

CharPoly poly(std::initializer_list<long> ascending) {
  std::vector<Int> c;
  for (long x : ascending) c.emplace_back(x);
  return CharPoly(std::move(c));
}

}  // namespace

TEST_CASE("lattice of small arrangements") {
  SECTION("boolean l=2") {
    auto lat = build_lattice(boolean_arrangement(2));
    CHECK(lat.num_flats() == 4);
    CHECK(lat.level_sizes() == std::vector<int>{1, 2, 1});
    CHECK(lat.levels[0][0].mu == 1);
    CHECK(lat.levels[1][0].mu == -1);
    CHECK(lat.levels[1][1].mu == -1);
    CHECK(lat.levels[2][0].mu == 1);
  }
  SECTION("single hyperplane in l=3") {
    Arrangement a(3, {Hyperplane({Int(1), Int(0), Int(0)})});
    auto lat = build_lattice(a);
    CHECK(lat.num_flats() == 2);
    CHECK(lat.levels[0][0].mu == 1);
    CHECK(lat.levels[1][0].mu == -1);
  }
  SECTION("braid l=3") {
    auto lat = build_lattice(braid_arrangement(3));
    CHECK(lat.level_sizes() == std::vector<int>{1, 3, 1});
    CHECK(lat.top().mu == 2);
    CHECK(lat.top().atoms == std::vector<int>{0, 1, 2});
  }
}

TEST_CASE("characteristic polynomial via the Mobius sum") {
  SECTION("empty l=2") {
    auto [chi, chi0] = char_poly(Arrangement(2));
    CHECK(chi == poly({0, 0, 1}));
    CHECK(!chi0.has_value());
  }
  SECTION("boolean l=2") {
    auto [chi, chi0] = char_poly(boolean_arrangement(2));
    CHECK(chi == poly({1, -2, 1}));
    REQUIRE(chi0.has_value());
    CHECK(*chi0 == poly({-1, 1}));
  }
  SECTION("braid l=3") {
    auto [chi, chi0] = char_poly(braid_arrangement(3));
    CHECK(chi == poly({0, 2, -3, 1}));
    CHECK(*chi0 == poly({0, -2, 1}));
    CHECK(chi == CharPoly::from_roots({Int(0), Int(1), Int(2)}));
  }
}

TEST_CASE("whitney subset oracle") {
  CHECK(char_poly_whitney(boolean_arrangement(2)) == poly({1, -2, 1}));
  CHECK(char_poly_whitney(Arrangement(3)) == poly({0, 0, 0, 1}));
  CHECK(char_poly_whitney(generic4()) == poly({-3, 6, -4, 1}));

  SECTION("size guard") {
    std::vector<Hyperplane> hs;
    for (int i = 1; i <= 21; ++i) hs.push_back(Hyperplane({Int(1), Int(i)}));
    Arrangement big(2, std::move(hs));
    CHECK_THROWS_AS(char_poly_whitney(big), TooLargeError);
  }
}

TEST_CASE("localization") {
  Arrangement braid = braid_arrangement(3);
  SECTION("at the center: every hyperplane") {
    Flat center = braid.center();
    CHECK(center.codim() == 2);
    Arrangement loc = localization(braid, center);
    CHECK(loc.size() == 3);
  }
  SECTION("at the full space: the empty sub-arrangement") {
    Arrangement loc = localization(braid, Flat::full_space(3));
    CHECK(loc.empty());
  }
  SECTION("boolean l=3 at a codim-2 coordinate flat") {
    Arrangement b3 = boolean_arrangement(3);
    Flat x01 = intersect_flats(Flat::of_hyperplane(b3[0]), Flat::of_hyperplane(b3[1]));
    Arrangement loc = localization(b3, x01);
    REQUIRE(loc.size() == 2);
    CHECK(loc[0] == b3[0]);
    CHECK(loc[1] == b3[1]);
  }
  SECTION("flat outside the lattice") {
    Flat diag = Flat::of_hyperplane(Hyperplane({Int(1), Int(1), Int(1)}));
    CHECK_THROWS_AS(localization(braid, diag), FlatNotInLatticeError);
  }
}

TEST_CASE("restriction") {
  SECTION("braid l=3 onto ker(x1-x2): both traces coincide") {
    Restriction r = restriction(braid_arrangement(3), 0);
    CHECK(r.arr.ambient_dim() == 2);
    CHECK(r.arr.size() == 1);
    CHECK(r.origins == std::vector<std::vector<int>>{{1, 2}});
  }
  SECTION("boolean l=2 onto ker x") {
    Restriction r = restriction(boolean_arrangement(2), 0);
    CHECK(r.arr.size() == 1);
    CHECK(r.arr.ambient_dim() == 1);
  }
  SECTION("single hyperplane: empty restriction") {
    Arrangement a(3, {Hyperplane({Int(1), Int(2), Int(3)})});
    Restriction r = restriction(a, 0);
    CHECK(r.arr.empty());
    CHECK(r.arr.ambient_dim() == 2);
  }
  SECTION("restriction is basis independent") {
    Arrangement a = generic4();
    for (int h = 0; h < a.size(); ++h) {
      Restriction canonical = restriction(a, h);
      auto basis = canonical.basis_cols;
      // mix the basis by an invertible integer change
      std::vector<std::vector<Int>> mixed = basis;
      for (size_t j = 0; j < mixed[0].size(); ++j) {
        mixed[0][j] = basis[0][j] + 2 * basis[1][j];
        mixed[1][j] = basis[0][j] + 3 * basis[1][j];
      }
      Restriction alt = restriction_with_basis(a, h, mixed);
      CHECK(char_poly(alt.arr).first == char_poly(canonical.arr).first);
    }
  }
}

TEST_CASE("essential part") {
  SECTION("braid l=3 becomes a rank-2 line arrangement") {
    EssentialPart e = essential_part(braid_arrangement(3));
    CHECK(e.arr.ambient_dim() == 2);
    CHECK(e.arr.size() == 3);
    CHECK(e.arr.rank() == 2);
    auto chi = char_poly(braid_arrangement(3)).first;
    auto chie = char_poly(e.arr).first;
    CHECK(chi == chie * CharPoly({Int(0), Int(1)}));
  }
  SECTION("essential input is unchanged") {
    Arrangement b2 = boolean_arrangement(2);
    EssentialPart e = essential_part(b2);
    CHECK(e.arr == b2);
  }
  SECTION("empty arrangement collapses to dimension zero") {
    EssentialPart e = essential_part(Arrangement(3));
    CHECK(e.arr.ambient_dim() == 0);
    CHECK(e.arr.empty());
    CHECK(char_poly(e.arr).first == CharPoly({Int(1)}));
  }
}

TEST_CASE("cone") {
  SECTION("one affine hyperplane") {
    Arrangement c = cone({{{Rat(1)}, Rat(1)}}, 1);
    CHECK(c.size() == 2);
    CHECK(c.ambient_dim() == 2);
  }
  SECTION("two parallel affine hyperplanes") {
    Arrangement c = cone({{{Rat(1)}, Rat(1)}, {{Rat(1)}, Rat(-1)}}, 1);
    CHECK(c.size() == 3);
  }
  SECTION("zero normal rejected") {
    CHECK_THROWS_AS(cone({{{Rat(0)}, Rat(1)}}, 1), ZeroNormalError);
  }
}

TEST_CASE("lattice and polynomial invariants on a random corpus") {
  auto corpus = random_corpus(60, 123u);
  for (const auto& a : corpus) {
    auto lat = lattice_of(a);
    auto [chi, chi0] = char_poly(a);

    // level-1 flats and the subleading coefficient
    if (!a.empty()) {
      CHECK(static_cast<int>(lat->levels[1].size()) == a.size());
      CHECK(chi.coeff(a.ambient_dim() - 1) == -Int(a.size()));
    }

    // sign alternation of the Mobius function
    for (size_t k = 0; k < lat->levels.size(); ++k)
      for (const auto& lf : lat->levels[k]) {
        Int signed_mu = (k % 2 == 0) ? lf.mu : -lf.mu;
        CHECK(signed_mu > 0);
      }

    // whitney oracle agreement
    CHECK(chi == char_poly_whitney(a));

    // deletion-restriction
    for (int h = 0; h < a.size(); ++h) {
      CharPoly lhs = char_poly(a.deleted(h)).first - char_poly(restriction(a, h).arr).first;
      CHECK(chi == lhs);
    }

    // essentialization identity
    EssentialPart ess = essential_part(a);
    CharPoly t_power = CharPoly::t_power(a.ambient_dim() - a.rank());
    CHECK(chi == char_poly(ess.arr).first * t_power);
  }
}

TEST_CASE("localization and restriction commute") {
  auto corpus = random_corpus(25, 321u);
  corpus.push_back(braid_arrangement(4));
  corpus.push_back(generic4());
  for (const auto& a : corpus) {
    for (int h = 0; h < a.size(); ++h) {
      Restriction res = restriction(a, h);
      auto rlat = lattice_of(res.arr);
      for (const auto& level : rlat->levels) {
        for (const auto& lf : level) {
          // localization of A at the flat, through the trace origins
          std::vector<int> loc{h};
          for (int j : lf.atoms)
            for (int orig : res.origins[static_cast<size_t>(j)]) loc.push_back(orig);
          std::sort(loc.begin(), loc.end());
          Arrangement ax = a.subset(loc);
          Arrangement lhs = restriction(ax, *ax.index_of(a[h])).arr;   // (A_X)^H
          Arrangement rhs = res.arr.subset(lf.atoms);                  // (A^H)_X
          CHECK(same_arrangement(lhs, rhs));
        }
      }
    }
  }
}

TEST_CASE("lattice cache shares results") {
  LatticeCache cache;
  Arrangement a = braid_arrangement(3);
  auto p1 = cache.get_or_build(a);
  // same hyperplanes in a different order hit the same entry
  Arrangement b(3, {a[2], a[0], a[1]});
  auto p2 = cache.get_or_build(b);
  CHECK(p1.get() == p2.get());
}

TEST_CASE("lattice cache under concurrent access") {
  LatticeCache cache;
  auto corpus = random_corpus(24, 2024u);
  std::vector<std::thread> workers;
  std::atomic<bool> bad{false};
  for (int w = 0; w < 4; ++w) {
    workers.emplace_back([&, w] {
      for (size_t i = static_cast<size_t>(w); i < corpus.size(); i += 2) {
        auto lat = cache.get_or_build(corpus[i]);
        if (lat->num_hyperplanes != corpus[i].size()) bad = true;
        if (!(lat->characteristic_polynomial() == char_poly_whitney(corpus[i]))) bad = true;
      }
    });
  }
  for (auto& t : workers) t.join();
  CHECK(!bad.load());
}

TEST_CASE("restriction index bounds") {
  CHECK_THROWS_AS(restriction(braid_arrangement(3), 7), IndexOutOfRangeError);
  CHECK_THROWS_AS(braid_arrangement(3).deleted(-1), IndexOutOfRangeError);
}
