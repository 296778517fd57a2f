#include <catch2/catch_amalgamated.hpp>

#include "arrangefree/rootsys.hpp"
#include "corpus.hpp"

using namespace arrangefree;

TEST_CASE("positive root construction and closed-form counts") {
  CHECK(positive_roots(RootType::A, 2).num_positive() == 3);
  CHECK(positive_roots(RootType::A, 4).num_positive() == 10);
  CHECK(positive_roots(RootType::B, 2).num_positive() == 4);
  CHECK(positive_roots(RootType::B, 3).num_positive() == 9);
  CHECK(positive_roots(RootType::C, 3).num_positive() == 9);
  CHECK(positive_roots(RootType::D, 4).num_positive() == 12);
  CHECK(positive_roots(RootType::G2, 2).num_positive() == 6);
  CHECK(positive_roots(RootType::F4, 4).num_positive() == 24);
  CHECK(positive_roots(RootType::E6, 6).num_positive() == 36);
  CHECK(positive_roots(RootType::E7, 7).num_positive() == 63);
  CHECK(positive_roots(RootType::E8, 8).num_positive() == 120);

  SECTION("B2 realization") {
    RootSystem b2 = positive_roots(RootType::B, 2);
    std::vector<std::vector<Int>> expect = {
        {Int(1), Int(0)}, {Int(0), Int(1)}, {Int(1), Int(-1)}, {Int(1), Int(1)}};
    for (const auto& e : expect)
      CHECK(std::find(b2.positive_roots.begin(), b2.positive_roots.end(), e) !=
            b2.positive_roots.end());
  }
  SECTION("invalid type/rank combinations") {
    CHECK_THROWS_AS(positive_roots(RootType::A, 0), InvalidTypeRankError);
    CHECK_THROWS_AS(positive_roots(RootType::B, 1), InvalidTypeRankError);
    CHECK_THROWS_AS(positive_roots(RootType::D, 2), InvalidTypeRankError);
    CHECK_THROWS_AS(positive_roots(RootType::G2, 3), InvalidTypeRankError);
    CHECK_THROWS_AS(positive_roots(RootType::E6, 7), InvalidTypeRankError);
  }
}

TEST_CASE("lower ideals") {
  RootSystem a2 = positive_roots(RootType::A, 2);
  SECTION("literal closure check") {
    CHECK(is_lower_ideal(a2, {}));
    std::vector<int> all;
    for (int i = 0; i < a2.num_positive(); ++i) all.push_back(i);
    CHECK(is_lower_ideal(a2, all));
    // the highest root alone is not downward closed
    int highest = 0;
    for (int i = 0; i < a2.num_positive(); ++i)
      if (a2.height(i) > a2.height(highest)) highest = i;
    CHECK(!is_lower_ideal(a2, {highest}));
  }
  SECTION("enumeration counts") {
    CHECK(enumerate_lower_ideals(positive_roots(RootType::A, 1)).size() == 2);
    CHECK(enumerate_lower_ideals(a2).size() == 5);
    CHECK(enumerate_lower_ideals(positive_roots(RootType::B, 2)).size() == 6);
    CHECK(enumerate_lower_ideals(positive_roots(RootType::G2, 2)).size() == 8);
    CHECK(enumerate_lower_ideals(positive_roots(RootType::A, 3)).size() == 14);
  }
  SECTION("every enumerated subset is downward closed") {
    for (const auto& ideal : enumerate_lower_ideals(positive_roots(RootType::B, 2)))
      CHECK(is_lower_ideal(positive_roots(RootType::B, 2), ideal));
  }
  SECTION("size guard") {
    CHECK_THROWS_AS(enumerate_lower_ideals(positive_roots(RootType::E6, 6)), TooLargeError);
  }
}

TEST_CASE("weyl arrangements") {
  Arrangement a2 = weyl_arrangement(positive_roots(RootType::A, 2));
  CHECK(a2.size() == 3);
  CHECK(a2.ambient_dim() == 3);
  CHECK(same_arrangement(a2, testcorpus::braid_arrangement(3)));

  CHECK(weyl_arrangement(positive_roots(RootType::A, 1)).size() == 1);

  Arrangement b2 = weyl_arrangement(positive_roots(RootType::B, 2));
  CHECK(b2.size() == 4);
  CHECK(b2.ambient_dim() == 2);
}

TEST_CASE("shi and catalan families") {
  RootSystem a2 = positive_roots(RootType::A, 2);
  CHECK(build_family(a2, DeformationFamily::Shi, 1).size() == 7);
  CHECK(build_family(a2, DeformationFamily::Catalan, 1).size() == 10);
  CHECK(build_family(positive_roots(RootType::A, 1), DeformationFamily::Shi, 1).size() == 3);

  SECTION("hyperplane counts match the closed forms") {
    for (auto [type, rank] : std::vector<std::pair<RootType, int>>{{RootType::A, 2},
                                                                   {RootType::A, 3},
                                                                   {RootType::B, 2},
                                                                   {RootType::B, 3},
                                                                   {RootType::C, 3},
                                                                   {RootType::D, 3},
                                                                   {RootType::G2, 2}}) {
      RootSystem rs = positive_roots(type, rank);
      for (int m = 1; m <= 2; ++m) {
        CHECK(build_family(rs, DeformationFamily::Shi, m).size() == 2 * m * rs.num_positive() + 1);
        CHECK(build_family(rs, DeformationFamily::Catalan, m).size() ==
              (2 * m + 1) * rs.num_positive() + 1);
      }
    }
  }
}

TEST_CASE("ideal deformations of the Shi arrangement") {
  RootSystem a2 = positive_roots(RootType::A, 2);
  std::vector<int> all;
  for (int i = 0; i < a2.num_positive(); ++i) all.push_back(i);

  SECTION("extreme ideals recover Catalan and Shi") {
    CHECK(same_arrangement(ideal_shi(a2, 1, all, IdealSign::Plus),
                           build_family(a2, DeformationFamily::Catalan, 1)));
    CHECK(same_arrangement(ideal_shi(a2, 1, {}, IdealSign::Minus),
                           build_family(a2, DeformationFamily::Shi, 1)));
    CHECK(same_arrangement(ideal_shi(a2, 1, {}, IdealSign::Plus),
                           build_family(a2, DeformationFamily::Shi, 1)));
    CHECK(ideal_shi(a2, 1, all, IdealSign::Minus).size() == 4);
  }
  SECTION("non-ideal subsets are rejected") {
    int highest = 0;
    for (int i = 0; i < a2.num_positive(); ++i)
      if (a2.height(i) > a2.height(highest)) highest = i;
    CHECK_THROWS_AS(ideal_shi(a2, 1, {highest}, IdealSign::Plus), NotALowerIdealError);
  }
  SECTION("deformation sandwich for every ideal") {
    for (auto [type, rank] :
         std::vector<std::pair<RootType, int>>{{RootType::A, 2}, {RootType::B, 2}}) {
      RootSystem rs = positive_roots(type, rank);
      Arrangement shi = build_family(rs, DeformationFamily::Shi, 1);
      for (const auto& ideal : enumerate_lower_ideals(rs)) {
        Arrangement minus = ideal_shi(rs, 1, ideal, IdealSign::Minus);
        Arrangement plus = ideal_shi(rs, 1, ideal, IdealSign::Plus);
        CHECK(minus.size() == shi.size() - static_cast<int>(ideal.size()));
        CHECK(plus.size() == shi.size() + static_cast<int>(ideal.size()));
        for (const auto& h : minus.hyperplanes()) CHECK(shi.contains(h));
        for (const auto& h : shi.hyperplanes()) CHECK(plus.contains(h));
      }
    }
  }
}
