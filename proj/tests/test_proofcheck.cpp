#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "chainfam/constructions.hpp"
#include "chainfam/core.hpp"
#include "chainfam/proofcheck.hpp"
#include "chainfam/search.hpp"

using namespace chainfam;

namespace {
SetFamily fam(int n, std::vector<SetMask> ms) { return SetFamily::of(n, std::move(ms)); }
}

TEST_CASE("hilton bound check") {
  SECTION("simple holding instance") {
    auto res = hilton_check(fam(3, {0b001}), fam(3, {0b010, 0b100}));
    CHECK(res.status == HiltonResult::Status::Holds);
    CHECK(res.total == 3);
  }
  SECTION("hypothesis failure is reported, no bound claim") {
    auto res = hilton_check(fam(3, {0b001, 0b110}), fam(3, {}));
    CHECK(res.status == HiltonResult::Status::HypothesisFailed);
    CHECK(res.detail.find("first family") != std::string::npos);
    auto res2 = hilton_check(fam(3, {0b001}), fam(3, {0b011}));
    CHECK(res2.status == HiltonResult::Status::HypothesisFailed);
    CHECK(res2.detail.find("cross-Sperner") != std::string::npos);
  }
  SECTION("mismatched ground sets") {
    CHECK_THROWS_AS(hilton_check(fam(3, {}), fam(4, {})), std::invalid_argument);
  }
  SECTION("exhaustive at n=3: every hypothesis-satisfying pair obeys the bound") {
    int satisfying = 0;
    for (unsigned b1 = 0; b1 < 256; ++b1) {
      std::vector<SetMask> m1;
      for (SetMask m = 0; m < 8; ++m)
        if ((b1 >> m) & 1) m1.push_back(m);
      SetFamily f1 = fam(3, m1);
      if (!check(f1, PropertySpec::complement_free()).satisfied) continue;
      for (unsigned b2 = 0; b2 < 256; ++b2) {
        std::vector<SetMask> m2;
        for (SetMask m = 0; m < 8; ++m)
          if ((b2 >> m) & 1) m2.push_back(m);
        SetFamily f2 = fam(3, m2);
        auto res = hilton_check(f1, f2);
        if (res.status == HiltonResult::Status::HypothesisFailed) continue;
        ++satisfying;
        CHECK(res.status == HiltonResult::Status::Holds);
      }
    }
    CHECK(satisfying == 233);
  }
}

TEST_CASE("decomposition of totally (2,2)-chain-intersecting families") {
  SECTION("hand-checkable example") {
    Decomposition d = thm2_decompose(fam(3, {0b001, 0b011, 0b100}));  // {1},{1,2},{3}
    CHECK(d.input_valid);
    CHECK(d.isolated.members == std::vector<SetMask>{0b100});
    CHECK(d.g1.empty());
    CHECK(d.g2.members == std::vector<SetMask>{0b100});
    CHECK(d.f1.members == std::vector<SetMask>{0b001, 0b011});
    CHECK(d.all_claims_hold());
  }
  SECTION("star of the first element") {
    Decomposition d = thm2_decompose(build(ConstructionSpec::star(3)));
    CHECK(d.input_valid);
    CHECK(d.all_claims_hold());
    CHECK(d.f1.size() + d.g2.size() == 4);  // 2^{n-1}
  }
  SECTION("paired isolated members split between G1 and G2") {
    Decomposition d = thm2_decompose(fam(3, {0b100, 0b011}));  // {3} and its complement {1,2}
    CHECK(d.g1.size() == 1);
    CHECK(d.g2.size() == 1);
    CHECK(d.g1.members == std::vector<SetMask>{0b100});  // canonically smaller mask
    CHECK(d.all_claims_hold());
  }
  SECTION("invalid input reports the violation and the failing claim") {
    // two disjoint 2-chains: {1} < {1,2} and {3} < {3,2}? use disjoint bottoms
    Decomposition d = thm2_decompose(fam(4, {0b0001, 0b0011, 0b0100, 0b1100}));
    CHECK_FALSE(d.input_valid);
    REQUIRE(d.input_violation.has_value());
  }
  SECTION("exhaustive at n=3: claims hold for every valid family") {
    int valid_count = 0;
    for (unsigned bits = 0; bits < 256; ++bits) {
      std::vector<SetMask> ms;
      for (SetMask m = 0; m < 8; ++m)
        if ((bits >> m) & 1) ms.push_back(m);
      SetFamily f = fam(3, ms);
      if (!check(f, PropertySpec::chain_intersect(Mode::Total, 2, 2)).satisfied) continue;
      ++valid_count;
      Decomposition d = thm2_decompose(f);
      INFO(serialize_family(f));
      CHECK(d.input_valid);
      CHECK(d.all_claims_hold());
    }
    CHECK(valid_count > 50);
  }
  SECTION("random valid families at n=5") {
    std::mt19937 rng(271828);
    PropertySpec total22 = PropertySpec::chain_intersect(Mode::Total, 2, 2);
    for (int t = 0; t < 500; ++t) {
      // grow a random valid family greedily
      std::vector<SetMask> pool;
      for (SetMask m = 0; m <= full_mask(5); ++m) pool.push_back(m);
      std::shuffle(pool.begin(), pool.end(), rng);
      std::vector<SetMask> members;
      for (SetMask m : pool) {
        members.push_back(m);
        if (!check(SetFamily::of(5, members), total22).satisfied) members.pop_back();
        if (members.size() >= 12) break;
      }
      Decomposition d = thm2_decompose(SetFamily::of(5, members));
      CHECK(d.input_valid);
      CHECK(d.all_claims_hold());
    }
  }
}

TEST_CASE("threshold scan arithmetic") {
  SECTION("x and y at small parameters") {
    ThresholdReport rep = threshold_scan(2, 2, 8);
    const ThresholdRow& r4 = rep.rows[2];  // n = 4
    CHECK(r4.n == 4);
    CHECK(r4.x == 11);
    CHECK(r4.y == 6);
    CHECK(r4.x_gt_y);
    CHECK(rep.least_n_x_gt_y.has_value());
  }
  SECTION("y can dominate x: p=1, q=5") {
    ThresholdReport rep = threshold_scan(1, 5, 40);
    const ThresholdRow& r6 = rep.rows[4];  // n = 6
    CHECK(r6.x == 32);
    CHECK(r6.y == 56);
    CHECK_FALSE(r6.x_gt_y);
    REQUIRE(rep.least_n_x_gt_y.has_value());
    CHECK(*rep.least_n_x_gt_y == 36);
  }
  SECTION("x versus half the power set") {
    // p = 1: the upper-levels weight equals 2^{n-1} exactly; p >= 2 exceeds it
    ThresholdReport rep1 = threshold_scan(1, 2, 20);
    for (const auto& row : rep1.rows) {
      CHECK_FALSE(row.x_gt_half_powerset);
      CHECK(row.x == Rational(BigCount(1) << (row.n - 1)));
    }
    for (int p = 2; p <= 4; ++p) {
      ThresholdReport rep = threshold_scan(p, 2, 20);
      for (const auto& row : rep.rows) {
        INFO("p=" << p << " n=" << row.n);
        CHECK(row.x_gt_half_powerset);
      }
    }
  }
  SECTION("circle weight of the upper levels and the gap identity") {
    // odd n+p, n >= p: n*x == n*(circle weight of upper (n+p)/2 levels) + gap
    for (int p = 1; p <= 4; ++p) {
      ThresholdReport rep = threshold_scan(p, 2, 20);
      for (const auto& row : rep.rows) {
        if ((row.n + p) % 2 == 0) {
          CHECK_FALSE(row.circle_upper.has_value());
          // even case: x equals the upper-levels cardinality outright
          CHECK(row.x == Rational(upper_levels_cardinality(row.n, row.n + p)));
          continue;
        }
        REQUIRE(row.circle_upper.has_value());
        CHECK(*row.circle_upper == Rational(upper_levels_cardinality(row.n, row.n + p)));
        if (row.n >= p) {
          REQUIRE(row.identity_holds.has_value());
          CHECK(*row.identity_holds);
          CHECK(Rational(row.n) * row.x ==
                Rational(row.n) * *row.circle_upper + *row.gap_term);
        }
      }
    }
  }
  SECTION("rotation-sum comparison thresholds") {
    ThresholdReport rep = threshold_scan(2, 2, 20);
    REQUIRE(rep.least_n_rotation_closes.has_value());
    CHECK(*rep.least_n_rotation_closes == 7);
    ThresholdReport rep2 = threshold_scan(2, 1, 20);
    CHECK(*rep2.least_n_rotation_closes == 3);
    ThresholdReport rep3 = threshold_scan(3, 2, 20);
    CHECK(*rep3.least_n_rotation_closes == 10);
  }
  SECTION("middle-levels weight for y matches the best window") {
    // the canonical placement already maximizes; spot-check via explicit windows
    CHECK(chain_pair_middle_weight(6, 5) == 56);  // levels 1..4 or 2..5
    CHECK(chain_pair_middle_weight(4, 2) == 6);
    CHECK(chain_pair_middle_weight(5, 1) == 0);
    CHECK(chain_pair_middle_weight(2, 5) == 4);  // window clamps to the full cube
  }
  SECTION("scan bounds are validated") {
    CHECK_THROWS_AS(threshold_scan(0, 1, 10), std::invalid_argument);
    CHECK_THROWS_AS(threshold_scan(1, 1, 70), std::invalid_argument);
    CHECK_THROWS_AS(threshold_scan(1, 1, 1), std::invalid_argument);
  }
  SECTION("csv export shape") {
    std::string csv = threshold_csv(threshold_scan(2, 2, 6));
    CHECK(csv.find("n,x,y,rotation_bound,circle_upper,gap_term") == 0);
    CHECK(csv.find("4,11,6,") != std::string::npos);
  }
}

TEST_CASE("x equals the chain-pair weight of the search optimum shape") {
  // the chain-pair weight formula for x agrees with an explicit weight_of
  // computation on the materialized construction, at bitmask scale
  for (int p = 1; p <= 3; ++p)
    for (int n = 2; n <= 8; ++n) {
      Rational x = chain_pair_upper_weight(n, p);
      SetFamily upper = build(ConstructionSpec::upper(n, n + p));
      WeightedGround cp = chain_pair_ground(n, identity_ordering(n));
      std::vector<SetMask> inter;
      for (SetMask m : upper.members)
        if (cp.members.contains(m)) inter.push_back(m);
      CHECK(x == weight_of(cp, SetFamily::of(n, inter)));
    }
}
