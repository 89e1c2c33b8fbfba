#include <catch2/catch_amalgamated.hpp>

#include "chainfam/constructions.hpp"
#include "chainfam/core.hpp"
#include "chainfam/predicates.hpp"
#include "chainfam/search.hpp"
#include "chainfam/weights.hpp"

using namespace chainfam;

namespace {

// Full enumeration of all families over 2^[n]; keeps the search honest at
// tiny n. Uses oracle_check so both the search path and the predicate
// reduction stay out of the loop.
BigCount naive_max_family(int n, const PropertySpec& prop) {
  const int N = 1 << n;
  int best = 0;
  for (unsigned long long bits = 0; bits < (1ull << N); ++bits) {
    int size = std::popcount(bits);
    if (size <= best) continue;
    std::vector<SetMask> ms;
    for (int m = 0; m < N; ++m)
      if ((bits >> m) & 1) ms.push_back((SetMask)m);
    if (oracle_check(SetFamily::of(n, ms), prop).satisfied) best = size;
  }
  return best;
}

// Exhaustive max-weight valid subfamily of a small ground.
Rational naive_max_weight(const WeightedGround& g, const PropertySpec& prop) {
  const auto& ms = g.members.members;
  REQUIRE(ms.size() <= 16);
  Rational best = 0;
  for (unsigned bits = 0; bits < (1u << ms.size()); ++bits) {
    std::vector<SetMask> sub;
    Rational w = 0;
    for (std::size_t i = 0; i < ms.size(); ++i)
      if ((bits >> i) & 1) {
        sub.push_back(ms[i]);
        w += g.member_weight(ms[i]);
      }
    if (w > best && check(SetFamily::of(g.n, sub), prop).satisfied) best = w;
  }
  return best;
}

}  // namespace

TEST_CASE("exact family search anchors") {
  SECTION("plain (1,1) at n=4: the intersecting maximum is 8") {
    auto res = max_family_exact(4, PropertySpec::chain_intersect(Mode::Plain, 1, 1));
    CHECK(res.optimum == 8);
    CHECK(res.exhaustive);
    CHECK(res.witness.size() == 8);
  }
  SECTION("total (2,2) at n=3: half the power set") {
    auto res = max_family_exact(3, PropertySpec::chain_intersect(Mode::Total, 2, 2));
    CHECK(res.optimum == 4);
  }
  SECTION("strong (2,2) at n=4 attains max(|R1|,|R2|) = 11") {
    auto res = max_family_exact(4, PropertySpec::chain_intersect(Mode::Strong, 2, 2));
    CHECK(res.optimum == 11);
    CHECK(res.optimum == extremal_formula(4, Mode::Strong, 2, 2).maximum);
  }
  SECTION("witnesses re-validate") {
    for (const char* prop_str : {"plain:2,1", "strong:2,2", "total:2,2", "ksperner:2", "ccpf:2"}) {
      PropertySpec prop = parse_property(prop_str);
      auto res = max_family_exact(4, prop);
      CHECK(check(res.witness, prop).satisfied);
      CHECK(BigCount(res.witness.size()) == res.optimum);
    }
  }
}

TEST_CASE("search equals naive enumeration at tiny n") {
  const PropertySpec props[] = {
      PropertySpec::chain_intersect(Mode::Plain, 1, 1),
      PropertySpec::chain_intersect(Mode::Plain, 2, 1),
      PropertySpec::chain_intersect(Mode::Strong, 2, 2),
      PropertySpec::chain_intersect(Mode::Total, 2, 2),
      PropertySpec::ksperner(1),
      PropertySpec::ccpf(2),
  };
  for (int n = 2; n <= 3; ++n)
    for (const auto& prop : props) {
      INFO("n=" << n << " property " << to_string(prop));
      CHECK(max_family_exact(n, prop).optimum == naive_max_family(n, prop));
    }
}

TEST_CASE("determinism: identical runs give identical witnesses") {
  PropertySpec prop = PropertySpec::chain_intersect(Mode::Strong, 2, 2);
  auto a = max_family_exact(4, prop);
  auto b = max_family_exact(4, prop);
  CHECK(a.witness == b.witness);
  CHECK(a.optimum == b.optimum);
}

TEST_CASE("budget truncation yields a valid lower bound") {
  Budget tiny;
  tiny.max_nodes = 50;
  auto res = max_family_exact(5, PropertySpec::chain_intersect(Mode::Plain, 1, 1), tiny);
  CHECK_FALSE(res.exhaustive);
  CHECK(res.optimum <= 16);
  CHECK(check(res.witness, PropertySpec::intersecting()).satisfied);
}

TEST_CASE("ground search anchors") {
  SECTION("circle(4) under ccpf(2) reaches the upper-three-levels weight 11") {
    auto res = max_weight_on_ground(circle_ground(4), PropertySpec::ccpf(2));
    CHECK(res.optimum == 11);
    CHECK(res.exhaustive);
  }
  SECTION("circle(3) under plain (1,1) reaches 4") {
    auto res = max_weight_on_ground(circle_ground(3),
                                    PropertySpec::chain_intersect(Mode::Plain, 1, 1));
    CHECK(res.optimum == 4);
  }
  SECTION("heaviest antichain in the chain-pair at n=3") {
    auto res = max_weight_on_ground(chain_pair_ground(3, identity_ordering(3)),
                                    PropertySpec::ksperner(1));
    CHECK(res.optimum == 3);
  }
}

TEST_CASE("ground search equals exhaustive subset enumeration on small grounds") {
  const PropertySpec props[] = {
      PropertySpec::chain_intersect(Mode::Plain, 1, 1),
      PropertySpec::chain_intersect(Mode::Strong, 2, 2),
      PropertySpec::chain_intersect(Mode::Total, 2, 2),
      PropertySpec::ksperner(1),
      PropertySpec::ccpf(1),
      PropertySpec::ccpf(2),
  };
  for (const auto& prop : props) {
    INFO("property " << to_string(prop));
    WeightedGround c4 = circle_ground(4);
    CHECK(max_weight_on_ground(c4, prop).optimum == naive_max_weight(c4, prop));
    WeightedGround cp4 = chain_pair_ground(4, identity_ordering(4));
    CHECK(max_weight_on_ground(cp4, prop).optimum == naive_max_weight(cp4, prop));
  }
}

TEST_CASE("ground optimum dominates valid constructions and bounds the search") {
  // circle optimum >= weight of any valid construction restricted to the
  // circle, and floor(circle optimum) >= exact family optimum
  for (int n = 3; n <= 5; ++n) {
    const PropertySpec props[] = {
        PropertySpec::chain_intersect(Mode::Plain, 2, 1),
        PropertySpec::chain_intersect(Mode::Strong, 2, 2),
        PropertySpec::ccpf(2),
    };
    for (const auto& prop : props) {
      WeightedGround circle = circle_ground(n);
      auto ground = max_weight_on_ground(circle, prop);
      auto exact = max_family_exact(n, prop);
      BigCount floor_w = numerator(ground.optimum) / denominator(ground.optimum);
      INFO("n=" << n << " property " << to_string(prop));
      CHECK(exact.optimum <= floor_w);
    }
  }
}

TEST_CASE("certificates") {
  SECTION("plain (1,1) at n=5 matches at 16") {
    Certificate c = certify(5, PropertySpec::chain_intersect(Mode::Plain, 1, 1));
    CHECK(c.matched);
    CHECK(c.lower == 16);
    CHECK(c.upper == 16);
    CHECK(c.hereditary_checked);
  }
  SECTION("total (2,2) at n=4 matches at 8") {
    Certificate c = certify(4, PropertySpec::chain_intersect(Mode::Total, 2, 2));
    CHECK(c.matched);
    CHECK(c.lower == 8);
  }
  SECTION("plain (2,1) at n=5 matches at 20") {
    Certificate c = certify(5, PropertySpec::chain_intersect(Mode::Plain, 2, 1));
    CHECK(c.matched);
    CHECK(c.lower == 20);
  }
  SECTION("lower bound never exceeds upper bound") {
    for (int n = 2; n <= 5; ++n)
      for (const char* p : {"plain:1,1", "strong:2,2", "ksperner:2", "ccpf:2", "intersecting"}) {
        Certificate c = certify(n, parse_property(p));
        INFO("n=" << n << " " << p);
        CHECK(c.lower <= c.upper);
        CHECK(c.matched == (c.lower == c.upper));
        if (c.lower_witness) CHECK(check(*c.lower_witness, parse_property(p)).satisfied);
      }
  }
  SECTION("certify at n=7 uses the circle bound only") {
    Certificate c = certify(7, PropertySpec::chain_intersect(Mode::Plain, 1, 1));
    CHECK(c.upper_method == "circle-ground");
    CHECK(c.lower == 64);
    CHECK(c.matched);  // 2^{n-1} on both sides
  }
}
