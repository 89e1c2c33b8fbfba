#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "chainfam/constructions.hpp"
#include "chainfam/core.hpp"
#include "chainfam/predicates.hpp"

using namespace chainfam;

namespace {

SetFamily fam(int n, std::vector<SetMask> ms) { return SetFamily::of(n, std::move(ms)); }

// index of a mask within the family's canonical member order
int idx_of(const SetFamily& f, SetMask m) {
  for (std::size_t i = 0; i < f.members.size(); ++i)
    if (f.members[i] == m) return (int)i;
  FAIL("mask not in family");
  return -1;
}

SetFamily random_family(std::mt19937& rng, int max_n, int max_size) {
  int n = 1 + (int)(rng() % max_n);
  std::vector<SetMask> pool;
  for (SetMask m = 0; m <= full_mask(n); ++m) pool.push_back(m);
  std::shuffle(pool.begin(), pool.end(), rng);
  int size = (int)(rng() % (max_size + 1));
  pool.resize(std::min<std::size_t>(pool.size(), size));
  return SetFamily::of(n, pool);
}

}  // namespace

TEST_CASE("chain profile heights and updepths") {
  SetFamily f = fam(3, {0b001, 0b011, 0b111, 0b010});  // {1},{1,2},{1,2,3},{2}
  ChainProfile pr = chain_profile(f);
  CHECK(pr.height[idx_of(f, 0b001)] == 1);
  CHECK(pr.height[idx_of(f, 0b011)] == 2);
  CHECK(pr.height[idx_of(f, 0b111)] == 3);
  CHECK(pr.height[idx_of(f, 0b010)] == 1);
  CHECK(pr.updepth[idx_of(f, 0b001)] == 3);
  CHECK(pr.updepth[idx_of(f, 0b011)] == 2);
  CHECK(pr.updepth[idx_of(f, 0b111)] == 1);
  CHECK(pr.updepth[idx_of(f, 0b010)] == 3);  // {2} < {1,2} < {1,2,3}

  SECTION("one full level is an antichain") {
    SetFamily level = enumerate_level(5, 2);
    ChainProfile lp = chain_profile(level);
    for (std::size_t i = 0; i < level.size(); ++i) {
      CHECK(lp.height[i] == 1);
      CHECK(lp.updepth[i] == 1);
    }
  }
  SECTION("a full chain") {
    SetFamily c = fam(2, {0, 0b01, 0b11});
    ChainProfile cp = chain_profile(c);
    CHECK(cp.height == std::vector<int>{1, 2, 3});
    CHECK(cp.updepth == std::vector<int>{3, 2, 1});
  }
  SECTION("height 1 iff minimal, updepth 1 iff maximal") {
    std::mt19937 rng(11);
    for (int t = 0; t < 200; ++t) {
      SetFamily g = random_family(rng, 5, 12);
      ChainProfile pg = chain_profile(g);
      for (std::size_t i = 0; i < g.size(); ++i) {
        bool minimal = true, maximal = true;
        for (std::size_t j = 0; j < g.size(); ++j) {
          if (i == j) continue;
          if ((g.members[j] & g.members[i]) == g.members[j]) minimal = false;
          if ((g.members[i] & g.members[j]) == g.members[i]) maximal = false;
        }
        CHECK((pg.height[i] == 1) == minimal);
        CHECK((pg.updepth[i] == 1) == maximal);
      }
    }
  }
}

TEST_CASE("property string round-trip") {
  for (const char* s : {"plain:2,2", "strong:2,3", "total:2,2", "ksperner:3", "ccpf:2",
                        "intersecting", "complement-free"}) {
    CHECK(to_string(parse_property(s)) == s);
  }
  CHECK_THROWS_AS(parse_property("plain:0,1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_property("plain:2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_property("weird"), std::invalid_argument);
}

TEST_CASE("chain-intersect checks with witnesses") {
  SECTION("plain (2,1) violation") {
    SetFamily f = fam(3, {0b001, 0b011, 0b100});  // {1},{1,2},{3}
    auto res = check(f, PropertySpec::chain_intersect(Mode::Plain, 2, 1));
    REQUIRE_FALSE(res.satisfied);
    REQUIRE(res.witness.has_value());
    CHECK(res.witness->chain_a == std::vector<SetMask>{0b001, 0b011});
    CHECK(res.witness->chain_b == std::vector<SetMask>{0b100});
    CHECK(witness_validates(f, PropertySpec::chain_intersect(Mode::Plain, 2, 1), *res.witness));
  }
  SECTION("the empty set alone violates (1,1): chains may coincide") {
    SetFamily f = fam(3, {0});
    auto res = check(f, PropertySpec::chain_intersect(Mode::Plain, 1, 1));
    REQUIRE_FALSE(res.satisfied);
    CHECK(res.witness->chain_a == std::vector<SetMask>{0});
    CHECK(res.witness->chain_b == std::vector<SetMask>{0});
  }
  SECTION("upper 2.5 levels at n=4 is intersecting") {
    CHECK(check(build(ConstructionSpec::upper(4, 5)), PropertySpec::intersecting()).satisfied);
  }
  SECTION("total (1,1) on two disjoint singletons") {
    SetFamily f = fam(2, {0b01, 0b10});
    CHECK_FALSE(check(f, PropertySpec::chain_intersect(Mode::Total, 1, 1)).satisfied);
  }
}

TEST_CASE("k-sperner and complement-pair properties") {
  SetFamily chain3 = fam(3, {0b001, 0b011, 0b111});
  CHECK(check(chain3, PropertySpec::ksperner(3)).satisfied);
  auto res = check(chain3, PropertySpec::ksperner(2));
  REQUIRE_FALSE(res.satisfied);
  CHECK(res.witness->chain_a.size() == 3);

  SetFamily with_pair = fam(3, {0b001, 0b110});
  CHECK_FALSE(check(with_pair, PropertySpec::complement_free()).satisfied);
  CHECK(check(with_pair, PropertySpec::ccpf(2)).satisfied);

  // a 2-chain together with its complements
  SetFamily ccp = fam(4, {0b0001, 0b0011, 0b1110, 0b1100});
  auto r2 = check(ccp, PropertySpec::ccpf(2));
  REQUIRE_FALSE(r2.satisfied);
  CHECK(witness_validates(ccp, PropertySpec::ccpf(2), *r2.witness));
  CHECK(check(ccp, PropertySpec::ccpf(3)).satisfied);
}

TEST_CASE("cross-sperner") {
  CHECK(check_cross_sperner(fam(3, {0b001}), fam(3, {0b010, 0b100})).satisfied);
  auto res = check_cross_sperner(fam(3, {0b001}), fam(3, {0b011}));
  CHECK_FALSE(res.satisfied);
  CHECK(res.a == 0b001);
  CHECK(res.b == 0b011);
  // containment includes equality
  CHECK_FALSE(check_cross_sperner(fam(3, {0b011}), fam(3, {0b011})).satisfied);
  CHECK_THROWS_AS(check_cross_sperner(fam(3, {0b001}), fam(4, {0b001})), std::invalid_argument);
}

TEST_CASE("oracle agrees with the threshold reduction") {
  std::mt19937 rng(2024);
  const PropertySpec props[] = {
      PropertySpec::chain_intersect(Mode::Plain, 1, 1),
      PropertySpec::chain_intersect(Mode::Plain, 2, 1),
      PropertySpec::chain_intersect(Mode::Plain, 2, 2),
      PropertySpec::chain_intersect(Mode::Plain, 3, 2),
      PropertySpec::chain_intersect(Mode::Strong, 1, 2),
      PropertySpec::chain_intersect(Mode::Strong, 2, 2),
      PropertySpec::chain_intersect(Mode::Strong, 3, 1),
      PropertySpec::chain_intersect(Mode::Total, 1, 1),
      PropertySpec::chain_intersect(Mode::Total, 2, 2),
      PropertySpec::chain_intersect(Mode::Total, 3, 3),
      PropertySpec::ksperner(1),
      PropertySpec::ksperner(2),
      PropertySpec::ccpf(1),
      PropertySpec::ccpf(2),
      PropertySpec::intersecting(),
      PropertySpec::complement_free(),
  };
  for (int t = 0; t < 1500; ++t) {
    SetFamily f = random_family(rng, 6, 12);
    for (const auto& prop : props) {
      auto fast = check(f, prop);
      auto slow = oracle_check(f, prop);
      INFO("property " << to_string(prop) << " on " << serialize_family(f));
      REQUIRE(fast.satisfied == slow.satisfied);
      if (!fast.satisfied) {
        CHECK(witness_validates(f, prop, *fast.witness));
        CHECK(witness_validates(f, prop, *slow.witness));
      }
    }
  }
}

TEST_CASE("properties are hereditary") {
  std::mt19937 rng(5);
  const PropertySpec props[] = {
      PropertySpec::chain_intersect(Mode::Plain, 2, 2),
      PropertySpec::chain_intersect(Mode::Strong, 2, 1),
      PropertySpec::chain_intersect(Mode::Total, 2, 2),
      PropertySpec::ksperner(2),
      PropertySpec::ccpf(2),
      PropertySpec::intersecting(),
  };
  int satisfied_seen = 0;
  for (int t = 0; t < 400; ++t) {
    SetFamily f = random_family(rng, 5, 10);
    for (const auto& prop : props) {
      if (!check(f, prop).satisfied) continue;
      ++satisfied_seen;
      std::vector<SetMask> sub;
      for (SetMask m : f.members)
        if (rng() & 1) sub.push_back(m);
      CHECK(check(SetFamily::of(f.n, sub), prop).satisfied);
    }
  }
  CHECK(satisfied_seen > 200);  // the test exercised real instances
}

TEST_CASE("mode implication chain, exhaustively at n=3") {
  // total => strong => plain for the same (p,q)
  for (int p = 1; p <= 2; ++p)
    for (int q = 1; q <= 2; ++q) {
      auto plain = PropertySpec::chain_intersect(Mode::Plain, p, q);
      auto strong = PropertySpec::chain_intersect(Mode::Strong, p, q);
      auto total = PropertySpec::chain_intersect(Mode::Total, p, q);
      bool strong_implied_by_plain_everywhere = true;
      for (unsigned bits = 0; bits < 256; ++bits) {
        std::vector<SetMask> ms;
        for (SetMask m = 0; m < 8; ++m)
          if ((bits >> m) & 1) ms.push_back(m);
        SetFamily f = SetFamily::of(3, ms);
        bool sp = check(f, plain).satisfied;
        bool ss = check(f, strong).satisfied;
        bool st = check(f, total).satisfied;
        if (st) CHECK(ss);
        if (ss) CHECK(sp);
        if (sp && !ss) strong_implied_by_plain_everywhere = false;
      }
      if (p == 2 && q == 2) CHECK_FALSE(strong_implied_by_plain_everywhere);
    }
}

TEST_CASE("height/updepth duality under complementation") {
  std::mt19937 rng(99);
  for (int t = 0; t < 300; ++t) {
    SetFamily f = random_family(rng, 5, 12);
    std::vector<SetMask> co;
    for (SetMask m : f.members) co.push_back(complement(m, f.n));
    SetFamily cf = SetFamily::of(f.n, co);
    ChainProfile pf = chain_profile(f);
    ChainProfile pc = chain_profile(cf);
    for (std::size_t i = 0; i < f.size(); ++i) {
      SetMask m = f.members[i];
      std::size_t j = 0;
      while (cf.members[j] != complement(m, f.n)) ++j;
      CHECK(pf.height[i] == pc.updepth[j]);
      CHECK(pf.updepth[i] == pc.height[j]);
    }
    // a plain violation in f is a bottom-anchored covering pair in the
    // complement family: u(~A) >= p, u(~B) >= q with ~A and ~B covering [n]
    int p = 1 + (int)(rng() % 3), q = 1 + (int)(rng() % 3);
    bool plain_viol = !check(f, PropertySpec::chain_intersect(Mode::Plain, p, q)).satisfied;
    bool dual = false;
    for (std::size_t a = 0; a < cf.size() && !dual; ++a)
      for (std::size_t b = 0; b < cf.size() && !dual; ++b)
        if (pc.updepth[a] >= p && pc.updepth[b] >= q &&
            (cf.members[a] | cf.members[b]) == full_mask(f.n))
          dual = true;
    CHECK(plain_viol == dual);
  }
}

TEST_CASE("oracle rejects oversized families") {
  std::vector<SetMask> ms;
  for (SetMask m = 0; m < 21; ++m) ms.push_back(m);
  CHECK_THROWS_AS(oracle_check(SetFamily::of(5, ms), PropertySpec::intersecting()),
                  std::invalid_argument);
}
