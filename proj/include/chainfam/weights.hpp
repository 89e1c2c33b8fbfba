#pragma once

// The two permutation-method grounds, materialized with exact rational
// weights: the chain-pair (a full chain plus the complements of its members)
// and the circle (all cyclic intervals). The weight of a ground member F is
// binom(n,|F|)/g_{|F|} with g_i the number of ground members of size i.

#include <numeric>
#include <string>
#include <vector>

#include "chainfam/core.hpp"

namespace chainfam {

enum class GroundKind { ChainPair, Circle };

struct WeightedGround {
  int n = 0;
  GroundKind kind = GroundKind::Circle;
  SetFamily members;            // sorted canonically
  std::vector<int> level_count; // g_i, indexed by size 0..n
  std::vector<int> ordering;    // chain-pair only: the generating permutation

  Rational member_weight(SetMask m) const {
    int pc = popcount(m);
    return Rational(binom(n, pc), level_count[pc]);
  }

  // Scale factor turning every member weight into an integer.
  long long weight_scale() const {
    long long s = 1;
    for (int g : level_count)
      if (g > 0) s = std::lcm(s, (long long)g);
    return s;
  }
};

// All cyclic intervals of [n], including the empty set and [n] itself.
// n(n-1)+2 members; g_0 = g_n = 1, g_i = n otherwise.
inline WeightedGround circle_ground(int n) {
  if (n < 2) throw std::invalid_argument("circle ground needs n >= 2");
  require_ground_set(n);
  std::vector<SetMask> ms{0, full_mask(n)};
  for (int start = 0; start < n; ++start)
    for (int len = 1; len < n; ++len) {
      SetMask m = 0;
      for (int t = 0; t < len; ++t) m |= SetMask{1} << ((start + t) % n);
      ms.push_back(m);
    }
  WeightedGround g;
  g.n = n;
  g.kind = GroundKind::Circle;
  g.members = SetFamily::of(n, std::move(ms));
  g.level_count.assign(n + 1, n);
  g.level_count[0] = g.level_count[n] = 1;
  return g;
}

// The full chain induced by `ordering` together with the complements of its
// members: 2n distinct sets; g_0 = g_n = 1, g_i = 2 otherwise.
inline WeightedGround chain_pair_ground(int n, const std::vector<int>& ordering) {
  if (n < 2) throw std::invalid_argument("chain-pair ground needs n >= 2");
  require_ground_set(n);
  if ((int)ordering.size() != n) throw std::invalid_argument("ordering must be a permutation of [n]");
  std::vector<char> seen(n + 1, 0);
  for (int e : ordering) {
    if (e < 1 || e > n || seen[e]) throw std::invalid_argument("ordering must be a permutation of [n]");
    seen[e] = 1;
  }
  std::vector<SetMask> ms;
  SetMask cur = 0;
  ms.push_back(cur);
  for (int e : ordering) {
    cur |= SetMask{1} << (e - 1);
    ms.push_back(cur);
  }
  std::size_t chain_len = ms.size();
  for (std::size_t i = 0; i < chain_len; ++i) {
    SetMask c = complement(ms[i], n);
    bool dup = false;
    for (SetMask m : ms)
      if (m == c) { dup = true; break; }
    if (!dup) ms.push_back(c);
  }
  WeightedGround g;
  g.n = n;
  g.kind = GroundKind::ChainPair;
  g.members = SetFamily::of(n, std::move(ms));
  g.level_count.assign(n + 1, 2);
  g.level_count[0] = g.level_count[n] = 1;
  g.ordering = ordering;
  return g;
}

inline std::vector<int> identity_ordering(int n) {
  std::vector<int> o(n);
  std::iota(o.begin(), o.end(), 1);
  return o;
}

// Exact rational weight of a subfamily of the ground.
inline Rational weight_of(const WeightedGround& g, const SetFamily& sub) {
  if (sub.n != g.n) throw std::invalid_argument("weight_of: mismatched ground sets");
  Rational total = 0;
  for (SetMask m : sub.members) {
    if (!g.members.contains(m))
      throw std::invalid_argument("weight_of: set '" + format_set(m) + "' not in the ground");
    total += g.member_weight(m);
  }
  return total;
}

// The n chain-pairs obtained by rotating the identity interval chain: C_i
// replaces each interval [a,b] by [a+i,b+i] (mod n). All members are circle
// intervals.
inline std::vector<WeightedGround> rotated_chain_pairs(int n) {
  std::vector<WeightedGround> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    std::vector<int> ordering(n);
    for (int k = 0; k < n; ++k) ordering[k] = (k + i) % n + 1;
    out.push_back(chain_pair_ground(n, ordering));
  }
  return out;
}

// Per-interval cover counts over the n rotated chain-pairs. Proper nonempty
// intervals must be covered exactly twice; the empty set and [n] by all n.
struct DoubleCoverReport {
  int n = 0;
  bool ok = true;
  std::vector<SetMask> intervals;
  std::vector<int> cover_count;
};

inline DoubleCoverReport double_cover_check(int n) {
  WeightedGround circle = circle_ground(n);
  auto pairs = rotated_chain_pairs(n);
  DoubleCoverReport rep;
  rep.n = n;
  for (SetMask m : circle.members.members) {
    int cnt = 0;
    for (const auto& cp : pairs)
      if (cp.members.contains(m)) ++cnt;
    int want = (m == 0 || m == full_mask(n)) ? n : 2;
    rep.intervals.push_back(m);
    rep.cover_count.push_back(cnt);
    if (cnt != want) rep.ok = false;
  }
  return rep;
}

// Family file format with a per-line rational weight column.
inline std::string serialize_ground(const WeightedGround& g) {
  std::string out = "n " + std::to_string(g.n) + "\n";
  for (SetMask m : g.members.members) {
    Rational w = g.member_weight(m);
    out += format_set(m) + " w=" + numerator(w).str() + "/" + denominator(w).str() + "\n";
  }
  return out;
}

}  // namespace chainfam
