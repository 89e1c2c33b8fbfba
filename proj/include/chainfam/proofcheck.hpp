#pragma once

// Mechanical verification of the proof steps behind the totally-(2,2) bound
// (maximal-and-minimal decomposition plus Hilton's inequality) and the
// chain-pair/circle weight arithmetic (x, y, rotation-sum bound, thresholds).

#include <optional>
#include <string>
#include <vector>

#include "chainfam/constructions.hpp"
#include "chainfam/core.hpp"
#include "chainfam/predicates.hpp"

namespace chainfam {

struct HiltonResult {
  enum class Status { Holds, BoundViolated, HypothesisFailed };
  Status status = Status::Holds;
  std::string detail;
  BigCount total;  // |F| + |F'| when the hypotheses hold
};

// Hilton: complement-free cross-Sperner families satisfy |F| + |F'| <= 2^{n-1}.
// When a hypothesis fails, reports which one and makes no inequality claim.
inline HiltonResult hilton_check(const SetFamily& f, const SetFamily& f2) {
  if (f.n != f2.n) throw std::invalid_argument("hilton_check: mismatched ground sets");
  HiltonResult res;
  if (!check(f, PropertySpec::complement_free()).satisfied) {
    res.status = HiltonResult::Status::HypothesisFailed;
    res.detail = "first family is not complement-free";
    return res;
  }
  if (!check(f2, PropertySpec::complement_free()).satisfied) {
    res.status = HiltonResult::Status::HypothesisFailed;
    res.detail = "second family is not complement-free";
    return res;
  }
  auto cs = check_cross_sperner(f, f2);
  if (!cs.satisfied) {
    res.status = HiltonResult::Status::HypothesisFailed;
    res.detail = "families are not cross-Sperner: " + format_set(cs.a) + " vs " + format_set(cs.b);
    return res;
  }
  res.total = BigCount(f.size()) + BigCount(f2.size());
  BigCount half = BigCount(1) << (f.n - 1);
  if (res.total <= half) {
    res.status = HiltonResult::Status::Holds;
    res.detail = res.total.str() + " <= " + half.str();
  } else {
    res.status = HiltonResult::Status::BoundViolated;
    res.detail = res.total.str() + " > " + half.str();
  }
  return res;
}

// The decomposition used to bound totally (2,2)-chain-intersecting families:
// G collects the members that are both maximal and minimal, G1 one
// representative per complement pair inside G, G2 = G \ G1, F1 = F \ G2.
struct Decomposition {
  SetFamily input;
  bool input_valid = true;                 // totally (2,2)-chain intersecting
  std::optional<Witness> input_violation;  // when not
  SetFamily isolated;  // G
  SetFamily g1, g2, f1;
  bool f1_complement_free = false;
  bool g2_complement_free = false;
  bool cross_sperner_ok = false;
  bool cardinality_additive = false;  // |F| = |F1| + |G2|
  bool bound_ok = false;              // |F1| + |G2| <= 2^{n-1} via hilton_check
  std::string first_failed_claim;

  bool all_claims_hold() const {
    return f1_complement_free && g2_complement_free && cross_sperner_ok &&
           cardinality_additive && bound_ok;
  }
};

// Runs even on invalid input, reporting which proof claim breaks; the
// representative of each complement pair is the canonically smaller mask.
inline Decomposition thm2_decompose(const SetFamily& f) {
  Decomposition d;
  d.input = f;
  auto pre = check(f, PropertySpec::chain_intersect(Mode::Total, 2, 2));
  d.input_valid = pre.satisfied;
  d.input_violation = pre.witness;

  ChainProfile pr = chain_profile(f);
  std::vector<SetMask> g;
  for (std::size_t i = 0; i < f.members.size(); ++i)
    if (pr.height[i] == 1 && pr.updepth[i] == 1) g.push_back(f.members[i]);
  d.isolated = SetFamily::of(f.n, g);

  std::vector<SetMask> g1, g2;
  for (SetMask m : d.isolated.members) {
    SetMask c = complement(m, f.n);
    if (d.isolated.contains(c)) {
      if (canonical_less(m, c)) g1.push_back(m);  // one representative per pair
    }
  }
  SetFamily g1f = SetFamily::of(f.n, g1);
  for (SetMask m : d.isolated.members)
    if (!g1f.contains(m)) g2.push_back(m);
  d.g1 = std::move(g1f);
  d.g2 = SetFamily::of(f.n, g2);

  std::vector<SetMask> f1;
  for (SetMask m : f.members)
    if (!d.g2.contains(m)) f1.push_back(m);
  d.f1 = SetFamily::of(f.n, f1);

  d.f1_complement_free = check(d.f1, PropertySpec::complement_free()).satisfied;
  d.g2_complement_free = check(d.g2, PropertySpec::complement_free()).satisfied;
  d.cross_sperner_ok = check_cross_sperner(d.f1, d.g2).satisfied;
  d.cardinality_additive = (d.f1.size() + d.g2.size() == f.size());
  auto hil = hilton_check(d.f1, d.g2);
  d.bound_ok = (hil.status == HiltonResult::Status::Holds);

  if (!d.f1_complement_free) d.first_failed_claim = "F1 complement-free";
  else if (!d.g2_complement_free) d.first_failed_claim = "G2 complement-free";
  else if (!d.cross_sperner_ok) d.first_failed_claim = "(F1,G2) cross-Sperner";
  else if (!d.cardinality_additive) d.first_failed_claim = "|F| = |F1| + |G2|";
  else if (!d.bound_ok) d.first_failed_claim = "|F1| + |G2| <= 2^{n-1} (" + hil.detail + ")";
  return d;
}

// ----- chain-pair / circle weight arithmetic -----

namespace detail {

// Chain-pair weight carried by one full level: both members for a proper
// level, weight 1 at the ends.
inline Rational cp_level_weight(long long n, long long i) {
  if (i < 0 || i > n) return 0;
  if (i == 0 || i == n) return 1;
  return Rational(binom(n, i));
}

inline Rational cp_window_weight(long long n, long long a, long long b) {
  Rational w = 0;
  for (long long i = std::max(a, 0LL); i <= std::min(b, n); ++i) w += cp_level_weight(n, i);
  return w;
}

inline long long floordiv(long long a, long long b) {
  long long q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

}  // namespace detail

// Chain-pair weight of the upper (n+p)/2 levels.
inline Rational chain_pair_upper_weight(long long n, long long p) {
  const long long s = n + p;
  const long long threshold = n - s / 2;
  Rational x = 0;
  for (long long i = std::max(threshold + 1, 0LL); i <= n; ++i) x += detail::cp_level_weight(n, i);
  if (s % 2 == 1 && threshold >= 1 && threshold <= n) x += Rational(binom(n, threshold), 2);
  return x;
}

// Chain-pair weight of q-1 middle levels: the canonical placement and the
// best placement are both evaluated and the larger is used.
inline Rational chain_pair_middle_weight(long long n, long long q) {
  const long long m = q - 1;
  if (m <= 0) return 0;
  const long long lo = detail::floordiv(n - m + 1, 2);
  Rational best = detail::cp_window_weight(n, lo, lo + m - 1);
  for (long long a = -m; a <= n; ++a)
    best = std::max(best, detail::cp_window_weight(n, a, a + m - 1));
  return best;
}

struct ThresholdRow {
  int n = 0;
  Rational x;               // chain-pair weight of the upper (n+p)/2 levels
  Rational y;               // chain-pair weight of the middle q-1 levels
  Rational rotation_bound;  // ((n-1)x + y + 2n - 4) / 2
  bool x_gt_y = false;
  bool x_gt_half_powerset = false;  // x > 2^{n-1}
  // fields below only populated when n + p is odd
  std::optional<Rational> circle_upper;  // circle weight of the upper (n+p)/2 levels
  std::optional<Rational> gap_term;      // (p-1) * binom(n, (n-p+1)/2) / 2
  std::optional<bool> rotation_closes;   // (n-1)x + y + 2n-4  <=  n x - (p-1) binom(n,(n-p+1)/2)
  std::optional<bool> identity_holds;    // n x == n * circle_upper + gap_term (needs n >= p)
};

struct ThresholdReport {
  int p = 1, q = 1, n_max = 2;
  std::vector<ThresholdRow> rows;  // n = 2 .. n_max
  std::optional<int> least_n_x_gt_y;
  std::optional<int> least_n_rotation_closes;
};

// Exact x/y arithmetic per n: where x first exceeds y, and whether the rotation-sum
// bound (n-1)x + y + 2n - 4 already certifies the circle target. The identity
// n*x = n*(circle weight of the upper levels) + gap holds for odd n+p once
// n >= p (below that the half level is empty and the gap term is vacuous).
inline ThresholdReport threshold_scan(int p, int q, int n_max) {
  if (p < 1 || q < 1) throw std::invalid_argument("threshold_scan: p,q must be >= 1");
  if (n_max < 2 || n_max > 64) throw std::invalid_argument("threshold_scan: n_max in [2,64]");
  ThresholdReport rep;
  rep.p = p; rep.q = q; rep.n_max = n_max;
  for (int n = 2; n <= n_max; ++n) {
    ThresholdRow row;
    row.n = n;
    row.x = chain_pair_upper_weight(n, p);
    row.y = chain_pair_middle_weight(n, q);
    row.rotation_bound = (Rational(n - 1) * row.x + row.y + 2 * n - 4) / 2;
    row.x_gt_y = row.x > row.y;
    row.x_gt_half_powerset = row.x > Rational(BigCount(1) << (n - 1));
    if ((n + p) % 2 == 1) {
      row.circle_upper = Rational(upper_levels_cardinality(n, n + p));
      BigCount half_binom = (n - p + 1 >= 0) ? binom(n, (n - p + 1) / 2) : BigCount(0);
      row.gap_term = Rational(BigCount(p - 1) * half_binom, 2);
      row.rotation_closes =
          Rational(n - 1) * row.x + row.y + 2 * n - 4 <= Rational(n) * row.x - (p - 1) * half_binom;
      if (n >= p)
        row.identity_holds =
            Rational(n) * row.x == Rational(n) * *row.circle_upper + *row.gap_term;
      if (*row.rotation_closes && !rep.least_n_rotation_closes) rep.least_n_rotation_closes = n;
    }
    if (row.x_gt_y && !rep.least_n_x_gt_y) rep.least_n_x_gt_y = n;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

// CSV with exact rationals in p/q text form; stable column set.
inline std::string threshold_csv(const ThresholdReport& rep) {
  std::string out =
      "n,x,y,rotation_bound,circle_upper,gap_term,x_gt_y,x_gt_half_powerset,rotation_closes,"
      "identity_holds\n";
  auto opt_rat = [](const std::optional<Rational>& r) { return r ? rational_str(*r) : ""; };
  auto opt_bool = [](const std::optional<bool>& b) { return b ? (*b ? "true" : "false") : ""; };
  for (const auto& row : rep.rows) {
    out += std::to_string(row.n) + "," + rational_str(row.x) + "," + rational_str(row.y) + "," +
           rational_str(row.rotation_bound) + "," + opt_rat(row.circle_upper) + "," +
           opt_rat(row.gap_term) + "," + (row.x_gt_y ? "true" : "false") + "," +
           (row.x_gt_half_powerset ? "true" : "false") + "," + opt_bool(row.rotation_closes) +
           "," + opt_bool(row.identity_holds) + "\n";
  }
  return out;
}

}  // namespace chainfam
