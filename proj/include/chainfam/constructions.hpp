#pragma once

// The named extremal constructions: upper z and z+1/2 levels, middle levels,
// the F_q(i) families (in both published and corrected readings), and the
// fixed-element star, together with closed-form cardinalities and the
// candidate-maximum reports used by the extremal formulas.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chainfam/core.hpp"

namespace chainfam {

enum class ConstructionKind { UpperLevels, MiddleLevels, Fq, Star };
enum class FqVariant { Literal, Corrected };
enum class Mode { Plain, Strong, Total };

inline std::string mode_name(Mode m) {
  switch (m) {
    case Mode::Plain: return "plain";
    case Mode::Strong: return "strong";
    default: return "total";
  }
}

// Half-levels are encoded by an integer count of halves: s = 2z is the upper
// z levels, s = 2z+1 adds the size-(n-z) sets containing fixed_element.
struct ConstructionSpec {
  ConstructionKind kind = ConstructionKind::UpperLevels;
  int n = 0;
  int halves = 0;        // UpperLevels
  int fixed_element = 1; // UpperLevels half level / Star
  int level_count = 0;   // MiddleLevels
  int q = 1;             // Fq
  int i = 1;             // Fq
  FqVariant variant = FqVariant::Corrected;

  static ConstructionSpec upper(int n, int halves, int fixed = 1) {
    ConstructionSpec s;
    s.kind = ConstructionKind::UpperLevels;
    s.n = n; s.halves = halves; s.fixed_element = fixed;
    return s;
  }
  static ConstructionSpec middle(int n, int m) {
    ConstructionSpec s;
    s.kind = ConstructionKind::MiddleLevels;
    s.n = n; s.level_count = m;
    return s;
  }
  static ConstructionSpec fq(int n, int q, int i, FqVariant v) {
    ConstructionSpec s;
    s.kind = ConstructionKind::Fq;
    s.n = n; s.q = q; s.i = i; s.variant = v;
    return s;
  }
  static ConstructionSpec star(int n, int element = 1) {
    ConstructionSpec s;
    s.kind = ConstructionKind::Star;
    s.n = n; s.fixed_element = element;
    return s;
  }
};

inline void validate(const ConstructionSpec& s) {
  require_ground_set(s.n);
  switch (s.kind) {
    case ConstructionKind::UpperLevels:
      if (s.halves < 0) throw std::invalid_argument("upper levels: halves must be >= 0");
      if (s.fixed_element < 1 || s.fixed_element > s.n)
        throw std::invalid_argument("upper levels: fixed element outside [1,n]");
      break;
    case ConstructionKind::MiddleLevels:
      if (s.level_count < 0 || s.level_count > s.n + 1)
        throw std::invalid_argument("middle levels: count outside [0,n+1]");
      break;
    case ConstructionKind::Fq:
      if (s.q < 1) throw std::invalid_argument("fq: q must be >= 1");
      if (s.i < 1 || s.i > s.n) throw std::invalid_argument("fq: i outside [1,n]");
      break;
    case ConstructionKind::Star:
      if (s.fixed_element < 1 || s.fixed_element > s.n)
        throw std::invalid_argument("star: element outside [1,n]");
      break;
  }
}

inline std::string to_string(const ConstructionSpec& s) {
  switch (s.kind) {
    case ConstructionKind::UpperLevels: {
      std::string t = "upper:n=" + std::to_string(s.n) + ",s=" + std::to_string(s.halves);
      if (s.fixed_element != 1) t += ",fixed=" + std::to_string(s.fixed_element);
      return t;
    }
    case ConstructionKind::MiddleLevels:
      return "middle:n=" + std::to_string(s.n) + ",m=" + std::to_string(s.level_count);
    case ConstructionKind::Fq:
      return "fq:n=" + std::to_string(s.n) + ",q=" + std::to_string(s.q) +
             ",i=" + std::to_string(s.i) +
             ",variant=" + (s.variant == FqVariant::Literal ? "literal" : "corrected");
    default:
      return "star:n=" + std::to_string(s.n) + ",elem=" + std::to_string(s.fixed_element);
  }
}

inline ConstructionSpec parse_construction(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("construction spec needs 'kind:...'");
  std::string kind = text.substr(0, colon);
  std::map<std::string, std::string> kv;
  std::string rest = text.substr(colon + 1);
  std::size_t pos = 0;
  while (pos < rest.size()) {
    auto comma = rest.find(',', pos);
    std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("construction spec: expected key=value, got '" + item + "'");
    kv[item.substr(0, eq)] = item.substr(eq + 1);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  auto geti = [&](const std::string& key, std::optional<int> def = std::nullopt) {
    auto it = kv.find(key);
    if (it == kv.end()) {
      if (def) return *def;
      throw std::invalid_argument("construction spec: missing '" + key + "'");
    }
    return std::stoi(it->second);
  };
  ConstructionSpec s;
  if (kind == "upper") {
    s = ConstructionSpec::upper(geti("n"), geti("s"), geti("fixed", 1));
  } else if (kind == "middle") {
    s = ConstructionSpec::middle(geti("n"), geti("m"));
  } else if (kind == "fq") {
    auto it = kv.find("variant");
    if (it == kv.end()) throw std::invalid_argument("construction spec: missing 'variant'");
    FqVariant v;
    if (it->second == "literal") v = FqVariant::Literal;
    else if (it->second == "corrected") v = FqVariant::Corrected;
    else throw std::invalid_argument("construction spec: variant must be literal|corrected");
    s = ConstructionSpec::fq(geti("n"), geti("q"), geti("i"), v);
  } else if (kind == "star") {
    s = ConstructionSpec::star(geti("n"), geti("elem", 1));
  } else {
    throw std::invalid_argument("unknown construction kind '" + kind + "'");
  }
  validate(s);
  return s;
}

namespace detail {
// Fq level range [lo, i]; lower end clamped at 0.
inline int fq_level_lo(const ConstructionSpec& s) {
  int lo = s.i - s.q + (s.variant == FqVariant::Corrected ? 2 : 1);
  return lo < 0 ? 0 : lo;
}
}  // namespace detail

inline SetFamily build(const ConstructionSpec& s) {
  validate(s);
  const int n = s.n;
  std::vector<SetMask> out;
  const SetMask fixed_bit =
      (s.kind == ConstructionKind::UpperLevels || s.kind == ConstructionKind::Star)
          ? (SetMask{1} << (s.fixed_element - 1))
          : 0;
  switch (s.kind) {
    case ConstructionKind::UpperLevels: {
      const int threshold = n - s.halves / 2;  // sizes strictly above this
      for (SetMask m = 0; m <= full_mask(n); ++m) {
        int pc = popcount(m);
        if (pc > threshold) out.push_back(m);
        else if (s.halves % 2 == 1 && pc == threshold && (m & fixed_bit)) out.push_back(m);
        if (m == full_mask(n)) break;
      }
      break;
    }
    case ConstructionKind::MiddleLevels: {
      if (s.level_count == 0) break;
      const int lo = (n - s.level_count + 1) / 2;
      const int hi = (n + s.level_count - 1) / 2;
      for (SetMask m = 0;; ++m) {
        int pc = popcount(m);
        if (pc >= lo && pc <= hi) out.push_back(m);
        if (m == full_mask(n)) break;
      }
      break;
    }
    case ConstructionKind::Fq: {
      const int lo = detail::fq_level_lo(s);
      for (SetMask m = 0;; ++m) {
        int pc = popcount(m);
        bool star_part = (m & 1) && pc <= s.i;
        bool level_part = pc >= lo && pc <= s.i;
        if (star_part || level_part) out.push_back(m);
        if (m == full_mask(n)) break;
      }
      break;
    }
    case ConstructionKind::Star: {
      for (SetMask m = 0;; ++m) {
        if (m & fixed_bit) out.push_back(m);
        if (m == full_mask(n)) break;
      }
      break;
    }
  }
  return SetFamily::of(n, std::move(out));
}

// Cardinality of the upper-halves construction as a pure binomial sum; usable
// beyond the bitmask ground-set cap (threshold arithmetic scans n up to 64).
inline BigCount upper_levels_cardinality(long long n, long long halves) {
  if (n < 1 || halves < 0) throw std::invalid_argument("upper_levels_cardinality: bad arguments");
  const long long threshold = n - halves / 2;
  BigCount total = 0;
  for (long long k = std::max(threshold + 1, 0LL); k <= n; ++k) total += binom(n, k);
  // half level: the size-threshold sets containing the fixed element
  if (halves % 2 == 1 && threshold >= 1 && threshold <= n) total += binom(n - 1, threshold - 1);
  return total;
}

// Closed-form binomial sum equal to |build(s)|.
inline BigCount construction_size(const ConstructionSpec& s) {
  validate(s);
  const int n = s.n;
  BigCount total = 0;
  switch (s.kind) {
    case ConstructionKind::UpperLevels:
      return upper_levels_cardinality(n, s.halves);
    case ConstructionKind::MiddleLevels: {
      if (s.level_count == 0) return 0;
      const int lo = (n - s.level_count + 1) / 2;
      const int hi = (n + s.level_count - 1) / 2;
      for (int k = lo; k <= hi; ++k) total += binom(n, k);
      return total;
    }
    case ConstructionKind::Fq: {
      const int lo = detail::fq_level_lo(s);
      BigCount star_part = 0, level_part = 0, overlap = 0;
      for (int k = 1; k <= s.i; ++k) star_part += binom(n - 1, k - 1);
      for (int k = lo; k <= s.i; ++k) level_part += binom(n, k);
      for (int k = std::max(lo, 1); k <= s.i; ++k) overlap += binom(n - 1, k - 1);
      return star_part + level_part - overlap;
    }
    default:  // Star
      return BigCount(1) << (n - 1);
  }
}

// One candidate construction together with its exact cardinality.
struct BoundCandidate {
  std::string label;
  ConstructionSpec spec;
  BigCount value;
};

// Evaluation of an extremal formula: the listed candidates and their maximum.
// For total mode the corrected F_q(i) reading supplies the headline candidates
// and the literal reading is reported alongside.
struct BoundReport {
  int n = 0;
  Mode mode = Mode::Plain;
  int p = 1, q = 1;
  std::vector<BoundCandidate> candidates;
  BigCount maximum;
  std::string attained_by;
  // total mode only: the literal F_q(i) variant, reported separately
  std::vector<BoundCandidate> literal_candidates;
  std::optional<BigCount> literal_maximum;
  std::optional<std::string> literal_attained_by;
};

namespace detail {
inline void fold_max(const std::vector<BoundCandidate>& cands, BigCount& maximum,
                     std::string& attained_by) {
  maximum = 0;
  attained_by.clear();
  for (const auto& c : cands)
    if (attained_by.empty() || c.value > maximum) {
      maximum = c.value;
      attained_by = c.label;
    }
}
}  // namespace detail

// Candidate maxima for the three chain-intersecting modes:
//   plain  -> upper (n+p+q-1)/2 levels;
//   strong -> max(|R1|, |R2|) with R1 the upper (n+p)/2 levels and R2 the
//             middle q-1 levels;
//   total  -> max over i of |F_q(i)| against the middle p-1 levels (p >= q).
inline BoundReport extremal_formula(int n, Mode mode, int p, int q) {
  require_ground_set(n);
  if (p < 1 || q < 1) throw std::invalid_argument("extremal_formula: p,q must be >= 1");
  BoundReport r;
  r.n = n; r.mode = mode; r.p = p; r.q = q;
  switch (mode) {
    case Mode::Plain: {
      auto spec = ConstructionSpec::upper(n, n + p + q - 1);
      r.candidates.push_back({to_string(spec), spec, construction_size(spec)});
      break;
    }
    case Mode::Strong: {
      auto r1 = ConstructionSpec::upper(n, n + p);
      auto r2 = ConstructionSpec::middle(n, q - 1);
      r.candidates.push_back({"R1=" + to_string(r1), r1, construction_size(r1)});
      r.candidates.push_back({"R2=" + to_string(r2), r2, construction_size(r2)});
      break;
    }
    case Mode::Total: {
      if (p < q) throw std::invalid_argument("extremal_formula: total mode needs p >= q");
      auto mid = ConstructionSpec::middle(n, p - 1);
      for (int i = 1; i <= n; ++i) {
        auto corr = ConstructionSpec::fq(n, q, i, FqVariant::Corrected);
        r.candidates.push_back({to_string(corr), corr, construction_size(corr)});
        auto lit = ConstructionSpec::fq(n, q, i, FqVariant::Literal);
        r.literal_candidates.push_back({to_string(lit), lit, construction_size(lit)});
      }
      r.candidates.push_back({to_string(mid), mid, construction_size(mid)});
      r.literal_candidates.push_back({to_string(mid), mid, construction_size(mid)});
      break;
    }
  }
  detail::fold_max(r.candidates, r.maximum, r.attained_by);
  if (!r.literal_candidates.empty()) {
    BigCount lm;
    std::string la;
    detail::fold_max(r.literal_candidates, lm, la);
    r.literal_maximum = lm;
    r.literal_attained_by = la;
  }
  return r;
}

}  // namespace chainfam
