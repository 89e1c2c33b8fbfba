#pragma once

// Subsets of [n] as bitmasks, exact big-integer/rational arithmetic, and the
// canonical set-family representation shared by every other header.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace chainfam {

// One subset of [n]: element i is present iff bit i-1 is set.
using SetMask = std::uint32_t;

// Exact non-negative integer count (level sums up to 2^64 and beyond).
using BigCount = boost::multiprecision::cpp_int;

// Exact rational, used for all ground weights. Never floating point.
using Rational = boost::multiprecision::cpp_rational;

inline constexpr int kMaxGroundSet = 24;

inline int popcount(SetMask m) { return std::popcount(m); }

inline SetMask full_mask(int n) { return (n >= 32) ? ~SetMask{0} : ((SetMask{1} << n) - 1); }

// Bitwise complement within the low n bits; an involution.
inline SetMask complement(SetMask m, int n) { return (~m) & full_mask(n); }

// Canonical order on masks: by set size, then by numeric value.
inline bool canonical_less(SetMask a, SetMask b) {
  int pa = popcount(a), pb = popcount(b);
  return pa != pb ? pa < pb : a < b;
}

inline void require_ground_set(int n) {
  if (n < 1 || n > kMaxGroundSet)
    throw std::invalid_argument("ground-set size must be in [1," + std::to_string(kMaxGroundSet) +
                                "], got " + std::to_string(n));
}

// Exact binomial coefficient. Zero when k is out of range, throws on n < 0.
inline BigCount binom(long long n, long long k) {
  if (n < 0) throw std::invalid_argument("binom: negative n");
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigCount r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;  // exact: r is always an integer binomial prefix
  }
  return r;
}

// "p/q", or just "p" when the denominator is 1.
inline std::string rational_str(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

// "1,2,5" in ascending element order, or "-" for the empty set.
inline std::string format_set(SetMask m) {
  if (m == 0) return "-";
  std::string s;
  for (int e = 0; e < 32; ++e)
    if ((m >> e) & 1) {
      if (!s.empty()) s += ',';
      s += std::to_string(e + 1);
    }
  return s;
}

struct ParseError : std::runtime_error {
  int line;
  ParseError(std::string msg, int line_no)
      : std::runtime_error(std::move(msg) + " at line " + std::to_string(line_no)), line(line_no) {}
};

// A duplicate-free family of subsets of [n], kept sorted in canonical order.
struct SetFamily {
  int n = 0;
  std::vector<SetMask> members;

  SetFamily() = default;
  explicit SetFamily(int ground) : n(ground) { require_ground_set(ground); }

  // Normalizes order; rejects duplicates and masks outside the ground set.
  static SetFamily of(int n, std::vector<SetMask> masks) {
    SetFamily f(n);
    for (SetMask m : masks)
      if (m > full_mask(n)) throw std::invalid_argument("mask outside ground set");
    std::sort(masks.begin(), masks.end(), canonical_less);
    if (std::adjacent_find(masks.begin(), masks.end()) != masks.end())
      throw std::invalid_argument("duplicate member in family");
    f.members = std::move(masks);
    return f;
  }

  std::size_t size() const { return members.size(); }
  bool empty() const { return members.empty(); }

  bool contains(SetMask m) const {
    auto it = std::lower_bound(members.begin(), members.end(), m, canonical_less);
    return it != members.end() && *it == m;
  }

  bool operator==(const SetFamily& o) const { return n == o.n && members == o.members; }
};

// All binom(n,k) subsets of size k.
inline SetFamily enumerate_level(int n, int k) {
  require_ground_set(n);
  if (k < 0 || k > n) throw std::out_of_range("enumerate_level: k out of range");
  std::vector<SetMask> out;
  if (k == 0) {
    out.push_back(0);
  } else {
    // Gosper's hack walks the size-k masks in increasing numeric order.
    SetMask m = full_mask(k);
    SetMask limit = full_mask(n);
    while (m <= limit) {
      out.push_back(m);
      SetMask c = m & -m;
      SetMask r = m + c;
      SetMask next = (((r ^ m) >> 2) / c) | r;
      if (next <= m) break;  // wrapped past the top mask
      m = next;
    }
  }
  return SetFamily::of(n, std::move(out));
}

namespace detail {
inline std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  std::string s = (pos == std::string::npos) ? line : line.substr(0, pos);
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}
}  // namespace detail

// Family file format: first non-comment line "n <k>", then one set per line
// as comma-separated ascending elements of [1..n], "-" for the empty set.
// '#' starts a comment.
inline SetFamily parse_family(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  int n = -1;
  std::vector<SetMask> masks;
  std::vector<int> mask_line;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = detail::strip_comment(raw);
    if (line.empty()) continue;
    if (n < 0) {
      std::istringstream hs(line);
      std::string tag;
      int k = 0;
      if (!(hs >> tag >> k) || tag != "n" || !(hs >> std::ws).eof())
        throw ParseError("expected header 'n <k>'", line_no);
      if (k < 1 || k > kMaxGroundSet)
        throw ParseError("ground-set size " + std::to_string(k) + " out of range [1," +
                             std::to_string(kMaxGroundSet) + "]",
                         line_no);
      n = k;
      continue;
    }
    SetMask m = 0;
    if (line != "-") {
      std::istringstream ls(line);
      std::string tok;
      long long prev = 0;
      while (std::getline(ls, tok, ',')) {
        std::size_t used = 0;
        long long e;
        try {
          e = std::stoll(tok, &used);
        } catch (const std::exception&) {
          throw ParseError("malformed element '" + tok + "'", line_no);
        }
        while (used < tok.size() && (tok[used] == ' ' || tok[used] == '\t')) ++used;
        if (used != tok.size()) throw ParseError("malformed element '" + tok + "'", line_no);
        if (e < 1) throw ParseError("element " + std::to_string(e) + " must be positive", line_no);
        if (e > n)
          throw ParseError("element " + std::to_string(e) + " exceeds n=" + std::to_string(n),
                           line_no);
        if (e <= prev)
          throw ParseError("elements not strictly ascending", line_no);
        prev = e;
        m |= SetMask{1} << (e - 1);
      }
      if (m == 0) throw ParseError("empty set must be written '-'", line_no);
    }
    for (std::size_t i = 0; i < masks.size(); ++i)
      if (masks[i] == m)
        throw ParseError("duplicate set '" + format_set(m) + "' (first at line " +
                             std::to_string(mask_line[i]) + ")",
                         line_no);
    masks.push_back(m);
    mask_line.push_back(line_no);
  }
  if (n < 0) throw ParseError("missing header 'n <k>'", line_no == 0 ? 1 : line_no);
  return SetFamily::of(n, std::move(masks));
}

// Canonical serialization; parse(serialize(f)) == f.
inline std::string serialize_family(const SetFamily& f) {
  std::string out = "n " + std::to_string(f.n) + "\n";
  for (SetMask m : f.members) out += format_set(m) + "\n";
  return out;
}

}  // namespace chainfam
