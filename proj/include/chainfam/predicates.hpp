#pragma once

// Family properties and their deciders. Chain-intersecting checks reduce to
// height/updepth thresholds plus one disjoint pair; every violation comes with
// an explicit witness that re-validates against the raw definition. An
// independent brute-force oracle (explicit chain enumeration) guards the
// reduction.

#include <optional>
#include <string>
#include <vector>

#include "chainfam/core.hpp"
#include "chainfam/constructions.hpp"  // Mode

namespace chainfam {

enum class PropertyKind { ChainIntersect, KSperner, Intersecting, ComplementFree, RCcpf };

struct PropertySpec {
  PropertyKind kind = PropertyKind::Intersecting;
  Mode mode = Mode::Plain;  // ChainIntersect only
  int p = 1, q = 1;         // ChainIntersect
  int k = 1;                // KSperner
  int r = 1;                // RCcpf

  static PropertySpec chain_intersect(Mode m, int p, int q) {
    PropertySpec s;
    s.kind = PropertyKind::ChainIntersect;
    s.mode = m; s.p = p; s.q = q;
    return s;
  }
  static PropertySpec ksperner(int k) {
    PropertySpec s;
    s.kind = PropertyKind::KSperner;
    s.k = k;
    return s;
  }
  static PropertySpec intersecting() { return PropertySpec{}; }
  static PropertySpec complement_free() {
    PropertySpec s;
    s.kind = PropertyKind::ComplementFree;
    return s;
  }
  static PropertySpec ccpf(int r) {
    PropertySpec s;
    s.kind = PropertyKind::RCcpf;
    s.r = r;
    return s;
  }

  // Intersecting is plain (1,1); complement-free is 1-complementing-chain-pair-free.
  PropertySpec normalized() const {
    if (kind == PropertyKind::Intersecting) return chain_intersect(Mode::Plain, 1, 1);
    if (kind == PropertyKind::ComplementFree) return ccpf(1);
    return *this;
  }
};

inline void validate(const PropertySpec& s) {
  switch (s.kind) {
    case PropertyKind::ChainIntersect:
      if (s.p < 1 || s.q < 1) throw std::invalid_argument("chain-intersect: p,q must be >= 1");
      break;
    case PropertyKind::KSperner:
      if (s.k < 1) throw std::invalid_argument("ksperner: k must be >= 1");
      break;
    case PropertyKind::RCcpf:
      if (s.r < 1) throw std::invalid_argument("ccpf: r must be >= 1");
      break;
    default:
      break;
  }
}

inline std::string to_string(const PropertySpec& s) {
  switch (s.kind) {
    case PropertyKind::ChainIntersect:
      return mode_name(s.mode) + ":" + std::to_string(s.p) + "," + std::to_string(s.q);
    case PropertyKind::KSperner: return "ksperner:" + std::to_string(s.k);
    case PropertyKind::RCcpf: return "ccpf:" + std::to_string(s.r);
    case PropertyKind::Intersecting: return "intersecting";
    default: return "complement-free";
  }
}

inline PropertySpec parse_property(const std::string& text) {
  if (text == "intersecting") return PropertySpec::intersecting();
  if (text == "complement-free") return PropertySpec::complement_free();
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("unknown property '" + text + "'");
  std::string kind = text.substr(0, colon);
  std::string args = text.substr(colon + 1);
  auto parse_int = [&](const std::string& t) {
    std::size_t used = 0;
    int v = std::stoi(t, &used);
    if (used != t.size()) throw std::invalid_argument("bad property parameter '" + t + "'");
    return v;
  };
  PropertySpec s;
  if (kind == "plain" || kind == "strong" || kind == "total") {
    auto comma = args.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("property '" + kind + "' needs p,q");
    Mode m = kind == "plain" ? Mode::Plain : kind == "strong" ? Mode::Strong : Mode::Total;
    s = PropertySpec::chain_intersect(m, parse_int(args.substr(0, comma)),
                                      parse_int(args.substr(comma + 1)));
  } else if (kind == "ksperner") {
    s = PropertySpec::ksperner(parse_int(args));
  } else if (kind == "ccpf") {
    s = PropertySpec::ccpf(parse_int(args));
  } else {
    throw std::invalid_argument("unknown property '" + text + "'");
  }
  validate(s);
  return s;
}

// Per-member longest-chain statistics: height h(F) is the length of the
// longest chain in the family topped by F, updepth u(F) the longest bottomed
// at F.
struct ChainProfile {
  std::vector<int> height;
  std::vector<int> updepth;
};

inline ChainProfile chain_profile(const SetFamily& f) {
  const auto& ms = f.members;  // sorted by (popcount, value): subsets come first
  ChainProfile pr;
  pr.height.assign(ms.size(), 1);
  pr.updepth.assign(ms.size(), 1);
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (ms[j] != ms[i] && (ms[j] & ms[i]) == ms[j])
        pr.height[i] = std::max(pr.height[i], pr.height[j] + 1);
  for (std::size_t i = ms.size(); i-- > 0;)
    for (std::size_t j = ms.size(); j-- > i + 1;)
      if (ms[i] != ms[j] && (ms[i] & ms[j]) == ms[i])
        pr.updepth[i] = std::max(pr.updepth[i], pr.updepth[j] + 1);
  return pr;
}

// A violating configuration. For chain-intersect modes both chains are listed
// bottom-up; for r-ccpf chain_b holds the complements of chain_a; for
// k-Sperner chain_a is a too-long chain.
struct Witness {
  std::vector<SetMask> chain_a;
  std::vector<SetMask> chain_b;
};

struct CheckResult {
  bool satisfied = true;
  std::optional<Witness> witness;
};

namespace detail {

// Chain of exactly `len` members of f topped at index `top` (needs h[top] >= len).
inline std::vector<SetMask> chain_ending_at(const SetFamily& f, const ChainProfile& pr,
                                            std::size_t top, int len) {
  std::vector<SetMask> chain{f.members[top]};
  std::size_t cur = top;
  for (int need = len - 1; need >= 1; --need) {
    for (std::size_t j = 0; j < cur; ++j) {
      SetMask mj = f.members[j];
      if (mj != f.members[cur] && (mj & f.members[cur]) == mj && pr.height[j] >= need) {
        chain.push_back(mj);
        cur = j;
        break;
      }
    }
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

// Chain of exactly `len` members of f bottomed at index `bottom` (needs u >= len).
inline std::vector<SetMask> chain_starting_at(const SetFamily& f, const ChainProfile& pr,
                                              std::size_t bottom, int len) {
  std::vector<SetMask> chain{f.members[bottom]};
  std::size_t cur = bottom;
  for (int need = len - 1; need >= 1; --need) {
    for (std::size_t j = cur + 1; j < f.members.size(); ++j) {
      SetMask mj = f.members[j];
      if (mj != f.members[cur] && (f.members[cur] & mj) == f.members[cur] &&
          pr.updepth[j] >= need) {
        chain.push_back(mj);
        cur = j;
        break;
      }
    }
  }
  return chain;
}

// Members whose complement is also in the family, as indices into f.members.
inline std::vector<std::size_t> complement_closed_indices(const SetFamily& f) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < f.members.size(); ++i)
    if (f.contains(complement(f.members[i], f.n))) idx.push_back(i);
  return idx;
}

}  // namespace detail

// Decide `prop` on f. The two chains of a chain-intersect witness are
// quantified independently and may share members, so {emptyset} already
// violates every mode at (1,1).
inline CheckResult check(const SetFamily& f, const PropertySpec& prop_in) {
  validate(prop_in);
  PropertySpec prop = prop_in.normalized();
  const auto& ms = f.members;
  switch (prop.kind) {
    case PropertyKind::ChainIntersect: {
      ChainProfile pr = chain_profile(f);
      const bool a_uses_height = (prop.mode != Mode::Total);
      const bool b_uses_height = (prop.mode == Mode::Plain);
      std::vector<std::size_t> a_side, b_side;
      for (std::size_t i = 0; i < ms.size(); ++i) {
        if ((a_uses_height ? pr.height[i] : pr.updepth[i]) >= prop.p) a_side.push_back(i);
        if ((b_uses_height ? pr.height[i] : pr.updepth[i]) >= prop.q) b_side.push_back(i);
      }
      for (std::size_t a : a_side)
        for (std::size_t b : b_side)
          if ((ms[a] & ms[b]) == 0) {
            Witness w;
            w.chain_a = a_uses_height ? detail::chain_ending_at(f, pr, a, prop.p)
                                      : detail::chain_starting_at(f, pr, a, prop.p);
            w.chain_b = b_uses_height ? detail::chain_ending_at(f, pr, b, prop.q)
                                      : detail::chain_starting_at(f, pr, b, prop.q);
            return {false, w};
          }
      return {true, std::nullopt};
    }
    case PropertyKind::KSperner: {
      ChainProfile pr = chain_profile(f);
      for (std::size_t i = 0; i < ms.size(); ++i)
        if (pr.height[i] > prop.k) {
          Witness w;
          w.chain_a = detail::chain_ending_at(f, pr, i, prop.k + 1);
          return {false, w};
        }
      return {true, std::nullopt};
    }
    case PropertyKind::RCcpf: {
      auto idx = detail::complement_closed_indices(f);
      std::vector<SetMask> cmasks;
      for (auto i : idx) cmasks.push_back(ms[i]);
      SetFamily cf = SetFamily::of(f.n, cmasks);
      ChainProfile pr = chain_profile(cf);
      for (std::size_t i = 0; i < cf.members.size(); ++i)
        if (pr.height[i] >= prop.r) {
          Witness w;
          w.chain_a = detail::chain_ending_at(cf, pr, i, prop.r);
          for (SetMask m : w.chain_a) w.chain_b.push_back(complement(m, f.n));
          return {false, w};
        }
      return {true, std::nullopt};
    }
    default:
      throw std::logic_error("unnormalized property");
  }
}

struct CrossSpernerResult {
  bool satisfied = true;
  SetMask a = 0, b = 0;  // violating pair, a from the first family
};

// Cross-Sperner: no member of one family contains or equals a member of the
// other.
inline CrossSpernerResult check_cross_sperner(const SetFamily& f, const SetFamily& f2) {
  if (f.n != f2.n) throw std::invalid_argument("cross-sperner: mismatched ground sets");
  for (SetMask a : f.members)
    for (SetMask b : f2.members)
      if ((a & b) == a || (a & b) == b) return {false, a, b};
  return {true, 0, 0};
}

namespace detail {

// All chains of exactly `len` members, by explicit extension; used only by the
// oracle. `on_chain` gets each chain once (members bottom-up).
template <typename Fn>
inline void enumerate_chains(const SetFamily& f, int len, Fn&& on_chain) {
  const auto& ms = f.members;
  std::vector<std::size_t> stack;
  auto dfs = [&](auto&& self, std::size_t last) -> void {
    if ((int)stack.size() == len) {
      on_chain(stack);
      return;
    }
    for (std::size_t j = last + 1; j < ms.size(); ++j)
      if (ms[last] != ms[j] && (ms[last] & ms[j]) == ms[last]) {
        stack.push_back(j);
        self(self, j);
        stack.pop_back();
      }
  };
  for (std::size_t i = 0; i < ms.size(); ++i) {
    stack.assign(1, i);
    if (len == 1) on_chain(stack);
    else dfs(dfs, i);
  }
}

struct AnchorSet {
  std::vector<char> anchored;                   // per member index
  std::vector<std::vector<SetMask>> exemplar;   // one chain per anchored index
};

// Members that top (or bottom) some chain of exactly `len` members.
inline AnchorSet chain_anchors(const SetFamily& f, int len, bool top) {
  AnchorSet a;
  a.anchored.assign(f.members.size(), 0);
  a.exemplar.resize(f.members.size());
  enumerate_chains(f, len, [&](const std::vector<std::size_t>& chain) {
    std::size_t anchor = top ? chain.back() : chain.front();
    if (!a.anchored[anchor]) {
      a.anchored[anchor] = 1;
      std::vector<SetMask> ex;
      for (auto i : chain) ex.push_back(f.members[i]);
      a.exemplar[anchor] = std::move(ex);
    }
  });
  return a;
}

}  // namespace detail

// Brute-force check by explicit chain enumeration; agrees with check() on all
// inputs and is kept independent of the height/updepth reduction.
inline CheckResult oracle_check(const SetFamily& f, const PropertySpec& prop_in) {
  validate(prop_in);
  if (f.size() > 20) throw std::invalid_argument("oracle_check: family too large");
  PropertySpec prop = prop_in.normalized();
  const auto& ms = f.members;
  switch (prop.kind) {
    case PropertyKind::ChainIntersect: {
      const bool a_top = (prop.mode != Mode::Total);
      const bool b_top = (prop.mode == Mode::Plain);
      auto a_anchors = detail::chain_anchors(f, prop.p, a_top);
      auto b_anchors = detail::chain_anchors(f, prop.q, b_top);
      for (std::size_t a = 0; a < ms.size(); ++a) {
        if (!a_anchors.anchored[a]) continue;
        for (std::size_t b = 0; b < ms.size(); ++b) {
          if (!b_anchors.anchored[b]) continue;
          if ((ms[a] & ms[b]) == 0)
            return {false, Witness{a_anchors.exemplar[a], b_anchors.exemplar[b]}};
        }
      }
      return {true, std::nullopt};
    }
    case PropertyKind::KSperner: {
      CheckResult res{true, std::nullopt};
      detail::enumerate_chains(f, prop.k + 1, [&](const std::vector<std::size_t>& chain) {
        if (res.satisfied) {
          Witness w;
          for (auto i : chain) w.chain_a.push_back(ms[i]);
          res = {false, w};
        }
      });
      return res;
    }
    case PropertyKind::RCcpf: {
      CheckResult res{true, std::nullopt};
      detail::enumerate_chains(f, prop.r, [&](const std::vector<std::size_t>& chain) {
        if (!res.satisfied) return;
        for (auto i : chain)
          if (!f.contains(complement(ms[i], f.n))) return;
        Witness w;
        for (auto i : chain) {
          w.chain_a.push_back(ms[i]);
          w.chain_b.push_back(complement(ms[i], f.n));
        }
        res = {false, w};
      });
      return res;
    }
    default:
      throw std::logic_error("unnormalized property");
  }
}

// Re-validate a witness against the raw definition it claims to violate.
inline bool witness_validates(const SetFamily& f, const PropertySpec& prop_in, const Witness& w) {
  PropertySpec prop = prop_in.normalized();
  auto is_chain_in_family = [&](const std::vector<SetMask>& c) {
    for (SetMask m : c)
      if (!f.contains(m)) return false;
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
      if (c[i] == c[i + 1] || (c[i] & c[i + 1]) != c[i]) return false;
    return true;
  };
  switch (prop.kind) {
    case PropertyKind::ChainIntersect: {
      if ((int)w.chain_a.size() != prop.p || (int)w.chain_b.size() != prop.q) return false;
      if (!is_chain_in_family(w.chain_a) || !is_chain_in_family(w.chain_b)) return false;
      SetMask a = (prop.mode == Mode::Total) ? w.chain_a.front() : w.chain_a.back();
      SetMask b = (prop.mode == Mode::Plain) ? w.chain_b.back() : w.chain_b.front();
      return (a & b) == 0;
    }
    case PropertyKind::KSperner:
      return (int)w.chain_a.size() == prop.k + 1 && is_chain_in_family(w.chain_a);
    case PropertyKind::RCcpf: {
      if ((int)w.chain_a.size() != prop.r || w.chain_b.size() != w.chain_a.size()) return false;
      if (!is_chain_in_family(w.chain_a)) return false;
      for (std::size_t i = 0; i < w.chain_a.size(); ++i) {
        if (w.chain_b[i] != complement(w.chain_a[i], f.n)) return false;
        if (!f.contains(w.chain_b[i])) return false;
      }
      return true;
    }
    default:
      return false;
  }
}

}  // namespace chainfam
