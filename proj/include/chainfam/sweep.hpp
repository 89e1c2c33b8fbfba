#pragma once

// Sweeps a grid of (n, property) cells: formula value, validated construction
// lower bound, circle upper bound, exact optimum where the solver reaches,
// and matched/gap status. Rows are cached by key and reruns are byte-stable.

#include <future>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "chainfam/cache.hpp"
#include "chainfam/constructions.hpp"
#include "chainfam/predicates.hpp"
#include "chainfam/search.hpp"

namespace chainfam {

struct SweepOptions {
  int n_lo = 2, n_hi = 4;
  std::vector<PropertySpec> properties;
  Budget budget;
  bool force = false;  // recompute even when the key is cached
};

struct SweepRow {
  std::string key;
  std::string raw;  // stored/emitted line
  nlohmann::json row;
  bool from_cache = false;
};

inline std::string sweep_key(int n, const PropertySpec& prop) {
  return "sweep|n=" + std::to_string(n) + "|prop=" + to_string(prop);
}

namespace detail {

inline std::optional<BigCount> formula_value(int n, const PropertySpec& prop_in) {
  PropertySpec prop = prop_in.normalized();
  switch (prop.kind) {
    case PropertyKind::ChainIntersect:
      if (prop.mode == Mode::Total && prop.p < prop.q) return std::nullopt;
      return extremal_formula(n, prop.mode, prop.p, prop.q).maximum;
    case PropertyKind::KSperner:
      return construction_size(ConstructionSpec::middle(n, prop.k));
    case PropertyKind::RCcpf:
      return upper_levels_cardinality(n, n + prop.r);
    default:
      return std::nullopt;
  }
}

inline nlohmann::json compute_sweep_cell(int n, const PropertySpec& prop, const Budget& budget) {
  nlohmann::json row;
  row["key"] = sweep_key(n, prop);
  row["n"] = n;
  row["property"] = to_string(prop);

  auto formula = formula_value(n, prop);
  row["formula"] = formula ? nlohmann::json(formula->str()) : nlohmann::json(nullptr);

  BigCount lb = 0;
  std::string lb_by = "empty-family";
  for (const auto& spec : detail::candidate_constructions(n, prop)) {
    if (!check(build(spec), prop).satisfied) continue;
    BigCount sz = construction_size(spec);
    if (sz > lb) {
      lb = sz;
      lb_by = to_string(spec);
    }
  }

  std::optional<BigCount> exact;
  bool exhaustive = false;
  std::uint64_t nodes = 0;
  if (n <= 6) {
    SearchResult sr = max_family_exact(n, prop, budget);
    nodes = sr.nodes;
    exhaustive = sr.exhaustive;
    if (sr.optimum > lb) {
      lb = sr.optimum;
      lb_by = "search-witness";
    }
    if (sr.exhaustive) exact = sr.optimum;
  }
  row["construction_lb"] = lb.str();
  row["construction_by"] = lb_by;
  row["exact_optimum"] = exact ? nlohmann::json(exact->str()) : nlohmann::json(nullptr);
  row["exhaustive"] = exhaustive;
  row["nodes"] = nodes;

  std::optional<BigCount> ub;
  std::string ub_method;
  if (exact) {
    ub = exact;
    ub_method = "exhaustive-search";
  }
  if (n >= 2 && n <= 10) {
    WeightSearchResult wr = max_weight_on_ground(circle_ground(n), prop, budget);
    if (wr.exhaustive) {
      row["circle_optimum"] = rational_str(wr.optimum);
      BigCount floor_w = numerator(wr.optimum) / denominator(wr.optimum);
      row["circle_ub"] = floor_w.str();
      if (!ub || floor_w < *ub) {
        ub = floor_w;
        ub_method = "circle-ground";
      }
    }
  }
  if (!row.contains("circle_ub")) {
    row["circle_optimum"] = nullptr;
    row["circle_ub"] = nullptr;
  }
  row["upper_bound"] = ub ? nlohmann::json(ub->str()) : nlohmann::json(nullptr);
  row["upper_method"] = ub ? nlohmann::json(ub_method) : nlohmann::json(nullptr);
  row["status"] = !ub ? "unknown" : (lb == *ub ? "matched" : "gap");
  row["formula_attained"] =
      (formula && exact) ? nlohmann::json(*formula == *exact) : nlohmann::json(nullptr);
  row["timestamp"] = iso8601_utc_now();
  return row;
}

}  // namespace detail

// Cells run in parallel; rows are appended to the cache in grid order, one
// line per row, and cached keys are re-emitted unchanged (no recompute).
inline std::vector<SweepRow> sweep(const SweepOptions& opt, const ResultCache& cache) {
  struct Cell {
    int n;
    PropertySpec prop;
    std::string key;
    std::optional<std::string> cached;
  };
  std::vector<Cell> cells;
  for (int n = opt.n_lo; n <= opt.n_hi; ++n)
    for (const auto& prop : opt.properties) {
      Cell c{n, prop, sweep_key(n, prop), std::nullopt};
      if (!opt.force) c.cached = cache.lookup_raw(c.key);
      cells.push_back(std::move(c));
    }

  std::vector<std::future<nlohmann::json>> jobs(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (!cells[i].cached)
      jobs[i] = std::async(std::launch::async, [&opt, &cells, i] {
        return detail::compute_sweep_cell(cells[i].n, cells[i].prop, opt.budget);
      });

  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    SweepRow r;
    r.key = cells[i].key;
    if (cells[i].cached) {
      r.raw = *cells[i].cached;
      r.row = nlohmann::json::parse(r.raw);
      r.from_cache = true;
    } else {
      r.row = jobs[i].get();
      r.raw = r.row.dump();
      cache.append_line(r.raw);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

// Stable column set; values taken from the cached rows.
inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "n,property,formula,construction_lb,circle_ub,exact_optimum,exhaustive,status,"
      "formula_attained\n";
  auto cell = [](const nlohmann::json& row, const char* field) -> std::string {
    if (!row.contains(field) || row[field].is_null()) return "";
    const auto& v = row[field];
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  };
  for (const auto& r : rows) {
    out += cell(r.row, "n") + "," + cell(r.row, "property") + "," + cell(r.row, "formula") + "," +
           cell(r.row, "construction_lb") + "," + cell(r.row, "circle_ub") + "," +
           cell(r.row, "exact_optimum") + "," + cell(r.row, "exhaustive") + "," +
           cell(r.row, "status") + "," + cell(r.row, "formula_attained") + "\n";
  }
  return out;
}

}  // namespace chainfam
