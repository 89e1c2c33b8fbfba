// chainfam: verification and search for chain-intersecting set families.
//
// Subcommands expose the library operations with reproducible output: exact
// searches, ground solves, certificates, conjecture reports, proof-step
// checks, threshold scans and grid sweeps. Computed results are cached as
// JSON lines keyed by the canonical flag string; reruns are served from the
// cache unless --force is given. Exit codes: 0 ok/satisfied, 1 property
// violated (check only), 2 usage or input error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "chainfam/chainfam.hpp"

using namespace chainfam;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open file '" + path + "' for writing");
  out << text;
}

// 64-bit FNV-1a, used to key file-based commands by content.
std::string content_hash(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)h);
  return buf;
}

struct CommonOpts {
  std::string format = "text";
  std::string cache_path = ResultCache::default_path();
  bool force = false;
  std::uint64_t max_nodes = 0;  // 0 = unlimited
  double max_seconds = 0.0;     // 0 = unlimited
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_budget = false) {
  cmd->add_option("--format", opts.format, "output format: text|json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--cache", opts.cache_path, "result cache path (env CHAINFAM_CACHE)");
  cmd->add_flag("--force", opts.force, "recompute even if the key is cached");
  if (with_budget) {
    cmd->add_option("--max-nodes", opts.max_nodes, "node budget for the solver (positive)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-seconds", opts.max_seconds, "wall-clock budget in seconds (positive)")
        ->check(CLI::PositiveNumber);
  }
}

Budget make_budget(const CommonOpts& opts) {
  Budget b;
  if (opts.max_nodes > 0) b.max_nodes = opts.max_nodes;
  if (opts.max_seconds > 0) b.max_seconds = opts.max_seconds;
  return b;
}

std::string budget_key(const CommonOpts& opts) {
  std::string k;
  if (opts.max_nodes > 0) k += "|nodes=" + std::to_string(opts.max_nodes);
  if (opts.max_seconds > 0) k += "|secs=" + std::to_string(opts.max_seconds);
  return k;
}

json witness_json(const Witness& w) {
  json j;
  for (SetMask m : w.chain_a) j["chain_a"].push_back(format_set(m));
  for (SetMask m : w.chain_b) j["chain_b"].push_back(format_set(m));
  return j;
}

std::string witness_text(const Witness& w) {
  std::string s = "A-chain:";
  for (SetMask m : w.chain_a) s += " " + format_set(m);
  s += "\nB-chain:";
  for (SetMask m : w.chain_b) s += " " + format_set(m);
  return s;
}

json family_json(const SetFamily& f) {
  json j;
  j["n"] = f.n;
  j["size"] = f.size();
  j["text"] = serialize_family(f);
  return j;
}

// Either computes a fresh row (and appends it) or re-renders the cached one.
json cached_result(const CommonOpts& opts, const std::string& key, const std::string& command,
                   const std::function<json()>& compute) {
  ResultCache cache(opts.cache_path);
  if (!opts.force) {
    if (auto hit = cache.lookup(key)) return (*hit)["result"];
  }
  json row;
  row["key"] = key;
  row["command"] = command;
  row["timestamp"] = iso8601_utc_now();
  row["result"] = compute();
  cache.append(row);
  return row["result"];
}

void emit(const CommonOpts& opts, const json& result, const std::string& text) {
  if (opts.format == "json") std::cout << result.dump(2) << "\n";
  else std::cout << text;
}

json search_json(const SearchResult& r) {
  json j;
  j["optimum"] = r.optimum.str();
  j["witness"] = family_json(r.witness);
  j["nodes"] = r.nodes;
  j["elapsed_seconds"] = r.elapsed_seconds;
  j["exhaustive"] = r.exhaustive;
  return j;
}

json wsearch_json(const WeightSearchResult& r) {
  json j;
  j["optimum"] = rational_str(r.optimum);
  j["witness"] = family_json(r.witness);
  j["nodes"] = r.nodes;
  j["elapsed_seconds"] = r.elapsed_seconds;
  j["exhaustive"] = r.exhaustive;
  return j;
}

json bound_report_json(const BoundReport& r) {
  json j;
  j["n"] = r.n;
  j["mode"] = mode_name(r.mode);
  j["p"] = r.p;
  j["q"] = r.q;
  for (const auto& c : r.candidates)
    j["candidates"].push_back({{"label", c.label}, {"value", c.value.str()}});
  j["maximum"] = r.maximum.str();
  j["attained_by"] = r.attained_by;
  if (r.literal_maximum) {
    for (const auto& c : r.literal_candidates)
      j["literal_candidates"].push_back({{"label", c.label}, {"value", c.value.str()}});
    j["literal_maximum"] = r.literal_maximum->str();
    j["literal_attained_by"] = *r.literal_attained_by;
  }
  return j;
}

json certificate_json(const Certificate& c) {
  json j;
  j["n"] = c.n;
  j["property"] = to_string(c.prop);
  j["lower"] = c.lower.str();
  j["lower_by"] = c.lower_by;
  if (c.lower_witness) j["lower_witness"] = family_json(*c.lower_witness);
  j["upper"] = c.upper.str();
  j["upper_method"] = c.upper_method;
  if (c.has_circle_bound) j["circle_optimum"] = rational_str(c.circle_optimum);
  j["hereditary_checked"] = c.hereditary_checked;
  j["status"] = c.matched ? "matched" : "gap";
  return j;
}

json conjecture_json(const ConjectureReport& r) {
  json j;
  j["which"] = r.which;
  j["n"] = r.n;
  j["p"] = r.p;
  j["q"] = r.q;
  j["bound"] = r.bound.str();
  j["bound_attained_by"] = r.bound_attained_by;
  if (r.literal_bound) j["literal_bound"] = r.literal_bound->str();
  for (const auto& v : r.validity) {
    json cv{{"spec", v.spec}, {"size", v.size.str()}, {"valid", v.valid}};
    if (v.violation) cv["violation"] = witness_json(*v.violation);
    j["construction_validity"].push_back(cv);
  }
  j["literal_variant_valid"] = r.literal_variant_valid;
  if (r.literal_invalidity_note) j["literal_invalidity_note"] = *r.literal_invalidity_note;
  if (r.optimum) j["optimum"] = r.optimum->str();
  j["optimum_exhaustive"] = r.optimum_exhaustive;
  if (r.optimum_witness) j["optimum_witness"] = family_json(*r.optimum_witness);
  j["witness_revalidated"] = r.witness_revalidated;
  if (r.circle_bound) j["circle_bound"] = rational_str(*r.circle_bound);
  j["status"] = r.status;
  j["proven_case"] = r.proven_case;
  return j;
}

std::string conjecture_text(const ConjectureReport& r) {
  std::ostringstream out;
  out << "conjecture " << r.which << " at n=" << r.n << " p=" << r.p << " q=" << r.q << "\n";
  out << "  conjectured bound: " << r.bound.str() << " (" << r.bound_attained_by << ")\n";
  if (r.literal_bound)
    out << "  literal-variant bound: " << r.literal_bound->str()
        << (r.literal_variant_valid ? "" : " [unusable: invalid construction]") << "\n";
  if (r.literal_invalidity_note) out << "  " << *r.literal_invalidity_note << "\n";
  if (r.optimum)
    out << "  exact optimum: " << r.optimum->str()
        << (r.optimum_exhaustive ? "" : " (budget-truncated)") << "\n";
  if (r.circle_bound) out << "  circle upper bound: " << rational_str(*r.circle_bound) << "\n";
  out << "  status: " << r.status << (r.proven_case ? " (published-case parameters)" : "")
      << "\n";
  return out.str();
}

json threshold_json(const ThresholdReport& rep) {
  json j;
  j["p"] = rep.p;
  j["q"] = rep.q;
  j["n_max"] = rep.n_max;
  for (const auto& row : rep.rows) {
    json r;
    r["n"] = row.n;
    r["x"] = rational_str(row.x);
    r["y"] = rational_str(row.y);
    r["rotation_bound"] = rational_str(row.rotation_bound);
    r["x_gt_y"] = row.x_gt_y;
    r["x_gt_half_powerset"] = row.x_gt_half_powerset;
    if (row.circle_upper) r["circle_upper"] = rational_str(*row.circle_upper);
    if (row.gap_term) r["gap_term"] = rational_str(*row.gap_term);
    if (row.rotation_closes) r["rotation_closes"] = *row.rotation_closes;
    if (row.identity_holds) r["identity_holds"] = *row.identity_holds;
    j["rows"].push_back(r);
  }
  if (rep.least_n_x_gt_y) j["least_n_x_gt_y"] = *rep.least_n_x_gt_y;
  if (rep.least_n_rotation_closes) j["least_n_rotation_closes"] = *rep.least_n_rotation_closes;
  return j;
}

int run_check(const std::string& family_path, const std::string& prop_str,
              const CommonOpts& opts) {
  SetFamily fam = parse_family(read_file(family_path));
  PropertySpec prop = parse_property(prop_str);
  auto res = check(fam, prop);
  json j;
  j["property"] = to_string(prop);
  j["n"] = fam.n;
  j["family_size"] = fam.size();
  j["satisfied"] = res.satisfied;
  if (res.witness) j["witness"] = witness_json(*res.witness);
  if (opts.format == "json") {
    std::cout << j.dump(2) << "\n";
  } else if (res.satisfied) {
    std::cout << "satisfied: " << to_string(prop) << " on " << fam.size() << " sets (n=" << fam.n
              << ")\n";
  } else {
    std::cout << "violated: " << to_string(prop) << "\n";
    // witness in family-file syntax, roles in comments
    const Witness& w = *res.witness;
    std::cout << "# A-chain:";
    for (SetMask m : w.chain_a) std::cout << " " << format_set(m);
    std::cout << "\n# B-chain:";
    for (SetMask m : w.chain_b) std::cout << " " << format_set(m);
    std::cout << "\nn " << fam.n << "\n";
    std::vector<SetMask> all = w.chain_a;
    all.insert(all.end(), w.chain_b.begin(), w.chain_b.end());
    std::sort(all.begin(), all.end(), canonical_less);
    all.erase(std::unique(all.begin(), all.end()), all.end());
    for (SetMask m : all) std::cout << format_set(m) << "\n";
  }
  return res.satisfied ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification and search for chain-intersecting set families"};
  app.require_subcommand(1);

  // ---- check ----
  CommonOpts check_opts;
  std::string check_family, check_prop;
  auto* c_check = app.add_subcommand("check", "decide a property on a family file");
  c_check->add_option("--family", check_family, "family file")->required();
  c_check->add_option("--property", check_prop, "property string, e.g. plain:2,2")->required();
  add_common(c_check, check_opts);

  // ---- construct ----
  CommonOpts construct_opts;
  std::string construct_spec, construct_out;
  auto* c_construct = app.add_subcommand("construct", "materialize a named construction");
  c_construct->add_option("--spec", construct_spec, "construction spec, e.g. upper:n=5,s=6")
      ->required();
  c_construct->add_option("--out", construct_out, "output file (default stdout)");
  add_common(c_construct, construct_opts);

  // ---- formula ----
  CommonOpts formula_opts;
  int f_n = 0, f_p = 1, f_q = 1;
  std::string f_mode = "plain";
  auto* c_formula = app.add_subcommand("formula", "evaluate an extremal formula");
  c_formula->add_option("--n", f_n, "ground-set size")->required();
  c_formula->add_option("--mode", f_mode, "plain|strong|total")
      ->check(CLI::IsMember({"plain", "strong", "total"}));
  c_formula->add_option("--p", f_p, "p");
  c_formula->add_option("--q", f_q, "q");
  add_common(c_formula, formula_opts);

  // ---- extremal ----
  CommonOpts extremal_opts;
  int e_n = 0;
  std::string e_prop;
  auto* c_extremal = app.add_subcommand("extremal", "exact maximum family search");
  c_extremal->add_option("--n", e_n, "ground-set size")->required();
  c_extremal->add_option("--property", e_prop, "property string")->required();
  add_common(c_extremal, extremal_opts, true);

  // ---- ground ----
  CommonOpts ground_opts;
  int g_n = 0;
  bool g_circle = false, g_chainpair = false;
  std::string g_prop, g_ordering, g_export;
  bool g_do_export = false;
  auto* c_ground = app.add_subcommand("ground", "max-weight solve or export of a ground");
  c_ground->add_option("--n", g_n, "ground-set size")->required();
  c_ground->add_flag("--circle", g_circle, "use the circle (all cyclic intervals)");
  c_ground->add_flag("--chainpair", g_chainpair, "use a chain-pair");
  c_ground->add_option("--ordering", g_ordering, "chain-pair ordering, e.g. 1,3,2");
  c_ground->add_option("--property", g_prop, "property to maximize under");
  c_ground->add_flag("--export", g_do_export, "write the ground with weights instead of solving");
  c_ground->add_option("--out", g_export, "export destination (default stdout)");
  add_common(c_ground, ground_opts, true);

  // ---- certify ----
  CommonOpts certify_opts;
  int ce_n = 0;
  std::string ce_prop;
  auto* c_certify = app.add_subcommand("certify", "matched lower/upper bound certificate");
  c_certify->add_option("--n", ce_n, "ground-set size")->required();
  c_certify->add_option("--property", ce_prop, "property string")->required();
  add_common(c_certify, certify_opts, true);

  // ---- conjecture ----
  CommonOpts conj_opts;
  int cj_which = 1, cj_n = 0, cj_p = 1, cj_q = 1;
  auto* c_conj = app.add_subcommand("conjecture", "empirical conjecture status report");
  c_conj->add_option("--which", cj_which, "1 or 2")->check(CLI::IsMember({1, 2}))->required();
  c_conj->add_option("--n", cj_n, "ground-set size")->required();
  c_conj->add_option("--p", cj_p, "p");
  c_conj->add_option("--q", cj_q, "q");
  add_common(c_conj, conj_opts, true);

  // ---- proofcheck ----
  CommonOpts pc_opts;
  std::string pc_thm2_family;
  std::vector<std::string> pc_hilton;
  auto* c_pc = app.add_subcommand("proofcheck", "verify proof steps on concrete families");
  c_pc->add_option("--thm2-family", pc_thm2_family,
                   "decompose a totally (2,2)-chain-intersecting family");
  c_pc->add_option("--hilton", pc_hilton, "two family files for the Hilton bound")
      ->expected(2);
  add_common(c_pc, pc_opts);

  // ---- threshold ----
  CommonOpts th_opts;
  int th_p = 1, th_q = 1, th_nmax = 20;
  std::string th_out;
  bool th_csv = false;
  auto* c_th = app.add_subcommand("threshold", "x/y threshold arithmetic scan");
  c_th->add_option("--p", th_p, "p")->required();
  c_th->add_option("--q", th_q, "q")->required();
  c_th->add_option("--nmax", th_nmax, "scan n = 2..nmax (<= 64)");
  c_th->add_flag("--csv", th_csv, "emit CSV");
  c_th->add_option("--out", th_out, "write output to a file");
  add_common(c_th, th_opts);

  // ---- sweep ----
  CommonOpts sw_opts;
  std::string sw_range, sw_out;
  std::vector<std::string> sw_props;
  auto* c_sw = app.add_subcommand("sweep", "tabulate bounds over a grid of (n, property)");
  c_sw->add_option("--n-range", sw_range, "inclusive range, e.g. 3..5")->required();
  c_sw->add_option("--property", sw_props, "property string (repeatable)")->required();
  c_sw->add_option("--out", sw_out, "write CSV to a file");
  add_common(c_sw, sw_opts, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*c_check) return run_check(check_family, check_prop, check_opts);

    if (*c_construct) {
      ConstructionSpec spec = parse_construction(construct_spec);
      auto result = cached_result(construct_opts, "construct|" + to_string(spec), "construct",
                                  [&] {
                                    SetFamily fam = build(spec);
                                    json j;
                                    j["spec"] = to_string(spec);
                                    j["size"] = construction_size(spec).str();
                                    j["family"] = family_json(fam);
                                    return j;
                                  });
      std::string text = result["family"]["text"];
      if (!construct_out.empty()) {
        write_file(construct_out, text);
        if (construct_opts.format == "json") std::cout << result.dump(2) << "\n";
        else std::cout << "wrote " << result["size"].get<std::string>() << " sets to "
                       << construct_out << "\n";
      } else {
        emit(construct_opts, result, text);
      }
      return 0;
    }

    if (*c_formula) {
      Mode mode = f_mode == "plain" ? Mode::Plain : f_mode == "strong" ? Mode::Strong : Mode::Total;
      std::string key = "formula|n=" + std::to_string(f_n) + "|mode=" + f_mode +
                        "|p=" + std::to_string(f_p) + "|q=" + std::to_string(f_q);
      auto result = cached_result(formula_opts, key, "formula", [&] {
        return bound_report_json(extremal_formula(f_n, mode, f_p, f_q));
      });
      std::ostringstream text;
      text << result["maximum"].get<std::string>() << "  (attained by "
           << result["attained_by"].get<std::string>() << ")\n";
      if (result.contains("literal_maximum"))
        text << "literal variant: " << result["literal_maximum"].get<std::string>()
             << "  (attained by " << result["literal_attained_by"].get<std::string>() << ")\n";
      emit(formula_opts, result, text.str());
      return 0;
    }

    if (*c_extremal) {
      PropertySpec prop = parse_property(e_prop);
      std::string key = "extremal|n=" + std::to_string(e_n) + "|prop=" + to_string(prop) +
                        budget_key(extremal_opts);
      auto result = cached_result(extremal_opts, key, "extremal", [&] {
        return search_json(max_family_exact(e_n, prop, make_budget(extremal_opts)));
      });
      std::ostringstream text;
      text << "optimum " << result["optimum"].get<std::string>()
           << (result["exhaustive"].get<bool>() ? "" : " (budget-truncated, lower bound only)")
           << "  [" << result["nodes"].get<std::uint64_t>() << " nodes]\n"
           << result["witness"]["text"].get<std::string>();
      emit(extremal_opts, result, text.str());
      return 0;
    }

    if (*c_ground) {
      if (g_circle == g_chainpair)
        throw std::invalid_argument("ground: choose exactly one of --circle / --chainpair");
      WeightedGround ground;
      std::string gname;
      if (g_circle) {
        ground = circle_ground(g_n);
        gname = "circle";
      } else {
        std::vector<int> ordering;
        if (g_ordering.empty()) {
          ordering = identity_ordering(g_n);
        } else {
          std::istringstream os(g_ordering);
          std::string tok;
          while (std::getline(os, tok, ',')) ordering.push_back(std::stoi(tok));
        }
        ground = chain_pair_ground(g_n, ordering);
        gname = "chainpair";
        for (int e : ordering) gname += "." + std::to_string(e);
      }
      if (g_do_export || g_prop.empty()) {
        std::string text = serialize_ground(ground);
        if (!g_export.empty()) write_file(g_export, text);
        else std::cout << text;
        return 0;
      }
      PropertySpec prop = parse_property(g_prop);
      std::string key = "ground|" + gname + "|n=" + std::to_string(g_n) +
                        "|prop=" + to_string(prop) + budget_key(ground_opts);
      auto result = cached_result(ground_opts, key, "ground", [&] {
        return wsearch_json(max_weight_on_ground(ground, prop, make_budget(ground_opts)));
      });
      std::ostringstream text;
      text << "max weight " << result["optimum"].get<std::string>()
           << (result["exhaustive"].get<bool>() ? "" : " (budget-truncated, lower bound only)")
           << "  [" << result["nodes"].get<std::uint64_t>() << " nodes]\n"
           << result["witness"]["text"].get<std::string>();
      emit(ground_opts, result, text.str());
      return 0;
    }

    if (*c_certify) {
      PropertySpec prop = parse_property(ce_prop);
      std::string key = "certify|n=" + std::to_string(ce_n) + "|prop=" + to_string(prop) +
                        budget_key(certify_opts);
      auto result = cached_result(certify_opts, key, "certify", [&] {
        return certificate_json(certify(ce_n, prop, make_budget(certify_opts)));
      });
      std::ostringstream text;
      text << result["status"].get<std::string>() << ": lower "
           << result["lower"].get<std::string>() << " (" << result["lower_by"].get<std::string>()
           << "), upper " << result["upper"].get<std::string>() << " ("
           << result["upper_method"].get<std::string>() << ")\n";
      emit(certify_opts, result, text.str());
      return 0;
    }

    if (*c_conj) {
      std::string key = "conjecture|which=" + std::to_string(cj_which) +
                        "|n=" + std::to_string(cj_n) + "|p=" + std::to_string(cj_p) +
                        "|q=" + std::to_string(cj_q) + budget_key(conj_opts);
      auto result = cached_result(conj_opts, key, "conjecture", [&] {
        ConjectureReport rep = cj_which == 1
                                   ? conjecture1(cj_n, cj_p, cj_q, make_budget(conj_opts))
                                   : conjecture2(cj_n, cj_p, cj_q, make_budget(conj_opts));
        json j = conjecture_json(rep);
        j["rendered"] = conjecture_text(rep);
        return j;
      });
      emit(conj_opts, result, result["rendered"].get<std::string>());
      return 0;
    }

    if (*c_pc) {
      if (!pc_thm2_family.empty()) {
        std::string content = read_file(pc_thm2_family);
        std::string key = "proofcheck|thm2|" + content_hash(content);
        auto result = cached_result(pc_opts, key, "proofcheck", [&] {
          Decomposition d = thm2_decompose(parse_family(content));
          json j;
          j["input_valid"] = d.input_valid;
          if (d.input_violation) j["input_violation"] = witness_json(*d.input_violation);
          j["isolated"] = family_json(d.isolated);
          j["g1"] = family_json(d.g1);
          j["g2"] = family_json(d.g2);
          j["f1"] = family_json(d.f1);
          j["f1_complement_free"] = d.f1_complement_free;
          j["g2_complement_free"] = d.g2_complement_free;
          j["cross_sperner"] = d.cross_sperner_ok;
          j["cardinality_additive"] = d.cardinality_additive;
          j["bound_ok"] = d.bound_ok;
          j["all_claims_hold"] = d.all_claims_hold();
          if (!d.first_failed_claim.empty()) j["first_failed_claim"] = d.first_failed_claim;
          return j;
        });
        std::ostringstream text;
        text << (result["all_claims_hold"].get<bool>() ? "all decomposition claims hold"
                                                       : "claim failed: " +
                                                             result.value("first_failed_claim",
                                                                          std::string("?")))
             << "\n|G|=" << result["isolated"]["size"].get<std::size_t>()
             << " |G1|=" << result["g1"]["size"].get<std::size_t>()
             << " |G2|=" << result["g2"]["size"].get<std::size_t>()
             << " |F1|=" << result["f1"]["size"].get<std::size_t>() << "\n";
        emit(pc_opts, result, text.str());
        return result["all_claims_hold"].get<bool>() ? 0 : 1;
      }
      if (pc_hilton.size() == 2) {
        std::string c1 = read_file(pc_hilton[0]), c2 = read_file(pc_hilton[1]);
        std::string key = "proofcheck|hilton|" + content_hash(c1) + "|" + content_hash(c2);
        auto result = cached_result(pc_opts, key, "proofcheck", [&] {
          HiltonResult h = hilton_check(parse_family(c1), parse_family(c2));
          json j;
          j["status"] = h.status == HiltonResult::Status::Holds          ? "holds"
                        : h.status == HiltonResult::Status::BoundViolated ? "violated"
                                                                          : "hypothesis-failed";
          j["detail"] = h.detail;
          return j;
        });
        emit(pc_opts, result,
             result["status"].get<std::string>() + ": " + result["detail"].get<std::string>() +
                 "\n");
        return result["status"] == "violated" ? 1 : 0;
      }
      throw std::invalid_argument("proofcheck: give --thm2-family FILE or --hilton F1 F2");
    }

    if (*c_th) {
      std::string key = "threshold|p=" + std::to_string(th_p) + "|q=" + std::to_string(th_q) +
                        "|nmax=" + std::to_string(th_nmax);
      auto result = cached_result(th_opts, key, "threshold", [&] {
        ThresholdReport rep = threshold_scan(th_p, th_q, th_nmax);
        json j = threshold_json(rep);
        j["csv"] = threshold_csv(rep);
        return j;
      });
      std::string text;
      if (th_csv) {
        text = result["csv"].get<std::string>();
      } else {
        std::ostringstream os;
        os << "least n with x > y: "
           << (result.contains("least_n_x_gt_y")
                   ? std::to_string(result["least_n_x_gt_y"].get<int>())
                   : std::string("none up to nmax"))
           << "\n";
        if (result.contains("least_n_rotation_closes"))
          os << "least n where the rotation bound closes: "
             << result["least_n_rotation_closes"].get<int>() << "\n";
        for (const auto& row : result["rows"])
          os << "n=" << row["n"].get<int>() << "  x=" << row["x"].get<std::string>()
             << "  y=" << row["y"].get<std::string>()
             << (row["x_gt_y"].get<bool>() ? "  (x>y)" : "  (y>=x)") << "\n";
        text = os.str();
      }
      if (!th_out.empty()) {
        write_file(th_out, th_csv ? result["csv"].get<std::string>() : text);
        std::cout << "wrote " << th_out << "\n";
      } else {
        emit(th_opts, result, text);
      }
      return 0;
    }

    if (*c_sw) {
      auto dots = sw_range.find("..");
      if (dots == std::string::npos)
        throw std::invalid_argument("sweep: --n-range must look like 3..5");
      SweepOptions sopt;
      sopt.n_lo = std::stoi(sw_range.substr(0, dots));
      sopt.n_hi = std::stoi(sw_range.substr(dots + 2));
      if (sopt.n_lo < 1 || sopt.n_hi < sopt.n_lo)
        throw std::invalid_argument("sweep: bad --n-range");
      for (const auto& s : sw_props) sopt.properties.push_back(parse_property(s));
      sopt.budget = make_budget(sw_opts);
      sopt.force = sw_opts.force;
      ResultCache cache(sw_opts.cache_path);
      auto rows = sweep(sopt, cache);
      std::string csv = sweep_csv(rows);
      if (!sw_out.empty()) {
        write_file(sw_out, csv);
        std::cout << "wrote " << rows.size() << " rows to " << sw_out << "\n";
      } else if (sw_opts.format == "json") {
        json j = json::array();
        for (const auto& r : rows) j.push_back(r.row);
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << csv;
      }
      return 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
