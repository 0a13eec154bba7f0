#pragma once

// Command-line front end. run_cli parses arguments, dispatches a subcommand
// and returns the process exit code:
//   0 success / pass, 1 check failure, 2 input error, 3 resource cap.

#include <chrono>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dtregge/io.hpp"
#include "dtregge/polygon_space.hpp"
#include "dtregge/regge_geometry.hpp"

namespace dtregge {

enum ExitCode : int { kExitPass = 0, kExitCheckFailed = 1, kExitInputError = 2, kExitResourceCap = 3 };

namespace cli {

struct Options {
  int genus = 0;
  int vertices = 0;
  std::vector<int> q;
  std::vector<int> exponents;
  std::string in, out;
  unsigned long seed = 1;
  unsigned precision = kDefaultRealDigits;
  int max_faces = 12;
  unsigned threads = 0;
  bool enable_dvv = false;
  bool timings = false;
  std::string check_kind;
};

inline void emit(const json& j, const Options& o, std::ostream& os) {
  if (o.out.empty())
    os << dump(j);
  else
    write_file_atomic(o.out, dump(j));
}

inline CatalogKey key_of(const Options& o) {
  CatalogKey k{o.genus, o.vertices, o.q};
  if (k.vertices == 0) k.vertices = static_cast<int>(k.q.size());
  return k;
}

/// Classifies an input document by its fields.
enum class DocKind { Catalog, Triangulation, RibbonGraph, Unknown };

inline DocKind kind_of(const json& j) {
  if (!j.is_object()) return DocKind::Unknown;
  if (j.contains("schema") && j.contains("entries")) return DocKind::Catalog;
  if (j.contains("faces") && j.contains("gluing")) return DocKind::Triangulation;
  if (j.contains("sigma") && j.contains("alpha")) return DocKind::RibbonGraph;
  return DocKind::Unknown;
}

/// Labelled ribbon graphs contained in a catalog, triangulation or graph document.
inline std::vector<RibbonGraph> graphs_in(const json& j) {
  switch (kind_of(j)) {
    case DocKind::Catalog: {
      std::vector<RibbonGraph> g;
      for (const auto& e : catalog_from_json(j).entries) g.push_back(e.graph);
      return g;
    }
    case DocKind::Triangulation: return {dualize(triangulation_from_json(j))};
    case DocKind::RibbonGraph: return {ribbon_graph_from_json(j)};
    default: throw InputError("input is neither a catalog, a triangulation nor a ribbon graph");
  }
}

inline std::vector<Triangulation> triangulations_in(const json& j) {
  switch (kind_of(j)) {
    case DocKind::Catalog: {
      std::vector<Triangulation> t;
      for (const auto& e : catalog_from_json(j).entries) t.push_back(e.triangulation);
      return t;
    }
    case DocKind::Triangulation: return {triangulation_from_json(j)};
    case DocKind::RibbonGraph: return {to_triangulation(ribbon_graph_from_json(j))};
    default: throw InputError("input is neither a catalog, a triangulation nor a ribbon graph");
  }
}

inline json require_input(const Options& o) {
  if (o.in.empty()) throw InputError("--in is required");
  json j = read_json_file(o.in);
  // a saved report: use the document it carries
  if (j.is_object() && j.value("schema", "") == "dtregge.report/1" && j.contains("results")) return j["results"];
  return j;
}

inline int cmd_enumerate(const Options& o, RunReport& r) {
  CatalogKey key = key_of(o);
  r.inputs = {{"key", to_json(key)}, {"max_faces", o.max_faces}};
  EnumerationOptions opt;
  opt.max_faces = o.max_faces;
  opt.threads = o.threads;
  Catalog c = cached_catalog(key, opt, CatalogCache::from_environment());
  r.results = to_json(c);
  return kExitPass;
}

inline int cmd_dual(const Options& o, RunReport& r) {
  json in = require_input(o);
  r.inputs = {{"in", o.in}};
  Triangulation t = triangulations_in(in).at(0);
  RibbonGraph g = dualize(t);
  r.results = {{"ribbon_graph", to_json(g)},
               {"boundary_sides", boundary_side_counts(g)},
               {"q", curvature_assignments(t)},
               {"genus", graph_genus(g)},
               {"aut_boundary", static_cast<int>(automorphisms(g, true).size())},
               {"code", to_hex(labelled_code(g))}};
  return kExitPass;
}

inline int check_gauss_bonnet(const Options& o, RunReport& r) {
  json in = require_input(o);
  json rows = json::array();
  bool all = true;
  for (const auto& t : triangulations_in(in)) {
    auto res = gauss_bonnet_check(t);
    all = all && res.pass;
    rows.push_back({{"total_curvature", res.total_curvature.str()}, {"expected", res.expected.str()}, {"pass", res.pass}});
  }
  r.results = {{"entries", rows}, {"pass", all}};
  return all ? kExitPass : kExitCheckFailed;
}

inline int check_kontsevich(const Options& o, RunReport& r) {
  json in = require_input(o);
  json rows = json::array();
  bool all = true;
  for (const auto& g : graphs_in(in)) {
    auto k = kontsevich_check(g);
    all = all && k.pass;
    rows.push_back(to_json(k, g));
  }
  r.results = {{"entries", rows}, {"pass", all}};
  return all ? kExitPass : kExitCheckFailed;
}

inline CornerFan fan_from_json(const json& f) {
  std::vector<Rational> s, l;
  for (const auto& x : f.at("spokes_sq")) s.push_back(parse_rational(x.is_string() ? x.get<std::string>() : x.dump()));
  for (const auto& x : f.at("links_sq")) l.push_back(parse_rational(x.is_string() ? x.get<std::string>() : x.dump()));
  return CornerFan(f.value("vertex", 0), std::move(s), std::move(l));
}

inline int check_median(const Options& o, RunReport& r) {
  std::vector<CornerFan> fans;
  if (!o.in.empty()) {
    json in = read_json_file(o.in);
    try {
      if (in.contains("fans"))
        for (const auto& f : in.at("fans")) fans.push_back(fan_from_json(f));
      else
        fans.push_back(fan_from_json(in));
    } catch (const json::exception& e) {
      throw InputError(std::string("malformed fan JSON: ") + e.what());
    }
  } else {
    for (int q : o.q.empty() ? std::vector<int>{2, 3, 4, 5, 6, 7, 8} : o.q) fans.push_back(CornerFan::equilateral(q));
  }
  json rows = json::array();
  bool all = true;
  for (const auto& f : fans) {
    auto d = half_edge_lengths(f);
    Rational res = median_identity_residual(d);
    all = all && res == 0;
    rows.push_back({{"q", f.size()}, {"residual", to_string(res)}, {"pass", res == 0}});
  }
  r.results = {{"entries", rows}, {"pass", all}};
  return all ? kExitPass : kExitCheckFailed;
}

inline int check_rank(const Options& o, RunReport& r) {
  std::vector<int> qs = o.q;
  if (!o.in.empty()) {
    json in = read_json_file(o.in);
    try {
      qs = in.at("q").get<std::vector<int>>();
    } catch (const json::exception& e) {
      throw InputError(std::string("malformed rank input: ") + e.what());
    }
  }
  if (qs.empty()) qs = {3, 4, 5, 6, 7, 8};
  json rows = json::array();
  bool all = true;
  for (int q : qs) {
    auto rep = tangent_rank(exact_equilateral_polygon(q));
    const bool ok = rep.rank == q - 1;
    all = all && ok;
    rows.push_back({{"q", q}, {"rank", rep.rank}, {"kernel_dimension", rep.kernel_dimension}, {"pass", ok}});
  }
  r.results = {{"entries", rows}, {"pass", all}};
  return all ? kExitPass : kExitCheckFailed;
}

inline int cmd_check(const Options& o, RunReport& r) {
  r.inputs = {{"kind", o.check_kind}, {"in", o.in}};
  if (o.check_kind == "gauss-bonnet") return check_gauss_bonnet(o, r);
  if (o.check_kind == "kontsevich") return check_kontsevich(o, r);
  if (o.check_kind == "median") return check_median(o, r);
  if (o.check_kind == "rank") return check_rank(o, r);
  throw InputError("unknown check kind '" + o.check_kind + "'");
}

inline int cmd_volume(const Options& o, RunReport& r) {
  json in = require_input(o);
  r.inputs = {{"in", o.in}};
  json rows = json::array();
  for (const auto& g : graphs_in(in)) {
    json v = to_json(leray_volume(g));
    v["graph"] = to_hex(labelled_code(g));
    rows.push_back(v);
  }
  r.results = {{"entries", rows}};
  return kExitPass;
}

inline int cmd_tau(const Options& o, RunReport& r) {
  IntersectionNumbers tau(o.enable_dvv);
  if (!o.exponents.empty()) {
    r.inputs = {{"genus", o.genus}, {"exponents", o.exponents}};
    r.results = {{"value", to_string(tau(o.genus, o.exponents))}};
    return kExitPass;
  }
  if (o.q.empty()) throw InputError("tau needs --exponents or --q");
  r.inputs = {{"genus", o.genus}, {"q", o.q}};
  r.results = {{"F", to_string(generating_F(o.genus, o.q, tau))}};
  return kExitPass;
}

inline int cmd_pairing(const Options& o, RunReport& r) {
  CatalogKey key = key_of(o);
  r.inputs = {{"key", to_json(key)}};
  EnumerationOptions opt;
  opt.max_faces = o.max_faces;
  opt.threads = o.threads;
  Catalog c = cached_catalog(key, opt, CatalogCache::from_environment());
  PairingReport p = duality_pairing(c, o.enable_dvv);
  r.results = to_json(p);
  if (!p.equal) {
    // diagnostics: the sum over every cell of the moduli space at perimeters q
    FullCellSum full = full_cell_sum(key.genus, key.q, o.threads, o.enable_dvv);
    r.results["diagnostics"] = {{"all_cells_lhs", to_string(full.lhs)},
                                {"all_cells_graphs", full.graphs},
                                {"all_cells_contributing", full.contributing},
                                {"catalog_lhs", to_string(full.catalog_part)}};
  }
  return p.equal ? kExitPass : kExitCheckFailed;
}

inline int cmd_cache(const std::string& action, RunReport& r) {
  auto cache = CatalogCache::from_environment();
  if (!cache) throw InputError("DTREGGE_CACHE_DIR is not set");
  r.inputs = {{"action", action}, {"directory", cache->directory().string()}};
  json rows = json::array();
  bool all = true;
  for (const auto& l : cache->list(action == "verify")) {
    json row = {{"file", l.path.filename().string()}, {"cardinality", l.cardinality}, {"valid", l.valid}};
    if (l.key) row["key"] = to_json(*l.key);
    if (!l.error.empty()) row["error"] = l.error;
    all = all && l.valid;
    rows.push_back(row);
  }
  r.results = {{"files", rows}, {"pass", all}};
  return all ? kExitPass : kExitCheckFailed;
}

}  // namespace cli

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  using namespace cli;
  Options o;
  CLI::App app{"Dynamical triangulations, Regge polytopes and intersection numbers"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--precision", o.precision, "Decimal digits for floating checks");
  app.add_option("--seed", o.seed, "Seed for randomized checks");
  app.add_flag("--timings", o.timings, "Add wall-clock timings to the report");
  app.add_option("--out", o.out, "Write the JSON report here instead of stdout");

  auto add_key = [&](CLI::App* s) {
    s->add_option("--genus", o.genus, "Genus g")->check(CLI::NonNegativeNumber);
    s->add_option("--vertices", o.vertices, "Vertex count N0");
    s->add_option("--q", o.q, "Curvature assignments, e.g. 3,3,3,3")->delimiter(',');
    s->add_option("--max-faces", o.max_faces, "Face cap for enumeration");
    s->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  };

  auto* en = app.add_subcommand("enumerate", "Enumerate triangulations for a curvature key");
  add_key(en);
  auto* du = app.add_subcommand("dual", "Dual ribbon graph of a triangulation");
  du->add_option("--in", o.in, "Triangulation JSON")->required();
  auto* ch = app.add_subcommand("check", "Run an invariant check");
  ch->add_option("kind", o.check_kind, "gauss-bonnet | kontsevich | median | rank")
      ->required()
      ->check(CLI::IsMember({"gauss-bonnet", "kontsevich", "median", "rank"}));
  ch->add_option("--in", o.in, "Input JSON");
  ch->add_option("--q", o.q, "q values for median/rank")->delimiter(',');
  auto* vo = app.add_subcommand("volume", "Leray volumes of ribbon graph polytopes");
  vo->add_option("--in", o.in, "Catalog, triangulation or ribbon graph JSON")->required();
  auto* ta = app.add_subcommand("tau", "Intersection numbers and F_g");
  ta->add_option("--genus", o.genus, "Genus g")->check(CLI::NonNegativeNumber);
  ta->add_option("--exponents", o.exponents, "Exponents d1,...,dn")->delimiter(',');
  ta->add_option("--q", o.q, "Curvature assignments for F_g")->delimiter(',');
  ta->add_flag("--enable-dvv", o.enable_dvv, "Allow genus >= 2 through the DVV recursion");
  auto* pa = app.add_subcommand("pairing", "Duality pairing for a curvature key");
  add_key(pa);
  pa->add_flag("--enable-dvv", o.enable_dvv, "Allow genus >= 2 through the DVV recursion");
  auto* ca = app.add_subcommand("cache", "Inspect the catalog cache");
  std::string cache_action;
  ca->add_option("action", cache_action, "ls | verify")->required()->check(CLI::IsMember({"ls", "verify"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  set_real_digits(o.precision);
  RunReport report;
  const auto t0 = std::chrono::steady_clock::now();
  int code = kExitPass;
  try {
    if (en->parsed()) {
      report.command = "enumerate";
      code = cmd_enumerate(o, report);
    } else if (du->parsed()) {
      report.command = "dual";
      code = cmd_dual(o, report);
    } else if (ch->parsed()) {
      report.command = "check";
      code = cmd_check(o, report);
    } else if (vo->parsed()) {
      report.command = "volume";
      code = cmd_volume(o, report);
    } else if (ta->parsed()) {
      report.command = "tau";
      code = cmd_tau(o, report);
    } else if (pa->parsed()) {
      report.command = "pairing";
      code = cmd_pairing(o, report);
    } else if (ca->parsed()) {
      report.command = "cache";
      code = cmd_cache(cache_action, report);
    }
    if (o.timings) report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit(to_json(report), o, out);
  } catch (const ResourceCapExceeded& e) {
    err << "resource cap: " << e.what() << "\n";
    return kExitResourceCap;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInputError;
  }
  return code;
}

}  // namespace dtregge
