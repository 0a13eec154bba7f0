#pragma once

// JSON schemas for triangulations, ribbon graphs, catalogs and reports, and
// the on-disk catalog cache. Exact values are written as "p/q" strings.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "json.hpp"

#include "dtregge/enumeration.hpp"
#include "dtregge/measure_engine.hpp"
#include "dtregge/pairing.hpp"

namespace dtregge {

using json = nlohmann::json;

inline constexpr const char* kCatalogSchema = "dtregge.catalog/1";
inline constexpr const char* kReportSchema = "dtregge.report/1";
/// Counting convention stamp; bump whenever the dedup convention changes.
inline constexpr const char* kConvention = "oriented-vertex-labelled-v1";

// ---------------------------------------------------------------------------
// Triangulation

inline json to_json(const Triangulation& t) {
  json faces = json::array(), gluing = json::array();
  for (const auto& f : t.faces()) faces.push_back({f[0], f[1], f[2]});
  for (const auto& [a, b] : t.gluing()) gluing.push_back({{a.face, a.slot}, {b.face, b.slot}});
  return {{"vertex_count", t.vertex_count()}, {"faces", faces}, {"gluing", gluing}};
}

inline Triangulation triangulation_from_json(const json& j) {
  try {
    std::vector<std::array<int, 3>> faces;
    for (const auto& f : j.at("faces")) {
      if (f.size() != 3) throw InputError("every face needs three corners");
      faces.push_back({f[0].get<int>(), f[1].get<int>(), f[2].get<int>()});
    }
    std::vector<SlotGluing> gluing;
    for (const auto& p : j.at("gluing")) {
      if (p.size() != 2 || p[0].size() != 2 || p[1].size() != 2) throw InputError("gluing entries are [[f,s],[f',s']]");
      gluing.emplace_back(SlotRef{p[0][0].get<int>(), p[0][1].get<int>()}, SlotRef{p[1][0].get<int>(), p[1][1].get<int>()});
    }
    return Triangulation::build(j.at("vertex_count").get<int>(), std::move(faces), gluing);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed triangulation JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// RibbonGraph

inline json to_json(const RibbonGraph& g) {
  json sigma = json::array(), alpha = json::array(), labels = json::object();
  for (const auto& c : g.vertex_cycles()) sigma.push_back(c);
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.edge_darts(e);
    alpha.push_back({a, b});
  }
  if (g.is_labelled())
    for (int i = 0; i < g.boundary_count(); ++i) labels[std::to_string(i)] = g.boundary_cycles()[i].label;
  return {{"darts", g.dart_count()}, {"sigma", sigma}, {"alpha", alpha}, {"boundary_labels", labels}};
}

inline RibbonGraph ribbon_graph_from_json(const json& j) {
  try {
    const int n = j.at("darts").get<int>();
    if (n <= 0) throw InputError("darts must be positive");
    std::vector<int> sigma(n, -1), alpha(n, -1);
    for (const auto& cyc : j.at("sigma")) {
      std::vector<int> c = cyc.get<std::vector<int>>();
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] < 0 || c[i] >= n || sigma[c[i]] != -1) throw InputError("sigma cycles must partition the darts");
        sigma[c[i]] = c[(i + 1) % c.size()];
      }
    }
    for (const auto& p : j.at("alpha")) {
      const int a = p.at(0).get<int>(), b = p.at(1).get<int>();
      if (a < 0 || a >= n || b < 0 || b >= n || alpha[a] != -1 || alpha[b] != -1)
        throw InputError("alpha pairs must partition the darts");
      alpha[a] = b;
      alpha[b] = a;
    }
    for (int d = 0; d < n; ++d)
      if (sigma[d] == -1 || alpha[d] == -1) throw InputError("dart " + std::to_string(d) + " missing from sigma or alpha");
    RibbonGraph bare = RibbonGraph::from_permutations(sigma, alpha);
    const json& lab = j.at("boundary_labels");
    if (lab.empty()) return bare;
    std::vector<int> labels(bare.boundary_count(), 0);
    for (auto it = lab.begin(); it != lab.end(); ++it) {
      const int i = std::stoi(it.key());
      if (i < 0 || i >= bare.boundary_count()) throw InputError("boundary label index out of range");
      labels[i] = it.value().get<int>();
    }
    return bare.with_labels(std::move(labels));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed ribbon graph JSON: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw InputError("boundary label keys must be cycle indices");
  }
}

// ---------------------------------------------------------------------------
// Catalog

inline json to_json(const CatalogKey& k) { return {{"genus", k.genus}, {"vertices", k.vertices}, {"q", k.q}}; }

inline CatalogKey key_from_json(const json& j) {
  return {j.at("genus").get<int>(), j.at("vertices").get<int>(), j.at("q").get<std::vector<int>>()};
}

inline json to_json(const Catalog& c) {
  json entries = json::array();
  for (const auto& e : c.entries)
    entries.push_back({{"triangulation", to_json(e.triangulation)},
                       {"ribbon_graph", to_json(e.graph)},
                       {"aut_boundary", e.aut_boundary},
                       {"code", to_hex(e.code)}});
  return {{"schema", kCatalogSchema},
          {"convention", kConvention},
          {"key", to_json(c.key)},
          {"entries", entries},
          {"cardinality", c.cardinality()}};
}

/// Re-runs the catalog invariants; throws InputError on the first violation.
inline void validate_catalog(const Catalog& c) {
  validate_key(c.key);
  std::set<CanonicalCode> seen;
  for (const auto& e : c.entries) {
    if (!seen.insert(e.code).second) throw InputError("duplicate canonical code in catalog");
    if (labelled_code(e.graph) != e.code) throw InputError("canonical code does not match its ribbon graph");
    if (!(dualize(e.triangulation) == e.graph)) throw InputError("ribbon graph is not the dual of its triangulation");
    if (curvature_assignments(e.triangulation) != c.key.q) throw InputError("entry does not realize the key's q-vector");
    if (e.triangulation.genus() != c.key.genus || graph_genus(e.graph) != c.key.genus) throw InputError("genus mismatch");
    if (!gauss_bonnet_check(e.triangulation).pass) throw InputError("Gauss-Bonnet fails for a catalog entry");
    if (static_cast<int>(automorphisms(e.graph, true).size()) != e.aut_boundary) throw InputError("wrong |Aut_boundary|");
  }
  if (!std::is_sorted(c.entries.begin(), c.entries.end(), [](const auto& a, const auto& b) { return a.code < b.code; }))
    throw InputError("catalog entries are not in code order");
}

inline Catalog catalog_from_json(const json& j) {
  try {
    if (j.at("schema").get<std::string>() != kCatalogSchema) throw InputError("unknown catalog schema");
    if (j.at("convention").get<std::string>() != kConvention) throw InputError("catalog written under another convention");
    Catalog c;
    c.key = key_from_json(j.at("key"));
    for (const auto& e : j.at("entries"))
      c.entries.push_back(CatalogEntry{triangulation_from_json(e.at("triangulation")),
                                       ribbon_graph_from_json(e.at("ribbon_graph")), e.at("aut_boundary").get<int>(),
                                       from_hex(e.at("code").get<std::string>())});
    if (j.at("cardinality").get<std::size_t>() != c.cardinality()) throw InputError("cardinality disagrees with entries");
    validate_catalog(c);
    return c;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed catalog JSON: ") + e.what());
  }
}

/// Catalog for a permuted q: sorted label i becomes perm[i] (1-based labels).
inline Catalog relabel_catalog(const Catalog& c, const CatalogKey& target) {
  const int n = c.key.vertices;
  std::vector<int> perm(n + 1, 0);
  std::vector<bool> used(n, false);
  for (int i = 0; i < n; ++i) {
    int k = 0;
    while (k < n && (used[k] || target.q[k] != c.key.q[i])) ++k;
    if (k == n) throw InputError("q-vectors are not permutations of each other");
    used[k] = true;
    perm[i + 1] = k + 1;
  }
  Catalog out;
  out.key = target;
  for (const auto& e : c.entries) {
    std::vector<int> labels = e.graph.labels();
    for (int& l : labels) l = perm[l];
    out.entries.push_back(make_entry(e.graph.with_labels(std::move(labels))));
  }
  std::sort(out.entries.begin(), out.entries.end(), [](const auto& a, const auto& b) { return a.code < b.code; });
  return out;
}

// ---------------------------------------------------------------------------
// Reports

inline json integer_json(const Integer& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return x.convert_to<long long>();
  return x.str();
}

inline json to_json(const KontsevichReport& r, const RibbonGraph& g) {
  return {{"graph", to_hex(labelled_code(g))},
          {"coefficient", integer_json(r.coefficient)},
          {"unnormalized", integer_json(r.unnormalized)},
          {"expected", integer_json(r.expected)},
          {"pass", r.pass}};
}

inline json to_json(const LerayVolume& v) { return {{"volume", to_string(v.volume)}, {"dim", v.dim}}; }

inline json to_json(const PairingReport& r) {
  json terms = json::array();
  for (const auto& t : r.breakdown)
    terms.push_back({{"code", t.code},
                     {"volume", to_string(t.volume)},
                     {"aut_boundary", t.aut_boundary},
                     {"contribution", to_string(t.contribution)}});
  return {{"key", to_json(r.key)},
          {"lhs", to_string(r.lhs)},
          {"rhs", to_string(r.rhs)},
          {"equal", r.equal},
          {"prefactor", to_string(r.prefactor)},
          {"breakdown", terms}};
}

inline PairingReport pairing_report_from_json(const json& j) {
  PairingReport r;
  r.key = key_from_json(j.at("key"));
  r.lhs = parse_rational(j.at("lhs").get<std::string>());
  r.rhs = parse_rational(j.at("rhs").get<std::string>());
  r.equal = j.at("equal").get<bool>();
  r.prefactor = parse_rational(j.at("prefactor").get<std::string>());
  for (const auto& t : j.at("breakdown"))
    r.breakdown.push_back({t.at("code").get<std::string>(), parse_rational(t.at("volume").get<std::string>()),
                           t.at("aut_boundary").get<int>(), parse_rational(t.at("contribution").get<std::string>())});
  return r;
}

/// Versioned wrapper for every command's machine output.
struct RunReport {
  std::string command;
  json inputs = json::object();
  json results = json::object();
  std::optional<double> seconds;  // only when timings were requested
};

inline json to_json(const RunReport& r) {
  json j = {{"schema", kReportSchema}, {"command", r.command}, {"inputs", r.inputs}, {"results", r.results}};
  if (r.seconds) j["timings"] = {{"seconds", *r.seconds}};
  return j;
}

inline RunReport run_report_from_json(const json& j) {
  if (j.at("schema").get<std::string>() != kReportSchema) throw InputError("unknown report schema");
  RunReport r;
  r.command = j.at("command").get<std::string>();
  r.inputs = j.at("inputs");
  r.results = j.at("results");
  if (j.contains("timings")) r.seconds = j.at("timings").at("seconds").get<double>();
  return r;
}

// ---------------------------------------------------------------------------
// Files and cache

inline json read_json_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw InputError("cannot read " + p.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("invalid JSON in " + p.string() + ": " + e.what());
  }
}

/// Write-temp-then-rename so readers never see a partial file.
inline void write_file_atomic(const std::filesystem::path& p, const std::string& text) {
  namespace fs = std::filesystem;
  if (p.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
  }
  fs::path tmp = p;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + p.string());
    out << text;
    if (!out.flush()) throw InputError("cannot write " + p.string());
  }
  std::error_code ec;
  fs::rename(tmp, p, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw InputError("cannot write " + p.string());
  }
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

class CatalogCache {
 public:
  explicit CatalogCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  /// Cache rooted at $DTREGGE_CACHE_DIR, or nothing when the variable is unset.
  static std::optional<CatalogCache> from_environment() {
    const char* d = std::getenv("DTREGGE_CACHE_DIR");
    if (!d || !*d) return std::nullopt;
    return CatalogCache(d);
  }

  const std::filesystem::path& directory() const { return dir_; }

  std::filesystem::path path_for(const CatalogKey& key) const {
    std::vector<int> q = key.q;
    std::sort(q.begin(), q.end());
    std::string name = "g" + std::to_string(key.genus) + "_n" + std::to_string(key.vertices) + "_q";
    for (std::size_t i = 0; i < q.size(); ++i) name += (i ? "-" : "") + std::to_string(q[i]);
    return dir_ / (name + "." + kConvention + ".json");
  }

  /// Cached catalog for the key, relabelled to the key's q order; nullopt when
  /// absent or when the stored file fails validation.
  std::optional<Catalog> load(const CatalogKey& key) const {
    auto p = path_for(key);
    if (!std::filesystem::exists(p)) return std::nullopt;
    try {
      Catalog sorted = catalog_from_json(read_json_file(p));
      CatalogKey sk = key;
      std::sort(sk.q.begin(), sk.q.end());
      if (!(sorted.key == sk)) return std::nullopt;
      return sk.q == key.q ? sorted : relabel_catalog(sorted, key);
    } catch (const InputError&) {
      return std::nullopt;
    }
  }

  void store(const Catalog& c) const {
    CatalogKey sk = c.key;
    std::sort(sk.q.begin(), sk.q.end());
    const Catalog sorted = sk.q == c.key.q ? c : relabel_catalog(c, sk);
    write_file_atomic(path_for(sk), dump(to_json(sorted)));
  }

  struct Listing {
    std::filesystem::path path;
    std::optional<CatalogKey> key;
    std::size_t cardinality = 0;
    bool valid = false;
    std::string error;
  };

  std::vector<Listing> list(bool verify) const {
    std::vector<Listing> out;
    if (!std::filesystem::exists(dir_)) return out;
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir_))
      if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      Listing l;
      l.path = f;
      try {
        json j = read_json_file(f);
        l.key = key_from_json(j.at("key"));
        l.cardinality = j.at("entries").size();
        if (verify) catalog_from_json(j);
        l.valid = true;
      } catch (const std::exception& e) {
        l.error = e.what();
      }
      out.push_back(std::move(l));
    }
    return out;
  }

 private:
  std::filesystem::path dir_;
};

/// Enumerates through the cache when one is configured.
inline Catalog cached_catalog(const CatalogKey& key, const EnumerationOptions& opt,
                              const std::optional<CatalogCache>& cache) {
  if (cache) {
    validate_key(key);
    if (auto c = cache->load(key)) return *c;
  }
  Catalog c = enumerate_triangulations(key, opt);
  if (cache) cache->store(c);
  return c;
}

}  // namespace dtregge
