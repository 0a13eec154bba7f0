#pragma once

// Exhaustive enumeration of dynamical triangulations with prescribed
// curvature assignments, carried out on the dual side: N0 labelled polygons
// (boundary k has q(k) sides) are glued side to side so that every vertex of
// the resulting ribbon graph is trivalent and no face of the triangulation is
// glued to itself. Classes are oriented and vertex-labelled.

#include <algorithm>
#include <atomic>
#include <functional>
#include <future>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>
#include <vector>

#include "dtregge/complex_core.hpp"
#include "dtregge/numeric.hpp"
#include "dtregge/ribbon_graph.hpp"

namespace dtregge {

struct CatalogKey {
  int genus = 0;
  int vertices = 0;
  std::vector<int> q;

  int faces() const { return 2 * (vertices + 2 * genus - 2); }
  friend bool operator==(const CatalogKey&, const CatalogKey&) = default;
};

struct CatalogEntry {
  Triangulation triangulation;
  RibbonGraph graph;
  int aut_boundary = 1;
  CanonicalCode code;
};

struct Catalog {
  CatalogKey key;
  std::vector<CatalogEntry> entries;

  std::size_t cardinality() const { return entries.size(); }
};

struct EnumerationOptions {
  int max_faces = 12;
  /// Worker count; 0 selects the hardware concurrency, 1 runs serially.
  unsigned threads = 0;
};

/// Throws InputError unless the key admits triangulations.
inline void validate_key(const CatalogKey& key) {
  if (key.genus < 0) throw InputError("genus must be nonnegative");
  if (key.vertices < 1) throw InputError("N0 must be positive");
  if (static_cast<int>(key.q.size()) != key.vertices)
    throw InputError("q has " + std::to_string(key.q.size()) + " entries, expected N0 = " + std::to_string(key.vertices));
  for (int x : key.q)
    if (x < 2) throw InputError("every q(k) must be at least 2");
  const int n2 = key.faces();
  if (n2 <= 0) throw InputError("N2 = 2(N0 + 2g - 2) must be positive");
  const int sum = std::accumulate(key.q.begin(), key.q.end(), 0);
  if (sum != 3 * n2)
    throw InputError("infeasible q: sum q = " + std::to_string(sum) + " but 3 N2 = " + std::to_string(3 * n2));
}

namespace detail {

/// Backtracking over side pairings of labelled polygons.
class GluingSearch {
 public:
  explicit GluingSearch(const std::vector<int>& q, bool allow_loops = false) : allow_loops_(allow_loops) {
    for (int k = 0; k < static_cast<int>(q.size()); ++k) {
      const int start = static_cast<int>(phi_.size());
      start_.push_back(start);
      for (int i = 0; i < q[k]; ++i) {
        polygon_.push_back(k);
        phi_.push_back(start + (i + 1) % q[k]);
        phi_inv_.push_back(start + (i + q[k] - 1) % q[k]);
        label_.push_back(k + 1);
      }
    }
    n_ = static_cast<int>(phi_.size());
    alpha_.assign(n_, -1);
    touched_.assign(q.size(), 0);
    first_polygon_ = q.front();
  }

  int darts() const { return n_; }

  /// Candidate partners of dart 0, used to split the search.
  std::vector<int> first_choices() const {
    std::vector<int> c;
    for (int e = 1; e < n_; ++e)
      if (!redundant(0, e)) c.push_back(e);
    return c;
  }

  /// Runs the subtree with alpha(0) = first; calls `emit` with each canonical code.
  void run(int first, const std::function<void(CanonicalCode)>& emit) {
    emit_ = &emit;
    if (assign(0, first)) recurse();
    unassign(0, first);
  }

 private:
  int sigma(int d) const { return alpha_[d] < 0 ? -1 : phi_[alpha_[d]]; }
  int sigma_inv(int d) const {
    const int p = phi_inv_[d];
    return alpha_[p];
  }

  bool chain_ok(int x) const {
    // forward along sigma
    std::vector<int> chain{x};
    int y = x;
    for (;;) {
      int z = sigma(y);
      if (z < 0) break;
      if (z == x) {
        if (chain.size() != 3) return false;
        if (allow_loops_) return true;
        for (int c : chain)
          if (std::find(chain.begin(), chain.end(), alpha_[c]) != chain.end()) return false;
        return true;
      }
      chain.push_back(z);
      if (chain.size() > 3) return false;
      y = z;
    }
    y = x;
    for (;;) {
      int z = sigma_inv(y);
      if (z < 0) break;
      chain.push_back(z);
      if (chain.size() > 3) return false;
      y = z;
    }
    if (allow_loops_) return true;
    for (int c : chain)
      if (alpha_[c] >= 0 && std::find(chain.begin(), chain.end(), alpha_[c]) != chain.end()) return false;
    return true;
  }

  // A polygon with no glued sides may be rotated freely; only its first side is tried.
  bool redundant(int d, int e) const {
    const int k = polygon_[e];
    return k != polygon_[d] && touched_[k] == 0 && e != start_[k];
  }

  bool assign(int d, int e) {
    alpha_[d] = e;
    alpha_[e] = d;
    ++touched_[polygon_[d]];
    ++touched_[polygon_[e]];
    return chain_ok(d) && chain_ok(e) && chain_ok(phi_[d]) && chain_ok(phi_[e]);
  }
  void unassign(int d, int e) {
    alpha_[d] = -1;
    alpha_[e] = -1;
    --touched_[polygon_[d]];
    --touched_[polygon_[e]];
  }

  // Unassigned dart with the most glued predecessors around its vertex, or -1.
  int next_dart() const {
    int best = -1, depth = -1;
    for (int d = 0; d < n_; ++d) {
      if (alpha_[d] >= 0) continue;
      int k = 0;
      for (int y = d; k < 2 && (y = sigma_inv(y)) >= 0;) ++k;
      if (k > depth) {
        best = d;
        depth = k;
        if (k == 2) break;
      }
    }
    return best;
  }

  void recurse() {
    const int d = next_dart();
    if (d < 0) {
      finish();
      return;
    }
    for (int e = 0; e < n_; ++e) {
      if (e == d || alpha_[e] >= 0 || redundant(d, e)) continue;
      if (assign(d, e)) recurse();
      unassign(d, e);
    }
  }

  void finish() {
    // connectivity of the polygons through alpha
    std::vector<int> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (int d = 0; d < n_; ++d) {
      parent[find(d)] = find(phi_[d]);
      parent[find(d)] = find(alpha_[d]);
    }
    for (int d = 0; d < n_; ++d)
      if (find(d) != find(0)) return;
    (*emit_)(code());
  }

  // Rooted breadth-first form from a dart, compared over the darts of boundary 1.
  void rooted(int root, std::vector<int>& order, std::vector<int>& index, std::vector<int>& out) const {
    order.clear();
    std::fill(index.begin(), index.end(), -1);
    auto enter = [&](int d) {
      for (int k = 0; k < 3; ++k, d = sigma(d)) {
        index[d] = static_cast<int>(order.size());
        order.push_back(d);
      }
    };
    enter(root);
    for (std::size_t i = 0; i < order.size(); ++i) {
      const int p = alpha_[order[i]];
      if (index[p] == -1) enter(p);
    }
    out.resize(2 * n_);
    for (int i = 0; i < n_; ++i) {
      out[i] = index[alpha_[order[i]]];
      out[n_ + i] = label_[order[i]];
    }
  }

  CanonicalCode code() const {
    std::vector<int> order, index(n_), best, cur;
    rooted(0, order, index, best);
    for (int r = 1; r < first_polygon_; ++r) {
      rooted(r, order, index, cur);
      if (cur < best) best.swap(cur);
    }
    CanonicalCode c;
    auto put = [&](int x) {
      c.push_back(static_cast<std::uint8_t>((x >> 8) & 0xff));
      c.push_back(static_cast<std::uint8_t>(x & 0xff));
    };
    put(n_);
    for (int x : best) put(x);
    return c;
  }

  std::vector<int> phi_, phi_inv_, label_, alpha_, polygon_, start_, touched_;
  int n_ = 0;
  int first_polygon_ = 0;
  bool allow_loops_ = false;
  const std::function<void(CanonicalCode)>* emit_ = nullptr;
};

/// Graph in breadth-first numbering decoded from a code produced by GluingSearch.
inline RibbonGraph decode_code(const CanonicalCode& c) {
  auto get = [&](std::size_t i) { return (static_cast<int>(c.at(2 * i)) << 8) | c.at(2 * i + 1); };
  const int n = get(0);
  if (c.size() != static_cast<std::size_t>(2 * (1 + 2 * n))) throw InputError("canonical code has wrong length");
  std::vector<int> alpha(n), dart_label(n);
  for (int i = 0; i < n; ++i) {
    alpha[i] = get(1 + i);
    dart_label[i] = get(1 + n + i);
  }
  RibbonGraph bare = RibbonGraph::from_alpha(alpha);
  std::vector<int> labels;
  for (const auto& cyc : bare.boundary_cycles()) labels.push_back(dart_label[cyc.darts.front()]);
  return bare.with_labels(std::move(labels));
}

}  // namespace detail

/// Labelled code of a graph, minimized over the roots on boundary label 1.
/// Agrees with the enumerator's deduplication key.
inline CanonicalCode labelled_code(const RibbonGraph& g) {
  if (!g.is_labelled()) throw InputError("labelled code needs boundary labels");
  const int b = g.boundary_with_label(1);
  RootedForm best;
  bool have = false;
  for (int r : g.boundary_cycles()[b].darts) {
    RootedForm f = rooted_form(g, r);
    if (!have || code_less(f, best)) {
      best = std::move(f);
      have = true;
    }
  }
  return encode(best);
}

inline CatalogEntry make_entry(const RibbonGraph& g) {
  CanonicalCode code = labelled_code(g);
  RibbonGraph canon = detail::decode_code(code);
  return CatalogEntry{to_triangulation(canon), canon, static_cast<int>(automorphisms(canon, true).size()), code};
}

/// Codes of all connected trivalent ribbon graphs whose boundary k has
/// `sides[k]` sides. Loops (faces glued to themselves on the dual side) are
/// rejected unless `allow_loops` is set.
inline std::set<CanonicalCode> enumerate_graph_codes(const std::vector<int>& sides, bool allow_loops, unsigned threads) {
  std::set<CanonicalCode> codes;
  detail::GluingSearch probe(sides, allow_loops);
  const std::vector<int> choices = probe.first_choices();
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(choices.size()));
  if (threads <= 1) {
    std::function<void(CanonicalCode)> emit = [&](CanonicalCode c) { codes.insert(std::move(c)); };
    for (int first : choices) probe.run(first, emit);
    return codes;
  }
  std::mutex mu;
  std::atomic<std::size_t> next{0};
  std::vector<std::future<void>> workers;
  for (unsigned t = 0; t < threads; ++t)
    workers.push_back(std::async(std::launch::async, [&] {
      detail::GluingSearch s(sides, allow_loops);
      std::set<CanonicalCode> local;
      std::function<void(CanonicalCode)> emit = [&](CanonicalCode c) { local.insert(std::move(c)); };
      for (std::size_t i; (i = next++) < choices.size();) s.run(choices[i], emit);
      std::lock_guard<std::mutex> lock(mu);
      codes.insert(local.begin(), local.end());
    }));
  for (auto& w : workers) w.get();
  return codes;
}

inline Catalog enumerate_triangulations(const CatalogKey& key, const EnumerationOptions& opt = {}) {
  validate_key(key);
  if (key.faces() > opt.max_faces)
    throw ResourceCapExceeded("N2 = " + std::to_string(key.faces()) + " exceeds the face cap " + std::to_string(opt.max_faces));
  Catalog cat;
  cat.key = key;
  for (const auto& c : enumerate_graph_codes(key.q, false, opt.threads)) {
    RibbonGraph g = detail::decode_code(c);
    cat.entries.push_back(CatalogEntry{to_triangulation(g), g, static_cast<int>(automorphisms(g, true).size()), c});
  }
  return cat;
}

/// Nondecreasing q-vectors with q(k) >= min_part and sum 6(N0 + 2g - 2).
inline std::vector<std::vector<int>> sorted_q_vectors(int genus, int vertices, int min_part = 2) {
  std::vector<std::vector<int>> out;
  const int total = 6 * (vertices + 2 * genus - 2);
  if (vertices < 1 || total <= 0) return out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int remaining, int min_part) {
    const int left = vertices - static_cast<int>(cur.size());
    if (left == 0) {
      if (remaining == 0) out.push_back(cur);
      return;
    }
    for (int x = min_part; x * left <= remaining; ++x) {
      cur.push_back(x);
      rec(remaining - x, x);
      cur.pop_back();
    }
  };
  rec(total, min_part);
  return out;
}

/// All q-vectors (ordered) with q(k) >= min_part and sum 6(N0 + 2g - 2).
inline std::vector<std::vector<int>> all_q_vectors(int genus, int vertices, int min_part = 2) {
  std::vector<std::vector<int>> out;
  for (auto v : sorted_q_vectors(genus, vertices, min_part)) do
      out.push_back(v);
    while (std::next_permutation(v.begin(), v.end()));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dtregge
