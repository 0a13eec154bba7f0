#pragma once

// Trivalent ribbon graphs as permutation triples on darts.
//
// Convention: sigma rotates darts counterclockwise around a vertex, alpha is
// the fixed-point-free edge involution, and boundary cycles are the orbits of
// the face permutation d -> sigma(alpha(d)). Every side ordering downstream
// (constraint matrices, the total 2-form) follows this traversal.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dtregge/complex_core.hpp"
#include "dtregge/numeric.hpp"

namespace dtregge {

using CanonicalCode = std::vector<std::uint8_t>;

inline std::string to_hex(const CanonicalCode& code) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  s.reserve(2 * code.size());
  for (auto b : code) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 15]);
  }
  return s;
}

inline CanonicalCode from_hex(const std::string& hex) {
  if (hex.size() % 2 != 0) throw InputError("hex code has odd length");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw InputError("invalid hex digit");
  };
  CanonicalCode code;
  for (std::size_t i = 0; i < hex.size(); i += 2)
    code.push_back(static_cast<std::uint8_t>(nibble(hex[i]) * 16 + nibble(hex[i + 1])));
  return code;
}

struct BoundaryCycle {
  std::vector<int> darts;  // in face-permutation order, starting at the smallest dart
  int label = 0;           // triangulation vertex label, 0 when unlabelled
  int sides() const { return static_cast<int>(darts.size()); }
};

class RibbonGraph {
 public:
  /// Validates a trivalent ribbon graph. `labels` is indexed by boundary cycle
  /// (cycles ordered by smallest dart); pass an empty vector for an unlabelled graph.
  static RibbonGraph from_permutations(std::vector<int> sigma, std::vector<int> alpha, std::vector<int> labels = {});

  /// Standard dart layout: vertex v owns darts 3v, 3v+1, 3v+2 in rotation order.
  static RibbonGraph from_alpha(std::vector<int> alpha, std::vector<int> labels = {}) {
    std::vector<int> sigma(alpha.size());
    for (int d = 0; d < static_cast<int>(alpha.size()); ++d) sigma[d] = 3 * (d / 3) + (d % 3 + 1) % 3;
    return from_permutations(std::move(sigma), std::move(alpha), std::move(labels));
  }

  int dart_count() const { return static_cast<int>(sigma_.size()); }
  int vertex_count() const { return dart_count() / 3; }
  int edge_count() const { return dart_count() / 2; }
  int boundary_count() const { return static_cast<int>(cycles_.size()); }

  const std::vector<int>& sigma() const { return sigma_; }
  const std::vector<int>& alpha() const { return alpha_; }
  int face_step(int d) const { return sigma_[alpha_[d]]; }

  const std::vector<BoundaryCycle>& boundary_cycles() const { return cycles_; }
  int boundary_of(int dart) const { return boundary_of_[dart]; }
  int label_of_dart(int dart) const { return cycles_[boundary_of_[dart]].label; }
  bool is_labelled() const { return labelled_; }
  std::vector<int> labels() const {
    std::vector<int> l;
    for (const auto& c : cycles_) l.push_back(c.label);
    return l;
  }
  /// Boundary cycle index carrying vertex label k (1-based), or -1.
  int boundary_with_label(int k) const {
    for (int i = 0; i < boundary_count(); ++i)
      if (cycles_[i].label == k) return i;
    return -1;
  }

  /// Edges are numbered by their smallest dart.
  int edge_of(int dart) const { return edge_of_[dart]; }
  std::pair<int, int> edge_darts(int e) const { return edge_darts_[e]; }

  /// Vertices are the sigma-cycles, numbered by their smallest dart.
  int vertex_of(int dart) const { return vertex_of_[dart]; }
  const std::vector<std::vector<int>>& vertex_cycles() const { return vertex_cycles_; }

  RibbonGraph with_labels(std::vector<int> labels) const { return from_permutations(sigma_, alpha_, std::move(labels)); }

  friend bool operator==(const RibbonGraph& a, const RibbonGraph& b) {
    return a.sigma_ == b.sigma_ && a.alpha_ == b.alpha_ && a.labels() == b.labels();
  }

 private:
  RibbonGraph() = default;
  std::vector<int> sigma_, alpha_;
  std::vector<BoundaryCycle> cycles_;
  std::vector<int> boundary_of_;
  std::vector<int> edge_of_;
  std::vector<std::pair<int, int>> edge_darts_;
  std::vector<int> vertex_of_;
  std::vector<std::vector<int>> vertex_cycles_;
  bool labelled_ = false;
};

inline RibbonGraph RibbonGraph::from_permutations(std::vector<int> sigma, std::vector<int> alpha, std::vector<int> labels) {
  const int n = static_cast<int>(sigma.size());
  if (n == 0 || static_cast<int>(alpha.size()) != n) throw InputError("sigma and alpha must be nonempty and of equal size");
  std::vector<int> hit(n, 0);
  for (int d = 0; d < n; ++d) {
    if (sigma[d] < 0 || sigma[d] >= n || alpha[d] < 0 || alpha[d] >= n) throw InputError("dart index out of range");
    ++hit[sigma[d]];
  }
  for (int d = 0; d < n; ++d)
    if (hit[d] != 1) throw InputError("sigma is not a permutation");
  for (int d = 0; d < n; ++d)
    if (alpha[d] == d || alpha[alpha[d]] != d) throw InputError("alpha is not a fixed-point-free involution");

  RibbonGraph g;
  g.sigma_ = std::move(sigma);
  g.alpha_ = std::move(alpha);

  g.vertex_of_.assign(n, -1);
  for (int d = 0; d < n; ++d) {
    if (g.vertex_of_[d] != -1) continue;
    std::vector<int> cyc;
    for (int e = d; g.vertex_of_[e] == -1; e = g.sigma_[e]) {
      g.vertex_of_[e] = static_cast<int>(g.vertex_cycles_.size());
      cyc.push_back(e);
    }
    if (cyc.size() != 3) throw InputError("ribbon graph is not trivalent");
    g.vertex_cycles_.push_back(std::move(cyc));
  }

  g.edge_of_.assign(n, -1);
  for (int d = 0; d < n; ++d) {
    if (g.edge_of_[d] != -1) continue;
    g.edge_of_[d] = g.edge_of_[g.alpha_[d]] = static_cast<int>(g.edge_darts_.size());
    g.edge_darts_.emplace_back(d, g.alpha_[d]);
  }

  g.boundary_of_.assign(n, -1);
  for (int d = 0; d < n; ++d) {
    if (g.boundary_of_[d] != -1) continue;
    BoundaryCycle c;
    for (int e = d; g.boundary_of_[e] == -1; e = g.face_step(e)) {
      g.boundary_of_[e] = static_cast<int>(g.cycles_.size());
      c.darts.push_back(e);
    }
    g.cycles_.push_back(std::move(c));
  }

  // connectivity through sigma and alpha
  std::vector<bool> reached(n, false);
  std::vector<int> stack{0};
  reached[0] = true;
  int count = 1;
  while (!stack.empty()) {
    int d = stack.back();
    stack.pop_back();
    for (int e : {g.sigma_[d], g.alpha_[d]})
      if (!reached[e]) {
        reached[e] = true;
        ++count;
        stack.push_back(e);
      }
  }
  if (count != n) throw InputError("ribbon graph is disconnected");

  const int chi = g.vertex_count() - g.edge_count() + g.boundary_count();
  if (chi > 2 || (2 - chi) % 2 != 0) throw InputError("ribbon graph has no integer genus");

  if (!labels.empty()) {
    if (static_cast<int>(labels.size()) != g.boundary_count()) throw InputError("one label per boundary cycle required");
    std::vector<int> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < static_cast<int>(sorted.size()); ++i)
      if (sorted[i] != i + 1) throw InputError("boundary labels must be a bijection onto 1..N0");
    for (int i = 0; i < g.boundary_count(); ++i) g.cycles_[i].label = labels[i];
    g.labelled_ = true;
  }
  return g;
}

/// Dual ribbon graph: one dart per (face, slot), rotation from the corner order,
/// edge involution from the slot gluing; the boundary around vertex k gets label k.
inline RibbonGraph dualize(const Triangulation& t) {
  RibbonGraph unlabelled = RibbonGraph::from_alpha(t.partner_indices());
  std::vector<int> labels(unlabelled.boundary_count());
  for (int i = 0; i < unlabelled.boundary_count(); ++i) {
    const int d = unlabelled.boundary_cycles()[i].darts.front();
    labels[i] = t.corner_label(d / 3, d % 3);
  }
  return unlabelled.with_labels(std::move(labels));
}

/// Inverse of dualize for labelled trivalent graphs: vertex cycles become faces
/// (ordered by smallest dart, corners starting at that dart).
inline Triangulation to_triangulation(const RibbonGraph& g) {
  if (!g.is_labelled()) throw InputError("ribbon graph must carry boundary labels");
  std::vector<std::array<int, 3>> faces;
  std::vector<SlotRef> slot_of(g.dart_count());
  for (int f = 0; f < g.vertex_count(); ++f) {
    const auto& cyc = g.vertex_cycles()[f];
    std::array<int, 3> corners{};
    for (int i = 0; i < 3; ++i) {
      corners[i] = g.label_of_dart(cyc[i]);
      slot_of[cyc[i]] = {f, i};
    }
    faces.push_back(corners);
  }
  std::vector<SlotGluing> gluing;
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.edge_darts(e);
    gluing.emplace_back(slot_of[a], slot_of[b]);
  }
  return Triangulation::build(g.boundary_count(), std::move(faces), gluing);
}

inline int graph_genus(int vertices, int edges, int boundaries) {
  const int chi = vertices - edges + boundaries;
  if (chi > 2 || (2 - chi) % 2 != 0)
    throw InputError("V - E + |boundary| = " + std::to_string(chi) + " gives no integer genus");
  return (2 - chi) / 2;
}

inline int graph_genus(const RibbonGraph& g) { return graph_genus(g.vertex_count(), g.edge_count(), g.boundary_count()); }

/// Side counts of the boundary cycles, indexed by label - 1 for labelled graphs
/// and by cycle index otherwise.
inline std::vector<int> boundary_side_counts(const RibbonGraph& g) {
  std::vector<int> s(g.boundary_count());
  for (int i = 0; i < g.boundary_count(); ++i) {
    const auto& c = g.boundary_cycles()[i];
    s[g.is_labelled() ? c.label - 1 : i] = c.sides();
  }
  return s;
}

struct EdgeRefinement {
  int vertex_count = 0;  // original vertices first, then one midpoint per edge
  std::vector<std::pair<int, int>> edges;
  std::vector<int> degrees;
};

inline EdgeRefinement edge_refinement(const RibbonGraph& g) {
  EdgeRefinement r;
  const int v = g.vertex_count();
  r.vertex_count = v + g.edge_count();
  r.degrees.assign(r.vertex_count, 0);
  for (int d = 0; d < g.dart_count(); ++d) {
    const int a = g.vertex_of(d), m = v + g.edge_of(d);
    r.edges.emplace_back(a, m);
    ++r.degrees[a];
    ++r.degrees[m];
  }
  return r;
}

/// Orientation reversal: sigma inverted; the mirrored boundary through dart d
/// keeps the label of the original boundary through alpha(d).
inline RibbonGraph mirror(const RibbonGraph& g) {
  std::vector<int> inv(g.dart_count());
  for (int d = 0; d < g.dart_count(); ++d) inv[g.sigma()[d]] = d;
  RibbonGraph m = RibbonGraph::from_permutations(inv, g.alpha());
  if (!g.is_labelled()) return m;
  std::vector<int> labels(m.boundary_count());
  for (int i = 0; i < m.boundary_count(); ++i) labels[i] = g.label_of_dart(g.alpha()[m.boundary_cycles()[i].darts.front()]);
  return m.with_labels(std::move(labels));
}

/// Renumber darts: dart d becomes perm[d].
inline RibbonGraph relabel_darts(const RibbonGraph& g, const std::vector<int>& perm) {
  const int n = g.dart_count();
  std::vector<int> sigma(n), alpha(n);
  for (int d = 0; d < n; ++d) {
    sigma[perm[d]] = perm[g.sigma()[d]];
    alpha[perm[d]] = perm[g.alpha()[d]];
  }
  RibbonGraph r = RibbonGraph::from_permutations(sigma, alpha);
  if (!g.is_labelled()) return r;
  std::vector<int> inv(n);
  for (int d = 0; d < n; ++d) inv[perm[d]] = d;
  std::vector<int> labels(r.boundary_count());
  for (int i = 0; i < r.boundary_count(); ++i) labels[i] = g.label_of_dart(inv[r.boundary_cycles()[i].darts.front()]);
  return r.with_labels(std::move(labels));
}

// ---------------------------------------------------------------------------
// Rooted breadth-first numbering, canonical codes and automorphisms.

/// Relabelling of a connected trivalent map seen from `root`: darts are numbered
/// in discovery order, each newly reached vertex entering at its arrival dart.
struct RootedForm {
  std::vector<int> order;   // new index -> old dart
  std::vector<int> alpha;   // involution in new numbering
  std::vector<int> labels;  // boundary label of each new dart (0 if unlabelled)
};

inline RootedForm rooted_form(const RibbonGraph& g, int root) {
  const int n = g.dart_count();
  RootedForm f;
  f.order.reserve(n);
  std::vector<int> index(n, -1);
  auto enter = [&](int d) {
    for (int e = d, k = 0; k < 3; ++k, e = g.sigma()[e]) {
      index[e] = static_cast<int>(f.order.size());
      f.order.push_back(e);
    }
  };
  enter(root);
  for (int i = 0; i < static_cast<int>(f.order.size()); ++i) {
    const int partner = g.alpha()[f.order[i]];
    if (index[partner] == -1) enter(partner);
  }
  f.alpha.resize(n);
  f.labels.resize(n);
  for (int i = 0; i < n; ++i) {
    f.alpha[i] = index[g.alpha()[f.order[i]]];
    f.labels[i] = g.label_of_dart(f.order[i]);
  }
  return f;
}

inline bool code_less(const RootedForm& a, const RootedForm& b) {
  if (a.alpha != b.alpha) return a.alpha < b.alpha;
  return a.labels < b.labels;
}

inline bool code_equal(const RootedForm& a, const RootedForm& b) { return a.alpha == b.alpha && a.labels == b.labels; }

inline CanonicalCode encode(const RootedForm& f) {
  CanonicalCode c;
  auto put = [&](int x) {
    c.push_back(static_cast<std::uint8_t>((x >> 8) & 0xff));
    c.push_back(static_cast<std::uint8_t>(x & 0xff));
  };
  put(static_cast<int>(f.alpha.size()));
  for (int a : f.alpha) put(a);
  for (int l : f.labels) put(l);
  return c;
}

/// Canonical form, unique per class of (oriented ribbon graph, boundary labelling)
/// under orientation- and label-preserving isomorphism.
inline CanonicalCode canonical_code(const RibbonGraph& g) {
  RootedForm best = rooted_form(g, 0);
  for (int r = 1; r < g.dart_count(); ++r) {
    RootedForm f = rooted_form(g, r);
    if (code_less(f, best)) best = std::move(f);
  }
  return encode(best);
}

using DartPermutation = std::vector<int>;

/// All orientation-preserving map automorphisms (dart bijections commuting with
/// sigma and alpha); when `fix_labels` is set, only those fixing every boundary label.
inline std::vector<DartPermutation> automorphisms(const RibbonGraph& g, bool fix_labels) {
  const int n = g.dart_count();
  RootedForm base = rooted_form(g, 0);
  std::vector<DartPermutation> out;
  for (int r = 0; r < n; ++r) {
    RootedForm f = rooted_form(g, r);
    if (f.alpha != base.alpha) continue;
    if (fix_labels && f.labels != base.labels) continue;
    DartPermutation phi(n);
    for (int i = 0; i < n; ++i) phi[base.order[i]] = f.order[i];
    out.push_back(std::move(phi));
  }
  return out;
}

inline DartPermutation compose(const DartPermutation& a, const DartPermutation& b) {
  DartPermutation c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
  return c;
}

struct AutomorphismGroup {
  int order = 0;
  std::vector<DartPermutation> generators;
  std::vector<DartPermutation> elements;
};

inline AutomorphismGroup make_group(std::vector<DartPermutation> elements) {
  AutomorphismGroup grp;
  grp.order = static_cast<int>(elements.size());
  std::set<DartPermutation> closure;
  DartPermutation id(elements.empty() ? 0 : elements.front().size());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
  closure.insert(id);
  for (const auto& e : elements) {
    if (closure.count(e)) continue;
    grp.generators.push_back(e);
    std::vector<DartPermutation> frontier(closure.begin(), closure.end());
    while (!frontier.empty()) {
      std::vector<DartPermutation> next;
      for (const auto& x : frontier)
        for (const auto& gen : grp.generators) {
          auto y = compose(gen, x);
          if (closure.insert(y).second) next.push_back(std::move(y));
        }
      frontier = std::move(next);
    }
  }
  grp.elements = std::move(elements);
  return grp;
}

/// Aut_boundary: orientation-preserving automorphisms fixing each labelled boundary.
inline AutomorphismGroup aut_boundary(const RibbonGraph& g) { return make_group(automorphisms(g, true)); }

inline AutomorphismGroup map_automorphism_group(const RibbonGraph& g) { return make_group(automorphisms(g, false)); }

namespace examples {

/// theta graph on the sphere, boundaries labelled 1,2,3 (dual of the double triangle).
inline RibbonGraph theta_sphere() { return dualize(double_triangle()); }
/// theta graph in the torus, single boundary word a b c a b c.
inline RibbonGraph theta_torus() { return dualize(two_triangle_torus()); }
/// K4 on the sphere, dual of the tetrahedron.
inline RibbonGraph k4() { return dualize(tetrahedron()); }

}  // namespace examples

}  // namespace dtregge
