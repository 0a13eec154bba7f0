#pragma once

// Closed oriented triangulated surfaces as Delta-complexes: faces with three
// cyclically ordered corners plus an explicit pairing of directed edge slots.
// Slot i of a face is the directed edge from corner i to corner (i+1) mod 3.

#include <array>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "dtregge/numeric.hpp"

namespace dtregge {

struct SlotRef {
  int face = 0;
  int slot = 0;

  int index() const { return 3 * face + slot; }
  static SlotRef from_index(int i) { return {i / 3, i % 3}; }
  friend bool operator==(const SlotRef&, const SlotRef&) = default;
  friend auto operator<=>(const SlotRef&, const SlotRef&) = default;
};

using SlotGluing = std::pair<SlotRef, SlotRef>;

class Triangulation {
 public:
  /// Validates the combinatorial data and derives edge count and genus.
  /// Throws InputError on any violated invariant.
  static Triangulation build(int vertex_count, std::vector<std::array<int, 3>> faces,
                             const std::vector<SlotGluing>& gluing);

  int vertex_count() const { return vertex_count_; }
  int face_count() const { return static_cast<int>(faces_.size()); }
  int edge_count() const { return 3 * face_count() / 2; }
  int euler_characteristic() const { return vertex_count() - edge_count() + face_count(); }
  int genus() const { return (2 - euler_characteristic()) / 2; }

  const std::vector<std::array<int, 3>>& faces() const { return faces_; }
  /// Label of corner `corner` of face `face` (labels are 1..N0).
  int corner_label(int face, int corner) const { return faces_[face][corner]; }
  SlotRef partner(SlotRef s) const { return SlotRef::from_index(partner_[s.index()]); }
  const std::vector<int>& partner_indices() const { return partner_; }

  /// Gluing as sorted pairs (lower slot index first).
  std::vector<SlotGluing> gluing() const {
    std::vector<SlotGluing> out;
    for (int i = 0; i < static_cast<int>(partner_.size()); ++i)
      if (i < partner_[i]) out.emplace_back(SlotRef::from_index(i), SlotRef::from_index(partner_[i]));
    return out;
  }

  friend bool operator==(const Triangulation&, const Triangulation&) = default;

 private:
  Triangulation() = default;
  int vertex_count_ = 0;
  std::vector<std::array<int, 3>> faces_;
  std::vector<int> partner_;
};

inline Triangulation Triangulation::build(int vertex_count, std::vector<std::array<int, 3>> faces,
                                          const std::vector<SlotGluing>& gluing) {
  if (vertex_count <= 0) throw InputError("vertex_count must be positive");
  if (faces.empty()) throw InputError("triangulation has no faces");
  const int nf = static_cast<int>(faces.size());
  const int nslots = 3 * nf;
  if (nslots % 2 != 0) throw InputError("odd number of edge slots; no perfect matching exists");

  std::vector<bool> used_label(vertex_count + 1, false);
  for (const auto& f : faces)
    for (int v : f) {
      if (v < 1 || v > vertex_count) throw InputError("corner label out of range 1..N0: " + std::to_string(v));
      used_label[v] = true;
    }
  for (int v = 1; v <= vertex_count; ++v)
    if (!used_label[v]) throw InputError("vertex label " + std::to_string(v) + " occurs in no corner");

  std::vector<int> partner(nslots, -1);
  for (const auto& [a, b] : gluing) {
    for (const SlotRef& s : {a, b})
      if (s.face < 0 || s.face >= nf || s.slot < 0 || s.slot > 2)
        throw InputError("slot reference out of range");
    if (a.face == b.face) throw InputError("face " + std::to_string(a.face) + " is glued to itself");
    if (partner[a.index()] != -1 || partner[b.index()] != -1)
      throw InputError("edge slot matched more than once");
    partner[a.index()] = b.index();
    partner[b.index()] = a.index();
    // slot (f,i) runs c_i -> c_{i+1}; its partner must run the other way
    const int a_from = faces[a.face][a.slot], a_to = faces[a.face][(a.slot + 1) % 3];
    const int b_from = faces[b.face][b.slot], b_to = faces[b.face][(b.slot + 1) % 3];
    if (a_from != b_to || a_to != b_from)
      throw InputError("vertex-pair mismatch across gluing of slots " + std::to_string(a.index()) + " and " +
                       std::to_string(b.index()));
  }
  for (int i = 0; i < nslots; ++i)
    if (partner[i] == -1) throw InputError("unmatched edge slot " + std::to_string(i));

  // connectivity over faces
  std::vector<int> parent(nf);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < nslots; ++i) parent[find(i / 3)] = find(partner[i] / 3);
  for (int f = 0; f < nf; ++f)
    if (find(f) != find(0)) throw InputError("triangulation is disconnected");

  // Corner classes: corner (f,i) sits at the start of slot (f,i); the next
  // corner around the same vertex is the start of slot next(partner(f,i)).
  std::vector<int> seen_label_class(vertex_count + 1, -1);
  std::vector<bool> visited(nslots, false);
  int classes = 0;
  for (int s = 0; s < nslots; ++s) {
    if (visited[s]) continue;
    const int label = faces[s / 3][s % 3];
    if (seen_label_class[label] != -1)
      throw InputError("vertex label " + std::to_string(label) + " is carried by two distinct vertices");
    seen_label_class[label] = classes++;
    for (int d = s; !visited[d];) {
      visited[d] = true;
      const int p = partner[d];
      d = 3 * (p / 3) + (p % 3 + 1) % 3;
    }
  }
  if (classes != vertex_count) throw InputError("vertex classes do not match vertex_count");

  const int chi = vertex_count - nslots / 2 + nf;
  if (chi > 2 || (2 - chi) % 2 != 0) throw InputError("Euler characteristic " + std::to_string(chi) + " gives no integer genus");

  Triangulation t;
  t.vertex_count_ = vertex_count;
  t.faces_ = std::move(faces);
  t.partner_ = std::move(partner);
  return t;
}

/// q(k): number of face corners carrying vertex label k, for k = 1..N0 (index k-1).
inline std::vector<int> curvature_assignments(const Triangulation& t) {
  std::vector<int> q(t.vertex_count(), 0);
  for (const auto& f : t.faces())
    for (int v : f) ++q[v - 1];
  return q;
}

/// Deficit angles r(k) = 2*pi - q(k)*pi/3 of the equilateral realization.
inline std::vector<PiMultiple> deficit_angles(const Triangulation& t) {
  std::vector<PiMultiple> r;
  for (int qk : curvature_assignments(t)) r.push_back({Rational(2) - Rational(qk, 3)});
  return r;
}

struct CurvatureData {
  std::vector<int> q;
  std::vector<PiMultiple> deficits;
  std::vector<Rational> divisor_coeffs;
  Rational degree;
  Rational euler_number;
};

inline CurvatureData divisor(const Triangulation& t) {
  CurvatureData d;
  d.q = curvature_assignments(t);
  d.deficits = deficit_angles(t);
  d.degree = 0;
  for (int qk : d.q) {
    d.divisor_coeffs.push_back(Rational(qk, 6) - 1);
    d.degree += d.divisor_coeffs.back();
  }
  d.euler_number = Rational(t.euler_characteristic()) + d.degree;
  return d;
}

struct GaussBonnetResult {
  PiMultiple total_curvature;
  PiMultiple expected;  // 2*pi*chi
  bool pass = false;
};

inline GaussBonnetResult gauss_bonnet_check(const Triangulation& t) {
  GaussBonnetResult res;
  res.total_curvature = {0};
  for (const auto& r : deficit_angles(t)) res.total_curvature = res.total_curvature + r;
  res.expected = {Rational(2 * t.euler_characteristic())};
  res.pass = res.total_curvature == res.expected;
  return res;
}

namespace examples {

/// Boundary of the tetrahedron, oriented consistently.
inline Triangulation tetrahedron() {
  // faces (1,2,3), (1,4,2), (2,4,3), (1,3,4)
  std::vector<std::array<int, 3>> f = {{1, 2, 3}, {1, 4, 2}, {2, 4, 3}, {1, 3, 4}};
  // match every directed slot with its reverse
  std::vector<SlotGluing> g;
  for (int a = 0; a < 4; ++a)
    for (int i = 0; i < 3; ++i)
      for (int b = a + 1; b < 4; ++b)
        for (int j = 0; j < 3; ++j)
          if (f[a][i] == f[b][(j + 1) % 3] && f[a][(i + 1) % 3] == f[b][j]) g.push_back({{a, i}, {b, j}});
  return Triangulation::build(4, f, g);
}

/// Two triangles on {1,2,3} glued along all three edges (sphere).
inline Triangulation double_triangle() {
  return Triangulation::build(3, {{1, 2, 3}, {2, 1, 3}}, {{{0, 0}, {1, 0}}, {{0, 1}, {1, 2}}, {{0, 2}, {1, 1}}});
}

/// The one-vertex, two-face torus.
inline Triangulation two_triangle_torus() {
  return Triangulation::build(1, {{1, 1, 1}, {1, 1, 1}}, {{{0, 0}, {1, 0}}, {{0, 1}, {1, 1}}, {{0, 2}, {1, 2}}});
}

}  // namespace examples

}  // namespace dtregge
