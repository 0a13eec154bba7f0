#pragma once

// Independent oracles shared by the test suites. Nothing here calls the
// library's own algorithms for the quantity being checked.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "dtregge/dtregge.hpp"

namespace oracle {

using dtregge::Integer;
using dtregge::Rational;

/// splitmix64; small, seedable and identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  int uniform(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
  /// Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0); }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[next() % i]);
  }

 private:
  std::uint64_t s_;
};

// ---------------------------------------------------------------------------
// Exterior algebra over Z with basis monomials as bitmasks.

using Form = std::map<std::uint64_t, Integer>;

inline int merge_sign(std::uint64_t a, std::uint64_t b) {
  int swaps = 0;
  for (std::uint64_t m = b; m; m &= m - 1) {
    const int j = std::countr_zero(m);
    swaps += std::popcount(a >> (j + 1));
  }
  return swaps % 2 ? -1 : 1;
}

inline Form wedge(const Form& x, const Form& y) {
  Form out;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y) {
      if (a & b) continue;
      Integer c = ca * cb;
      if (merge_sign(a, b) < 0) c = -c;
      out[a | b] += c;
    }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

inline Form two_form(const dtregge::Matrix<Integer>& b) {
  Form f;
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = i + 1; j < b.cols(); ++j)
      if (b(i, j) != 0) f[(std::uint64_t{1} << i) | (std::uint64_t{1} << j)] = b(i, j);
  return f;
}

inline Form one_form(const std::vector<Integer>& c) {
  Form f;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) f[std::uint64_t{1} << i] = c[i];
  return f;
}

inline Form unit_form() { return Form{{0, Integer(1)}}; }

inline Integer top_coefficient(const Form& f, int n) {
  const std::uint64_t top = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  auto it = f.find(top);
  return it == f.end() ? Integer(0) : it->second;
}

/// Pfaffian as the top coefficient of omega^n / n!.
inline Integer pfaffian_by_wedge(const dtregge::Matrix<Integer>& b) {
  const int n = static_cast<int>(b.rows());
  if (n == 0) return 1;
  Form w = two_form(b), p = unit_form();
  for (int i = 0; i < n / 2; ++i) p = wedge(p, w);
  return top_coefficient(p, n) / dtregge::factorial(static_cast<unsigned>(n / 2));
}

/// Coefficient of dL_1 ^ ... ^ dL_N1 in prod_k d eta(k) ^ Omega^D / D!, fully expanded.
inline Integer kontsevich_by_wedge(const dtregge::RibbonGraph& g) {
  auto c = dtregge::incidence_matrix(g);
  auto b = dtregge::total_form(g).b;
  Form acc = unit_form();
  for (std::size_t k = 0; k < c.a.rows(); ++k) {
    std::vector<Integer> row;
    for (std::size_t j = 0; j < c.a.cols(); ++j) row.push_back(c.a(k, j));
    acc = wedge(acc, one_form(row));
  }
  const int d = (g.edge_count() - g.boundary_count()) / 2;
  Form w = two_form(b);
  for (int i = 0; i < d; ++i) acc = wedge(acc, w);
  return top_coefficient(acc, g.edge_count()) / dtregge::factorial(static_cast<unsigned>(d));
}

// ---------------------------------------------------------------------------
// Brute-force ribbon graph isomorphism: vertex bijections times rotations.

/// Dart maps a -> b commuting with sigma and alpha; labels must match when `labels` is set.
inline std::vector<std::vector<int>> isomorphisms(const dtregge::RibbonGraph& a, const dtregge::RibbonGraph& b,
                                                  bool labels, bool stop_at_first = false) {
  std::vector<std::vector<int>> out;
  if (a.dart_count() != b.dart_count()) return out;
  const int v = a.vertex_count();
  std::vector<int> perm(v);
  std::iota(perm.begin(), perm.end(), 0);
  const auto& ca = a.vertex_cycles();
  const auto& cb = b.vertex_cycles();
  do {
    int rotations = 1;
    for (int i = 0; i < v; ++i) rotations *= 3;
    for (int r = 0; r < rotations; ++r) {
      std::vector<int> phi(a.dart_count());
      int code = r;
      for (int i = 0; i < v; ++i) {
        const int rot = code % 3;
        code /= 3;
        for (int k = 0; k < 3; ++k) phi[ca[i][k]] = cb[perm[i]][(k + rot) % 3];
      }
      bool ok = true;
      for (int d = 0; d < a.dart_count() && ok; ++d) {
        if (phi[a.alpha()[d]] != b.alpha()[phi[d]]) ok = false;
        if (labels && a.label_of_dart(d) != b.label_of_dart(phi[d])) ok = false;
      }
      if (ok) {
        out.push_back(std::move(phi));
        if (stop_at_first) return out;
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

inline bool isomorphic(const dtregge::RibbonGraph& a, const dtregge::RibbonGraph& b) {
  return !isomorphisms(a, b, true, true).empty();
}

inline int automorphism_count(const dtregge::RibbonGraph& g, bool labels) {
  return static_cast<int>(isomorphisms(g, g, labels).size());
}

// ---------------------------------------------------------------------------
// Unpruned enumeration: every fixed-point-free involution on 3V darts with the
// standard rotation, classes found by brute-force isomorphism, then every
// boundary labelling of each class representative.

struct BruteClass {
  dtregge::RibbonGraph graph;
  int aut = 1;
};

/// Labelled classes of genus g with n0 boundaries and 3V = darts, keyed by the side vector.
inline std::map<std::vector<int>, std::vector<BruteClass>> brute_force_family(int genus, int n0, int darts) {
  std::vector<int> alpha(darts, -1);
  std::vector<dtregge::RibbonGraph> bare;
  std::function<void()> rec = [&] {
    int d = 0;
    while (d < darts && alpha[d] >= 0) ++d;
    if (d == darts) {
      for (int x = 0; x < darts; ++x)
        if (alpha[x] / 3 == x / 3) return;  // loop
      std::optional<dtregge::RibbonGraph> g;
      try {
        g = dtregge::RibbonGraph::from_alpha(alpha);
      } catch (const dtregge::InputError&) {
        return;  // disconnected
      }
      if (g->boundary_count() != n0 || dtregge::graph_genus(*g) != genus) return;
      auto sides = [](const dtregge::RibbonGraph& h) {
        auto s = dtregge::boundary_side_counts(h);
        std::sort(s.begin(), s.end());
        return s;
      };
      for (const auto& c : bare)
        if (sides(c) == sides(*g) && !isomorphisms(c, *g, false, true).empty()) return;
      bare.push_back(*g);
      return;
    }
    for (int e = d + 1; e < darts; ++e) {
      if (alpha[e] >= 0) continue;
      alpha[d] = e;
      alpha[e] = d;
      rec();
      alpha[d] = alpha[e] = -1;
    }
  };
  rec();
  std::map<std::vector<int>, std::vector<BruteClass>> out;
  for (const auto& b : bare) {
    std::vector<int> labels(n0);
    std::iota(labels.begin(), labels.end(), 1);
    std::vector<dtregge::RibbonGraph> seen;
    do {
      auto g = b.with_labels(labels);
      bool dup = false;
      for (const auto& h : seen)
        if (isomorphic(h, g)) dup = true;
      if (dup) continue;
      seen.push_back(g);
      out[dtregge::boundary_side_counts(g)].push_back({g, automorphism_count(g, true)});
    } while (std::next_permutation(labels.begin(), labels.end()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Plane geometry in long double for the half-edge oracle.

struct P2 {
  long double x, y;
};

inline long double dist(P2 a, P2 b) { return std::hypot(a.x - b.x, a.y - b.y); }
inline P2 mid(P2 a, P2 b) { return {(a.x + b.x) / 2, (a.y + b.y) / 2}; }
inline P2 centroid(P2 a, P2 b, P2 c) { return {(a.x + b.x + c.x) / 3, (a.y + b.y + c.y) / 3}; }

/// Apex of a triangle on base (a, b) with |apex - a| = ra, |apex - b| = rb, on the left.
inline P2 apex(P2 a, P2 b, long double ra, long double rb) {
  const long double d = dist(a, b);
  const long double x = (ra * ra - rb * rb + d * d) / (2 * d);
  const long double h = std::sqrt(std::max<long double>(0, ra * ra - x * x));
  const long double ux = (b.x - a.x) / d, uy = (b.y - a.y) / d;
  return {a.x + x * ux - h * uy, a.y + x * uy + h * ux};
}

/// 2D polygon area by the shoelace formula after angular sort about the centroid.
inline Rational convex_area(std::vector<std::vector<Rational>> pts) {
  if (pts.size() < 3) return 0;
  Rational cx = 0, cy = 0;
  for (const auto& p : pts) {
    cx += p[0];
    cy += p[1];
  }
  cx /= static_cast<int>(pts.size());
  cy /= static_cast<int>(pts.size());
  std::sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) {
    const double aa = std::atan2(static_cast<double>(a[1] - cy), static_cast<double>(a[0] - cx));
    const double bb = std::atan2(static_cast<double>(b[1] - cy), static_cast<double>(b[0] - cx));
    return aa < bb;
  });
  Rational s = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    const auto& r = pts[(i + 1) % pts.size()];
    s += p[0] * r[1] - p[1] * r[0];
  }
  return s < 0 ? Rational(-s / 2) : Rational(s / 2);
}

}  // namespace oracle
