#pragma once

// The duality pairing between dynamical triangulations with fixed curvature
// assignments and psi-class intersection numbers:
//   2^(2 N0 + 5g - 5) sum_T Vol(T) / |Aut_boundary(T)|  =  F_g(q)
// with lengths in units u = 1.

#include <functional>
#include <string>
#include <vector>

#include "dtregge/enumeration.hpp"
#include "dtregge/intersection.hpp"
#include "dtregge/measure_engine.hpp"
#include "dtregge/numeric.hpp"

namespace dtregge {

/// sum over delta with |delta| = N0 + 3g - 3 of prod q(i)^(2 delta_i) / delta_i! <tau_delta>_g.
inline Rational generating_F(int genus, const std::vector<int>& q, IntersectionNumbers& tau) {
  const int n = static_cast<int>(q.size());
  const int total = n + 3 * genus - 3;
  if (n < 1 || total < 0) throw InputError("unstable (g, N0)");
  Rational f = 0;
  std::vector<int> delta(n, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n - 1) {
      delta[i] = left;
      Rational w = 1;
      for (int k = 0; k < n; ++k) {
        Integer p = 1;
        for (int e = 0; e < 2 * delta[k]; ++e) p *= q[k];
        w *= Rational(p, factorial(static_cast<unsigned>(delta[k])));
      }
      Rational t = tau(genus, delta);
      if (t != 0) f += w * t;
      return;
    }
    for (int x = 0; x <= left; ++x) {
      delta[i] = x;
      rec(i + 1, left - x);
    }
  };
  rec(0, total);
  return f;
}

inline Rational generating_F(int genus, const std::vector<int>& q, bool enable_dvv = false) {
  IntersectionNumbers tau(enable_dvv);
  return generating_F(genus, q, tau);
}

struct PairingTerm {
  std::string code;  // hex
  Rational volume;
  int aut_boundary = 1;
  Rational contribution;  // volume / aut_boundary
};

struct PairingReport {
  CatalogKey key;
  Rational lhs;
  Rational rhs;
  bool equal = false;
  Rational prefactor;  // 2^(2 N0 + 5g - 5)
  std::vector<PairingTerm> breakdown;
};

inline Rational pairing_prefactor(int genus, int vertices) {
  const int e = 2 * vertices + 5 * genus - 5;
  return e >= 0 ? Rational(pow2(static_cast<unsigned>(e))) : Rational(1, pow2(static_cast<unsigned>(-e)));
}

inline PairingReport duality_pairing(const Catalog& cat, bool enable_dvv = false) {
  PairingReport r;
  r.key = cat.key;
  r.prefactor = pairing_prefactor(cat.key.genus, cat.key.vertices);
  Rational sum = 0;
  for (const auto& e : cat.entries) {
    PairingTerm t;
    t.code = to_hex(e.code);
    t.volume = leray_volume(e.graph).volume;
    t.aut_boundary = e.aut_boundary;
    t.contribution = t.volume / e.aut_boundary;
    sum += t.contribution;
    r.breakdown.push_back(std::move(t));
  }
  r.lhs = r.prefactor * sum;
  r.rhs = generating_F(cat.key.genus, cat.key.q, enable_dvv);
  r.equal = r.lhs == r.rhs;
  return r;
}

inline PairingReport duality_pairing(const CatalogKey& key, const EnumerationOptions& opt = {}, bool enable_dvv = false) {
  return duality_pairing(enumerate_triangulations(key, opt), enable_dvv);
}

struct CardinalityAverage {
  std::size_t card = 0;
  Rational average_volume;  // (1/Card) sum_T Vol(T) / |Aut_boundary(T)|
  Rational product;         // average_volume * Card
  Rational expected;        // F_g / 2^(2 N0 + 5g - 5)
  bool consistent = false;
};

inline CardinalityAverage cardinality_and_average(const Catalog& cat, bool enable_dvv = false) {
  CardinalityAverage c;
  c.card = cat.cardinality();
  Rational sum = 0;
  for (const auto& e : cat.entries) sum += leray_volume(e.graph).volume / e.aut_boundary;
  c.average_volume = c.card ? sum / Rational(static_cast<long>(c.card)) : Rational(0);
  c.product = c.average_volume * Rational(static_cast<long>(c.card));
  c.expected = generating_F(cat.key.genus, cat.key.q, enable_dvv) / pairing_prefactor(cat.key.genus, cat.key.vertices);
  c.consistent = c.product == c.expected;
  return c;
}

/// Diagnostic: the same orbifold volume sum taken over every trivalent ribbon
/// graph of genus g with N0 labelled boundaries, any side counts and loops
/// allowed, each cell cut at perimeters q. This is the full cell decomposition
/// of the moduli space and should reproduce F_g(q) for every feasible q.
struct FullCellSum {
  Rational lhs;
  Rational rhs;
  std::size_t graphs = 0;
  std::size_t contributing = 0;
  Rational catalog_part;  // contribution of graphs whose side counts equal q and have no loops
};

inline FullCellSum full_cell_sum(int genus, const std::vector<int>& perimeters, unsigned threads = 0, bool enable_dvv = false) {
  const int n0 = static_cast<int>(perimeters.size());
  FullCellSum r;
  Rational sum = 0, part = 0;
  for (const auto& sides : all_q_vectors(genus, n0, 1)) {
    for (const auto& code : enumerate_graph_codes(sides, true, threads)) {
      RibbonGraph g = detail::decode_code(code);
      ConstraintSystem c = incidence_matrix(g);
      for (int k = 0; k < n0; ++k) c.rhs[k] = perimeters[k];
      Rational v = leray_volume(c).volume / static_cast<int>(automorphisms(g, true).size());
      ++r.graphs;
      if (v != 0) ++r.contributing;
      sum += v;
      bool loopless = true;
      for (int d = 0; d < g.dart_count(); ++d)
        if (g.vertex_of(g.alpha()[d]) == g.vertex_of(d)) loopless = false;
      if (sides == perimeters && loopless) part += v;
    }
  }
  const Rational pre = pairing_prefactor(genus, n0);
  r.lhs = pre * sum;
  r.catalog_part = pre * part;
  r.rhs = generating_F(genus, perimeters, enable_dvv);
  return r;
}

}  // namespace dtregge
