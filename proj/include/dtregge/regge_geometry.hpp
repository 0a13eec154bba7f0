#pragma once

// Metric dictionary between the star of a Regge vertex and the dual polygon.
//
// A corner fan around vertex k has spokes l_a (edges from the centre to the
// link vertices V_a) and link edges l_{a,a+1}; triangle a has sides
// (l_a, l_{a+1}, l_{a,a+1}). Squared lengths are the primitive quantities:
// every half-edge relation below is rational in them.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "dtregge/matrix.hpp"
#include "dtregge/numeric.hpp"

namespace dtregge {

class CornerFan {
 public:
  /// Squared spoke lengths l_a^2 and squared link lengths l_{a,a+1}^2, a = 0..q-1.
  CornerFan(int vertex, std::vector<Rational> spokes_sq, std::vector<Rational> links_sq)
      : vertex_(vertex), spokes_sq_(std::move(spokes_sq)), links_sq_(std::move(links_sq)) {
    if (spokes_sq_.size() != links_sq_.size() || spokes_sq_.size() < 2)
      throw InputError("corner fan needs q >= 2 spokes and q links");
    for (std::size_t a = 0; a < size(); ++a) {
      const Rational& x = spoke_sq(a);
      const Rational& y = spoke_sq(a + 1);
      const Rational& z = link_sq(a);
      if (x <= 0 || y <= 0 || z <= 0) throw InputError("edge lengths must be positive");
      // 16 * area^2 in terms of squared sides; zero or negative means degenerate
      Rational heron = 2 * (x * y + y * z + z * x) - x * x - y * y - z * z;
      if (heron <= 0) throw InputError("degenerate triangle in corner fan at position " + std::to_string(a));
    }
  }

  /// Equilateral fan of q triangles with side length a.
  static CornerFan equilateral(int q, const Rational& a = 1) {
    return CornerFan(0, std::vector<Rational>(q, a * a), std::vector<Rational>(q, a * a));
  }

  int vertex() const { return vertex_; }
  std::size_t size() const { return spokes_sq_.size(); }
  // cyclic accessors
  const Rational& spoke_sq(std::size_t a) const { return spokes_sq_[a % size()]; }
  const Rational& link_sq(std::size_t a) const { return links_sq_[a % size()]; }
  const std::vector<Rational>& spokes_sq() const { return spokes_sq_; }
  const std::vector<Rational>& links_sq() const { return links_sq_; }

 private:
  int vertex_;
  std::vector<Rational> spokes_sq_;
  std::vector<Rational> links_sq_;
};

/// Squared half-edge lengths of the dual polygon, per corner a:
///   plus_sq[a]  = (L+_a)^2       barycentre of triangle a -> midpoint of spoke a+1
///   minus_sq[a] = (L-_a)^2       midpoint of spoke a+1 -> barycentre of triangle a+1
///   link_sq[a]  = (L-_{a,a+1})^2 midpoint of link a -> barycentre of triangle a
struct DualLengths {
  std::vector<Rational> plus_sq;
  std::vector<Rational> minus_sq;
  std::vector<Rational> link_sq;

  std::size_t size() const { return plus_sq.size(); }

  /// L_a = L-_a + L+_a, the dual edge crossing spoke a+1.
  Real edge_length(std::size_t a) const {
    return boost::multiprecision::sqrt(Real(minus_sq[a])) + boost::multiprecision::sqrt(Real(plus_sq[a]));
  }
  /// Exact L_a when both halves lie in Q[sqrt 3].
  std::optional<QSqrt3> exact_edge_length(std::size_t a) const {
    auto m = sqrt_in_qsqrt3(minus_sq[a]);
    auto p = sqrt_in_qsqrt3(plus_sq[a]);
    if (!m || !p) return std::nullopt;
    return *m + *p;
  }
};

inline DualLengths half_edge_lengths(const CornerFan& fan) {
  DualLengths d;
  const std::size_t q = fan.size();
  for (std::size_t a = 0; a < q; ++a) {
    Rational plus = 2 * fan.spoke_sq(a) + 2 * fan.link_sq(a) - fan.spoke_sq(a + 1);
    Rational minus = 2 * fan.spoke_sq(a + 2) + 2 * fan.link_sq(a + 1) - fan.spoke_sq(a + 1);
    Rational link = 2 * fan.spoke_sq(a) + 2 * fan.spoke_sq(a + 1) - fan.link_sq(a);
    if (plus <= 0 || minus <= 0 || link <= 0) throw InputError("nonpositive radicand in half-edge length");
    d.plus_sq.push_back(plus / 36);
    d.minus_sq.push_back(minus / 36);
    d.link_sq.push_back(link / 36);
  }
  return d;
}

/// 2*pi minus the sum of the angles at the fan centre.
inline Real vertex_deficit(const CornerFan& fan) {
  const Real pi = boost::math::constants::pi<Real>();
  Real total = 0;
  for (std::size_t a = 0; a < fan.size(); ++a) {
    Real x = Real(fan.spoke_sq(a)), y = Real(fan.spoke_sq(a + 1)), z = Real(fan.link_sq(a));
    Real c = (x + y - z) / (2 * boost::multiprecision::sqrt(x * y));
    if (c > 1 || c < -1) throw InputError("invalid triangle: |cos| > 1");
    total += boost::multiprecision::acos(c);
  }
  return 2 * pi - total;
}

/// Sum over corners of (L-_{a-1})^2 - (L+_a)^2; zero for every closing fan.
inline Rational median_identity_residual(const DualLengths& d) {
  Rational s = 0;
  const std::size_t q = d.size();
  for (std::size_t a = 0; a < q; ++a) s += d.minus_sq[(a + q - 1) % q] - d.plus_sq[a];
  return s;
}

inline bool median_identity_check(const DualLengths& d) { return median_identity_residual(d) == 0; }

// ---------------------------------------------------------------------------
// Linearization at the equilateral point l = a.

inline QSqrt3 inv_three_sqrt3() { return QSqrt3(1) / (QSqrt3(3) * QSqrt3::sqrt3()); }

/// Rows (dL+_a, dL-_{a-1}, dL-_{a,a+1}), columns (dl_a, dl_{a+1}, dl_{a,a+1}).
inline Matrix<QSqrt3> corner_linearization() {
  const Rational h(-1, 2);
  Matrix<QSqrt3> c{{1, QSqrt3(h), 1}, {QSqrt3(h), 1, 1}, {1, 1, QSqrt3(h)}};
  return inv_three_sqrt3() * c;
}

/// Jacobian of all 3q half-edges of a q-corner fan with respect to its 2q
/// edge lengths. Columns: spokes 0..q-1, then links 0..q-1 (link a = l_{a,a+1}).
/// Row 3a+0: dL+_a, row 3a+1: dL-_{a-1}, row 3a+2: dL-_{a,a+1}.
inline Matrix<QSqrt3> fan_linearization(int q) {
  Matrix<QSqrt3> corner = corner_linearization();
  Matrix<QSqrt3> j(3 * q, 2 * q);
  for (int a = 0; a < q; ++a) {
    const int cols[3] = {a, (a + 1) % q, q + a};
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) j(3 * a + r, cols[c]) += corner(r, c);
  }
  return j;
}

/// dL_a = dL-_a + dL+_a at the equilateral point, as a q x 2q matrix over the
/// same columns as fan_linearization. Row a reads
/// (1/(3 sqrt 3)) [dl_a - dl_{a+1} + dl_{a+2} + dl_{a,a+1} + dl_{a+1,a+2}].
inline Matrix<QSqrt3> dual_edge_linearization(int q) {
  Matrix<QSqrt3> half = fan_linearization(q);
  Matrix<QSqrt3> j(q, 2 * q);
  for (int a = 0; a < q; ++a) {
    // L+_a is row 3a; L-_a is the row labelled dL-_{(a+1)-1}, i.e. row 3(a+1)+1
    const int minus_row = 3 * ((a + 1) % q) + 1;
    for (int c = 0; c < 2 * q; ++c) j(a, c) = half(3 * a, c) + half(minus_row, c);
  }
  return j;
}

}  // namespace dtregge
