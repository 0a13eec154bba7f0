#pragma once

// Constraint systems, the total 2-form and Leray volumes of the polytopes
// {L >= 0, A L = q} attached to a labelled trivalent ribbon graph.
// All lengths are in units u = (sqrt 3 / 3) a, so u = 1 internally.

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "dtregge/matrix.hpp"
#include "dtregge/numeric.hpp"
#include "dtregge/polytope.hpp"
#include "dtregge/regge_geometry.hpp"
#include "dtregge/ribbon_graph.hpp"

namespace dtregge {

/// Rows indexed by boundary label (row k-1 for label k), columns by edge.
struct ConstraintSystem {
  Matrix<Integer> a;
  std::vector<Rational> rhs;

  int boundaries() const { return static_cast<int>(a.rows()); }
  int edges() const { return static_cast<int>(a.cols()); }
};

/// A(k, j) = number of sides of boundary k running along edge j; rhs(k) = q(k).
inline ConstraintSystem incidence_matrix(const RibbonGraph& g) {
  if (!g.is_labelled()) throw InputError("constraint system needs a labelled ribbon graph");
  ConstraintSystem c;
  c.a = Matrix<Integer>(g.boundary_count(), g.edge_count());
  c.rhs.assign(g.boundary_count(), Rational(0));
  for (const auto& cyc : g.boundary_cycles()) {
    for (int d : cyc.darts) c.a(cyc.label - 1, g.edge_of(d)) += 1;
    c.rhs[cyc.label - 1] = cyc.sides();
  }
  return c;
}

struct SkewForm {
  Matrix<Integer> b;
  /// Edge of each side, per boundary label, in face-permutation order from the smallest dart.
  std::vector<std::vector<int>> side_edges;
};

/// Sum over boundaries of the normalized polygon forms, pushed from sides to edges.
inline SkewForm total_form(const RibbonGraph& g) {
  if (!g.is_labelled()) throw InputError("total form needs a labelled ribbon graph");
  SkewForm s;
  const int n = g.edge_count();
  s.b = Matrix<Integer>(n, n);
  s.side_edges.resize(g.boundary_count());
  for (const auto& cyc : g.boundary_cycles()) {
    auto& sides = s.side_edges[cyc.label - 1];
    for (int d : cyc.darts) sides.push_back(g.edge_of(d));
    const int q = cyc.sides();
    for (int x = 0; x + 1 < q; ++x)
      for (int y = x + 1; y + 1 < q; ++y) {
        const int i = sides[x], j = sides[y];
        if (i == j) continue;
        s.b(i, j) += 1;
        s.b(j, i) -= 1;
      }
  }
  return s;
}

/// Pfaffians of principal submatrices of one skew matrix, memoized by index mask.
class PfaffianEvaluator {
 public:
  explicit PfaffianEvaluator(Matrix<Integer> b) : b_(std::move(b)) {
    if (!b_.is_skew()) throw InputError("pfaffian needs a skew-symmetric matrix");
    if (b_.rows() > 63) throw ResourceCapExceeded("pfaffian limited to 63 indices");
  }

  Integer operator()(const std::vector<int>& idx) {
    std::uint64_t mask = 0;
    for (int i : idx) mask |= std::uint64_t{1} << i;
    return eval(mask);
  }

  Integer full() {
    std::vector<int> idx(b_.rows());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    return (*this)(idx);
  }

 private:
  Integer eval(std::uint64_t mask) {
    if (mask == 0) return 1;
    if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
    const int first = std::countr_zero(mask);
    const std::uint64_t rest = mask & (mask - 1);
    Integer total = 0;
    int k = 0;
    for (std::uint64_t m = rest; m; m &= m - 1) {
      ++k;
      const int j = std::countr_zero(m);
      const Integer& entry = b_(first, j);
      if (entry == 0) continue;
      Integer sub = eval(rest & ~(std::uint64_t{1} << j));
      if (k % 2 == 1)
        total += entry * sub;
      else
        total -= entry * sub;
    }
    memo_.emplace(mask, total);
    return total;
  }

  Matrix<Integer> b_;
  std::unordered_map<std::uint64_t, Integer> memo_;
};

inline Integer pfaffian(const Matrix<Integer>& b) {
  return PfaffianEvaluator(b).full();
}

inline Integer pfaffian(const Matrix<Integer>& b, const std::vector<int>& idx) { return PfaffianEvaluator(b)(idx); }

struct KontsevichReport {
  int genus = 0;
  int boundaries = 0;
  int dimension = 0;      // D = 3g - 3 + N0
  Integer coefficient;    // of dL_1 ^ ... ^ dL_N1 in prod d eta ^ Omega^D / D!
  Integer unnormalized;   // the same in prod d eta ^ Omega^D, i.e. D! * coefficient
  Integer expected;       // 2^(2 N0 + 5g - 5) (3g - 3 + N0)!
  bool pass = false;
};

/// Signed coefficient of dL_1 ^ ... ^ dL_N1 in prod_k d eta(k) ^ Omega^D / D!.
inline Integer kontsevich_coefficient(const RibbonGraph& g) {
  const int n0 = g.boundary_count(), n1 = g.edge_count();
  const int genus = graph_genus(g);
  const int d = 3 * genus - 3 + n0;
  if (2 * d + n0 != n1) throw InputError("dimension mismatch: 2D + N0 != N1");
  ConstraintSystem c = incidence_matrix(g);
  PfaffianEvaluator pf(total_form(g).b);
  Integer total = 0;
  std::vector<int> s(n0);
  for (int i = 0; i < n0; ++i) s[i] = i;
  do {
    std::vector<int> rest;
    std::vector<bool> in_s(n1, false);
    for (int i : s) in_s[i] = true;
    int inversions = 0;
    for (int j = 0; j < n1; ++j) {
      if (in_s[j]) continue;
      rest.push_back(j);
      for (int i : s)
        if (i > j) ++inversions;
    }
    Integer det = determinant_bareiss(c.a.columns(s));
    if (det == 0) continue;
    Integer p = pf(rest);
    if (inversions % 2 == 0)
      total += det * p;
    else
      total -= det * p;
  } while (detail::next_combination(s, n1));
  return total;
}

inline Integer kontsevich_expected(int genus, int boundaries) {
  const int e = 2 * boundaries + 5 * genus - 5;
  const int d = 3 * genus - 3 + boundaries;
  if (e < 0 || d < 0) throw InputError("unstable (g, N0)");
  return pow2(static_cast<unsigned>(e)) * factorial(static_cast<unsigned>(d));
}

inline KontsevichReport kontsevich_check(const RibbonGraph& g) {
  KontsevichReport r;
  r.genus = graph_genus(g);
  r.boundaries = g.boundary_count();
  r.dimension = 3 * r.genus - 3 + r.boundaries;
  r.coefficient = kontsevich_coefficient(g);
  r.unnormalized = r.coefficient * factorial(static_cast<unsigned>(r.dimension));
  r.expected = kontsevich_expected(r.genus, r.boundaries);
  r.pass = abs(r.unnormalized) == r.expected;
  return r;
}

// ---------------------------------------------------------------------------
// Leray volumes.

struct LerayOptions {
  /// N1 x (N1 - N0) matrix whose columns span ker A; derived from the RREF when absent.
  std::optional<Matrix<Rational>> kernel_basis;
  /// N0 edge indices whose unit vectors complete the kernel; pivot columns when absent.
  std::optional<std::vector<int>> complement;
};

struct LerayVolume {
  Rational volume;
  int dim = 0;
  Rational density;                           // |det[K|W]| / |det(A W)|
  std::vector<std::vector<Rational>> vertices;  // in edge-length coordinates
};

/// Integer basis of ker A from the reduced row echelon form, plus pivot columns.
inline std::pair<Matrix<Rational>, std::vector<int>> kernel_from_rref(const Matrix<Rational>& a) {
  Matrix<Rational> r = a;
  std::vector<int> piv = rref_in_place(r);
  const int n = static_cast<int>(a.cols());
  std::vector<bool> is_piv(n, false);
  for (int p : piv) is_piv[p] = true;
  std::vector<int> free;
  for (int j = 0; j < n; ++j)
    if (!is_piv[j]) free.push_back(j);
  Matrix<Rational> k(n, free.size());
  for (std::size_t f = 0; f < free.size(); ++f) {
    k(free[f], f) = 1;
    for (std::size_t row = 0; row < piv.size(); ++row) k(piv[row], f) = -r(row, free[f]);
    Integer l = 1;
    for (int j = 0; j < n; ++j) l = boost::multiprecision::lcm(l, Integer(denominator(k(j, f))));
    for (int j = 0; j < n; ++j) k(j, f) *= l;
  }
  return {k, piv};
}

/// True when {r >= 0, A r = 0, sum r = 1} is feasible, i.e. the polytope is unbounded.
inline bool has_recession_direction(const Matrix<Rational>& a) {
  Matrix<Rational> ext(a.rows() + 1, a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) ext(r, c) = a(r, c);
  for (std::size_t c = 0; c < a.cols(); ++c) ext(a.rows(), c) = 1;
  std::vector<Rational> b(a.rows() + 1, Rational(0));
  b.back() = 1;
  Matrix<Rational> aug(ext.rows(), ext.cols() + 1);
  for (std::size_t r = 0; r < ext.rows(); ++r) {
    for (std::size_t c = 0; c < ext.cols(); ++c) aug(r, c) = ext(r, c);
    aug(r, ext.cols()) = b[r];
  }
  if (rank(aug) > rank(ext)) return false;
  // consistent: dependent rows can be dropped
  Matrix<Rational> t = ext.transpose();
  auto rows = rref_in_place(t);
  Matrix<Rational> red(rows.size(), a.cols());
  std::vector<Rational> rb;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t c = 0; c < a.cols(); ++c) red(i, c) = ext(rows[i], c);
    rb.push_back(b[rows[i]]);
  }
  return !enumerate_vertices(red, rb).empty();
}

inline LerayVolume leray_volume(const ConstraintSystem& c, const LerayOptions& opt = {}) {
  const Matrix<Rational> a = to_rational(c.a);
  const int n0 = c.boundaries(), n1 = c.edges();
  if (static_cast<int>(rank(a)) != n0) throw InputError("constraint matrix is rank-deficient");
  if (has_recession_direction(a)) throw InputError("unbounded polytope");

  auto [k_default, pivots] = kernel_from_rref(a);
  const Matrix<Rational> k = opt.kernel_basis ? *opt.kernel_basis : k_default;
  const std::vector<int> w = opt.complement ? *opt.complement : pivots;
  const int d = n1 - n0;
  if (static_cast<int>(k.rows()) != n1 || static_cast<int>(k.cols()) != d) throw InputError("kernel basis has wrong shape");
  if (static_cast<int>(w.size()) != n0) throw InputError("complement needs N0 columns");

  LerayVolume out;
  out.dim = d;
  Matrix<Rational> kw(n1, n1);
  for (int r = 0; r < n1; ++r)
    for (int col = 0; col < d; ++col) kw(r, col) = k(r, col);
  for (int i = 0; i < n0; ++i) kw(w[i], d + i) = 1;
  const Rational num = abs(determinant(kw));
  const Rational den = abs(determinant(a.columns(w)));
  if (num == 0 || den == 0) throw InputError("kernel basis and complement do not span");
  out.density = num / den;

  out.vertices = enumerate_vertices(a, c.rhs);
  if (out.vertices.empty()) {
    out.volume = 0;
    return out;
  }

  // kernel coordinates t with L = L0 + K t, solved on d independent rows of K
  Matrix<Rational> kt = k.transpose();
  std::vector<int> rows = rref_in_place(kt);
  Matrix<Rational> kinv = inverse(k.transpose().columns(rows).transpose());
  const auto& l0 = out.vertices.front();
  std::vector<std::vector<Rational>> coords;
  std::vector<std::vector<bool>> tight;
  for (const auto& v : out.vertices) {
    std::vector<Rational> t(d, Rational(0));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) t[i] += kinv(i, j) * (v[rows[j]] - l0[rows[j]]);
    coords.push_back(std::move(t));
    std::vector<bool> z(n1);
    for (int j = 0; j < n1; ++j) z[j] = v[j] == 0;
    tight.push_back(std::move(z));
  }
  out.volume = out.density * lebesgue_volume(coords, tight, d);
  return out;
}

inline LerayVolume leray_volume(const RibbonGraph& g, const LerayOptions& opt = {}) {
  return leray_volume(incidence_matrix(g), opt);
}

// ---------------------------------------------------------------------------
// Pullbacks to triangulation edge lengths at the equilateral point.

namespace detail {

inline Matrix<Rational> rational_part(const Matrix<QSqrt3>& m) {
  Matrix<Rational> out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (!m(r, c).is_rational()) throw std::logic_error("pullback left Q");
      out(r, c) = m(r, c).rational_part();
    }
  return out;
}

}  // namespace detail

/// Polygon 2-form of a q-corner fan (perimeter q) pulled back to the 2q fan
/// edge lengths (spokes, then links).
inline Matrix<Rational> pullback_polygon_form(int q) {
  if (q < 2) throw InputError("q must be at least 2");
  Matrix<QSqrt3> full = dual_edge_linearization(q);
  Matrix<QSqrt3> j(q - 1, 2 * q);
  for (int r = 0; r + 1 < q; ++r)
    for (int c = 0; c < 2 * q; ++c) j(r, c) = full(r, c);
  Matrix<QSqrt3> m(q - 1, q - 1);
  const QSqrt3 w(Rational(1, q * q));
  for (int x = 0; x + 1 < q; ++x)
    for (int y = x + 1; y + 1 < q; ++y) {
      m(x, y) = w;
      m(y, x) = -w;
    }
  return detail::rational_part(j.transpose() * m * j);
}

/// Jacobian dL/dl of all dual edges at the equilateral point; dual edge j
/// crosses triangulation edge j.
inline Matrix<QSqrt3> dual_jacobian(const RibbonGraph& g) {
  const int n = g.edge_count();
  Matrix<QSqrt3> j(n, n);
  const QSqrt3 c = inv_three_sqrt3();
  for (int e = 0; e < n; ++e) {
    auto [d1, d2] = g.edge_darts(e);
    for (int d : {d1, d2}) {
      j(e, g.edge_of(g.sigma()[d])) += c;
      j(e, g.edge_of(g.sigma()[g.sigma()[d]])) += c;
    }
    j(e, e) -= c;
  }
  return j;
}

/// Total form pulled back to triangulation edge lengths: J^T B J.
inline Matrix<Rational> pullback_to_triangulation(const RibbonGraph& g) {
  SkewForm s = total_form(g);
  Matrix<QSqrt3> b(s.b.rows(), s.b.cols());
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t col = 0; col < b.cols(); ++col) b(r, col) = QSqrt3(Rational(s.b(r, col)));
  Matrix<QSqrt3> j = dual_jacobian(g);
  return detail::rational_part(j.transpose() * b * j);
}

}  // namespace dtregge
