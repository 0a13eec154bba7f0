#pragma once

// Charts on the space of Euclidean q-gons dual to a vertex. A chart stores the
// first q-1 complex edge vectors; the closing edge is minus their sum. Lengths
// are in units u = (sqrt 3 / 3) a, so the equilateral dual q-gon has perimeter q.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "dtregge/matrix.hpp"
#include "dtregge/numeric.hpp"

namespace dtregge {

template <class T>
struct Complex {
  T re{0};
  T im{0};

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator*(const T& k, const Complex& a) { return {k * a.re, k * a.im}; }
  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
  Complex conj() const { return {re, -im}; }
  T norm_sq() const { return re * re + im * im; }
};

/// Re[z * conj(w)].
template <class T>
T re_mul_conj(const Complex<T>& z, const Complex<T>& w) {
  return z.re * w.re + z.im * w.im;
}

template <class T>
T magnitude(const Complex<T>& z) {
  return scalar_traits<T>::sqrt(z.norm_sq());
}

template <class T>
using TangentVector = std::vector<Complex<T>>;

template <class T>
class PolygonChart {
 public:
  explicit PolygonChart(std::vector<Complex<T>> z) : z_(std::move(z)) {
    if (z_.empty()) throw InputError("a polygon chart needs q >= 2");
    bool all_zero = true;
    for (const auto& e : z_)
      if (!scalar_traits<T>::is_zero(e.norm_sq())) all_zero = false;
    if (all_zero) throw InputError("polygon chart with all edges zero");
  }

  int q() const { return static_cast<int>(z_.size()) + 1; }
  const std::vector<Complex<T>>& coordinates() const { return z_; }

  /// All q edges, closing edge last.
  std::vector<Complex<T>> edges() const {
    std::vector<Complex<T>> e = z_;
    Complex<T> sum{};
    for (const auto& x : z_) sum = sum + x;
    e.push_back(-sum);
    return e;
  }

  PolygonChart scaled(const Complex<T>& lambda) const {
    std::vector<Complex<T>> z;
    for (const auto& x : z_) z.push_back(lambda * x);
    return PolygonChart(std::move(z));
  }

  /// Representative of the projective class with the first nonzero edge equal to 1.
  PolygonChart projective_normalize() const {
    for (const auto& x : z_) {
      T n = x.norm_sq();
      if (scalar_traits<T>::is_zero(n)) continue;
      Complex<T> inv{x.re / n, -x.im / n};
      return scaled(inv);
    }
    return *this;
  }

  /// Cyclic relabelling: edge a becomes edge a - shift (mod q); the chart keeps
  /// its first q-1 edges of the relabelled polygon.
  PolygonChart cyclic_relabel(int shift) const {
    auto e = edges();
    const int n = q();
    std::vector<Complex<T>> z;
    for (int a = 0; a + 1 < n; ++a) z.push_back(e[((a + shift) % n + n) % n]);
    return PolygonChart(std::move(z));
  }

 private:
  std::vector<Complex<T>> z_;
};

/// Edge-length map: (|Z^1|, ..., |Z^{q-1}|, |sum Z^a|).
template <class T>
std::vector<T> edge_length_map(const PolygonChart<T>& p) {
  std::vector<T> out;
  for (const auto& e : p.edges()) out.push_back(magnitude(e));
  return out;
}

/// Isoperimetric edge-length map: the last side is the perimeter minus the others.
template <class T>
std::vector<T> isoperimetric_length_map(const PolygonChart<T>& p, const T& perimeter) {
  std::vector<T> out;
  T rest = perimeter;
  for (const auto& z : p.coordinates()) {
    out.push_back(magnitude(z));
    rest -= out.back();
  }
  out.push_back(rest);
  return out;
}

/// d|Z^a|(xi) = Re[Z^a conj(xi^a)] / |Z^a|; zero-length edges contribute nothing.
template <class T>
std::vector<T> length_differentials(const PolygonChart<T>& p, const TangentVector<T>& xi) {
  if (static_cast<int>(xi.size()) != p.q() - 1) throw InputError("tangent vector has wrong size");
  std::vector<T> d;
  for (std::size_t a = 0; a < xi.size(); ++a) {
    const auto& z = p.coordinates()[a];
    if (scalar_traits<T>::is_zero(z.norm_sq())) {
      d.push_back(T(0));
      continue;
    }
    d.push_back(re_mul_conj(z, xi[a]) / magnitude(z));
  }
  return d;
}

/// Tangent of the isoperimetric edge-length map: (d|Z^1|, ..., d|Z^{q-1}|, -sum).
template <class T>
std::vector<T> tangent_map(const PolygonChart<T>& p, const TangentVector<T>& xi) {
  for (const auto& z : p.coordinates())
    if (scalar_traits<T>::is_zero(z.norm_sq())) throw InputError("tangent map undefined at a zero-length edge");
  std::vector<T> d = length_differentials(p, xi);
  T sum = 0;
  for (const auto& x : d) sum += x;
  d.push_back(-sum);
  return d;
}

/// Real matrix of tangent_map: q rows, columns (Re xi^1, Im xi^1, Re xi^2, ...).
template <class T>
Matrix<T> tangent_matrix(const PolygonChart<T>& p) {
  const int q = p.q();
  Matrix<T> m(q, 2 * (q - 1));
  for (int a = 0; a + 1 < q; ++a) {
    const auto& z = p.coordinates()[a];
    if (scalar_traits<T>::is_zero(z.norm_sq())) throw InputError("tangent map undefined at a zero-length edge");
    T len = magnitude(z);
    m(a, 2 * a) = z.re / len;
    m(a, 2 * a + 1) = z.im / len;
    m(q - 1, 2 * a) = -m(a, 2 * a);
    m(q - 1, 2 * a + 1) = -m(a, 2 * a + 1);
  }
  return m;
}

struct RankReport {
  int rank = 0;
  int kernel_dimension = 0;
};

template <class T>
RankReport tangent_rank(const PolygonChart<T>& p) {
  RankReport r;
  r.rank = static_cast<int>(rank(tangent_matrix(p)));
  r.kernel_dimension = 2 * (p.q() - 1) - r.rank;
  return r;
}

/// psi(xi) = -perimeter^-2 sum_{a<q} |Z^a| sum_{b<=a} d|Z^b|(xi).
template <class T>
T connection_form(const PolygonChart<T>& p, const TangentVector<T>& xi, const T& perimeter) {
  std::vector<T> d = length_differentials(p, xi);
  T total = 0, partial = 0;
  for (std::size_t a = 0; a < d.size(); ++a) {
    partial += d[a];
    const auto& z = p.coordinates()[a];
    if (scalar_traits<T>::is_zero(z.norm_sq())) continue;
    total += magnitude(z) * partial;
  }
  return -total / (perimeter * perimeter);
}

/// Coefficients of perimeter^-2 sum_{a<b<=q-1} d|Z^a| ^ d|Z^b| as a skew matrix.
template <class T>
Matrix<T> polygon_two_form(const PolygonChart<T>& p, const T& perimeter) {
  const int n = p.q() - 1;
  Matrix<T> m(n, n);
  T c = T(1) / (perimeter * perimeter);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      m(a, b) = c;
      m(b, a) = -c;
    }
  return m;
}

template <class T>
T evaluate_two_form(const PolygonChart<T>& p, const T& perimeter, const TangentVector<T>& xi, const TangentVector<T>& zeta) {
  Matrix<T> m = polygon_two_form(p, perimeter);
  std::vector<T> u = length_differentials(p, xi), v = length_differentials(p, zeta);
  T s = 0;
  for (std::size_t a = 0; a < u.size(); ++a)
    for (std::size_t b = 0; b < v.size(); ++b) s += m(a, b) * u[a] * v[b];
  return s;
}

/// Degenerate polygons: all edges parallel (fixed points of conjugation up to rotation).
template <class T>
bool is_degenerate(const PolygonChart<T>& p) {
  auto e = p.edges();
  const Complex<T>* ref = nullptr;
  for (const auto& x : e)
    if (!scalar_traits<T>::is_zero(x.norm_sq())) {
      ref = &x;
      break;
    }
  if (!ref) return true;
  for (const auto& x : e) {
    T cross = ref->re * x.im - ref->im * x.re;
    if (!scalar_traits<T>::is_zero(cross)) return false;
  }
  return true;
}

/// Rotation generator i*Z, tangent to the C* orbit.
template <class T>
TangentVector<T> rotation_vector(const PolygonChart<T>& p) {
  TangentVector<T> xi;
  for (const auto& z : p.coordinates()) xi.push_back({-z.im, z.re});
  return xi;
}

/// Regular q-gon with unit sides in high precision.
inline PolygonChart<Real> regular_polygon(int q, const Real& side = Real(1)) {
  if (q < 2) throw InputError("q must be at least 2");
  const Real two_pi = 2 * boost::math::constants::pi<Real>();
  std::vector<Complex<Real>> z;
  for (int a = 1; a < q; ++a) {
    Real t = two_pi * a / q;
    z.push_back({side * boost::multiprecision::cos(t), side * boost::multiprecision::sin(t)});
  }
  return PolygonChart<Real>(std::move(z));
}

/// A convex equilateral q-gon with unit sides and coordinates in Q[sqrt 3],
/// q = 3..8 (regular for q = 3, 4, 6). Edge directions are sorted by angle.
inline PolygonChart<QSqrt3> exact_equilateral_polygon(int q) {
  // directions at multiples of 30 degrees: index k -> angle 30k
  auto dir = [&](int k) -> Complex<QSqrt3> {
    static const int cos_tab[12][2] = {{2, 0}, {0, 1}, {1, 0}, {0, 0}, {-1, 0}, {0, -1},
                                       {-2, 0}, {0, -1}, {-1, 0}, {0, 0}, {1, 0}, {0, 1}};
    // cos(30k) = cos_tab[k][0]/2 + cos_tab[k][1]*sqrt(3)/2
    auto c = QSqrt3(Rational(cos_tab[k % 12][0], 2), Rational(cos_tab[k % 12][1], 2));
    auto sn = QSqrt3(Rational(cos_tab[(k + 9) % 12][0], 2), Rational(cos_tab[(k + 9) % 12][1], 2));
    return {c, sn};
  };
  std::vector<int> angles;
  switch (q) {
    case 3: angles = {0, 4, 8}; break;
    case 4: angles = {0, 3, 6, 9}; break;
    case 5: angles = {0, 3, 4, 8, 9}; break;
    case 6: angles = {0, 2, 4, 6, 8, 10}; break;
    case 7: angles = {0, 1, 3, 4, 7, 8, 9}; break;
    case 8: angles = {0, 1, 3, 5, 6, 7, 9, 11}; break;
    default: throw InputError("exact equilateral polygons are tabulated for q = 3..8");
  }
  std::vector<Complex<QSqrt3>> z;
  for (int a = 0; a + 1 < q; ++a) z.push_back(dir(angles[a]));
  return PolygonChart<QSqrt3>(std::move(z));
}

}  // namespace dtregge
