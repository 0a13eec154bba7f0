#pragma once

// Exact geometry of polytopes in standard form {L >= 0, A L = b}: vertex
// enumeration through basic feasible solutions and Lebesgue volume in a
// chosen kernel parametrization by pyramid triangulation over facets.

#include <algorithm>
#include <cstddef>
#include <set>
#include <vector>

#include "dtregge/matrix.hpp"
#include "dtregge/numeric.hpp"

namespace dtregge {

namespace detail {

inline bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  int i = k - 1;
  while (i >= 0 && c[i] == n - k + i) --i;
  if (i < 0) return false;
  ++c[i];
  for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  return true;
}

}  // namespace detail

/// Vertices of {L >= 0, A L = b}, A of full row rank, listed in lexicographic order.
inline std::vector<std::vector<Rational>> enumerate_vertices(const Matrix<Rational>& a, const std::vector<Rational>& b) {
  const int m = static_cast<int>(a.rows()), n = static_cast<int>(a.cols());
  std::set<std::vector<Rational>> found;
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = i;
  if (m > n) return {};
  do {
    Matrix<Rational> aug(m, m + 1);
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < m; ++c) aug(r, c) = a(r, basis[c]);
      aug(r, m) = b[r];
    }
    auto piv = rref_in_place(aug);
    if (static_cast<int>(piv.size()) != m || piv.back() != m - 1) continue;
    std::vector<Rational> point(n, Rational(0));
    bool feasible = true;
    for (int r = 0; r < m; ++r) {
      if (aug(r, m) < 0) {
        feasible = false;
        break;
      }
      point[basis[r]] = aug(r, m);
    }
    if (feasible) found.insert(std::move(point));
  } while (detail::next_combination(basis, n));
  return {found.begin(), found.end()};
}

/// Affine dimension of a point set.
inline int affine_dimension(const std::vector<std::vector<Rational>>& pts, const std::vector<int>& idx) {
  if (idx.empty()) return -1;
  const std::size_t dim = pts[idx[0]].size();
  Matrix<Rational> m(idx.size() - 1, dim);
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t c = 0; c < dim; ++c) m(i - 1, c) = pts[idx[i]][c] - pts[idx[0]][c];
  return static_cast<int>(rank(m));
}

/// Pyramid triangulation of a polytope face. `face` lists vertex indices of a
/// face of dimension `k`; `tight[v]` holds the constraints active at vertex v.
/// Appends full simplices (vertex index lists of size `k + prefix`) to `out`.
inline void triangulate_face(const std::vector<std::vector<Rational>>& coords,
                             const std::vector<std::vector<bool>>& tight, const std::vector<int>& face, int k,
                             std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
  if (k == 0) {
    prefix.push_back(face.front());
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  const int apex = face.front();
  const std::size_t nconstraints = tight.empty() ? 0 : tight.front().size();
  std::set<std::vector<int>> seen;
  prefix.push_back(apex);
  for (std::size_t j = 0; j < nconstraints; ++j) {
    if (tight[apex][j]) continue;
    std::vector<int> facet;
    for (int v : face)
      if (tight[v][j]) facet.push_back(v);
    if (facet.empty() || !seen.insert(facet).second) continue;
    if (affine_dimension(coords, facet) != k - 1) continue;
    triangulate_face(coords, tight, facet, k - 1, prefix, out);
  }
  prefix.pop_back();
}

/// Lebesgue volume of conv(coords) in R^d given the active-constraint table.
/// Returns 1 for d = 0 (a point) and 0 when the vertices span less than d dimensions.
inline Rational lebesgue_volume(const std::vector<std::vector<Rational>>& coords,
                                const std::vector<std::vector<bool>>& tight, int d) {
  if (coords.empty()) return 0;
  if (d == 0) return 1;
  std::vector<int> all(coords.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  if (affine_dimension(coords, all) < d) return 0;
  std::vector<std::vector<int>> simplices;
  std::vector<int> prefix;
  triangulate_face(coords, tight, all, d, prefix, simplices);
  Rational total = 0;
  for (const auto& s : simplices) {
    Matrix<Rational> m(d, d);
    for (int i = 1; i <= d; ++i)
      for (int c = 0; c < d; ++c) m(i - 1, c) = coords[s[i]][c] - coords[s[0]][c];
    total += scalar_traits<Rational>::abs(determinant(m));
  }
  return total / Rational(factorial(static_cast<unsigned>(d)));
}

}  // namespace dtregge
