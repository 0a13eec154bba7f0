#pragma once

// Intersection numbers <tau_d1 ... tau_dn>_g of psi classes. Genus 0 and 1 are
// evaluated by string and dilaton reduction; higher genus needs the Virasoro
// (DVV) recursion, which must be enabled explicitly.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "dtregge/numeric.hpp"

namespace dtregge {

struct TauQuery {
  int genus = 0;
  std::vector<int> exponents;
};

inline bool dimension_condition(const TauQuery& q) {
  const int n = static_cast<int>(q.exponents.size());
  const int sum = std::accumulate(q.exponents.begin(), q.exponents.end(), 0);
  return sum == n + 3 * q.genus - 3;
}

inline bool is_stable(int genus, int n) { return 2 * genus - 2 + n > 0; }

/// (n-3)! / prod d_i! for genus 0 on the dimension locus.
inline Rational genus0_closed_form(const std::vector<int>& d) {
  const int n = static_cast<int>(d.size());
  if (n < 3) return 0;
  int sum = 0;
  for (int x : d) {
    if (x < 0) throw InputError("negative exponent");
    sum += x;
  }
  if (sum != n - 3) return 0;
  Rational r(factorial(static_cast<unsigned>(n - 3)));
  for (int x : d) r /= Rational(factorial(static_cast<unsigned>(x)));
  return r;
}

class IntersectionNumbers {
 public:
  explicit IntersectionNumbers(bool enable_dvv = false) : dvv_(enable_dvv) {}

  Rational operator()(const TauQuery& q) { return eval(q.genus, q.exponents); }
  Rational operator()(int genus, std::vector<int> d) { return eval(genus, std::move(d)); }

 private:
  Rational eval(int g, std::vector<int> d) {
    if (g < 0) throw InputError("negative genus");
    for (int x : d)
      if (x < 0) throw InputError("negative exponent");
    if (g >= 2 && !dvv_) throw InputError("genus >= 2 requires the DVV extension (--enable-dvv)");
    const int n = static_cast<int>(d.size());
    if (!is_stable(g, n) || !dimension_condition({g, d})) return 0;
    std::sort(d.begin(), d.end());
    auto key = std::make_pair(g, d);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Rational r = reduce(g, d);
    memo_.emplace(std::move(key), r);
    return r;
  }

  // d sorted, stable, on the dimension locus
  Rational reduce(int g, const std::vector<int>& d) {
    const int n = static_cast<int>(d.size());
    if (g == 0 && n == 3) return 1;  // <tau_0^3>_0
    if (g == 1 && n == 1) return Rational(1, 24);
    if (d.front() == 0) {
      // string equation
      std::vector<int> rest(d.begin() + 1, d.end());
      Rational s = 0;
      for (std::size_t j = 0; j < rest.size(); ++j) {
        if (rest[j] == 0) continue;
        auto e = rest;
        --e[j];
        s += eval(g, std::move(e));
      }
      return s;
    }
    if (d.front() == 1) {
      // dilaton equation
      std::vector<int> rest(d.begin() + 1, d.end());
      return Rational(2 * g - 2 + n - 1) * eval(g, std::move(rest));
    }
    if (!dvv_) throw InputError("no string or dilaton reduction applies; enable DVV");
    return virasoro(g, d);
  }

  // <tau_{k+1} tau_S>_g with k+1 = largest exponent
  Rational virasoro(int g, const std::vector<int>& d) {
    const int k = d.back() - 1;
    std::vector<int> s(d.begin(), d.end() - 1);
    Rational total = 0;
    for (std::size_t j = 0; j < s.size(); ++j) {
      auto e = s;
      e[j] = s[j] + k;
      total += Rational(double_factorial_odd(k + s[j] + 1), double_factorial_odd(s[j])) * eval(g, std::move(e));
    }
    for (int r = 0; r <= k - 1; ++r) {
      const int t = k - 1 - r;
      const Rational w = Rational(double_factorial_odd(r + 1) * double_factorial_odd(t + 1), 2);
      if (g >= 1) {
        auto e = s;
        e.push_back(r);
        e.push_back(t);
        total += w * eval(g - 1, std::move(e));
      }
      const int m = static_cast<int>(s.size());
      for (int g1 = 0; g1 <= g; ++g1)
        for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
          std::vector<int> left{r}, right{t};
          for (int i = 0; i < m; ++i) (mask >> i & 1u ? left : right).push_back(s[i]);
          Rational a = eval(g1, std::move(left));
          if (a == 0) continue;
          total += w * a * eval(g - g1, std::move(right));
        }
    }
    return total / Rational(double_factorial_odd(k + 2));
  }

  bool dvv_;
  std::map<std::pair<int, std::vector<int>>, Rational> memo_;
};

inline Rational intersection_number(const TauQuery& q, bool enable_dvv = false) {
  return IntersectionNumbers(enable_dvv)(q);
}

}  // namespace dtregge
