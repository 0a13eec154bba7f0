#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace dtregge {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
// Runtime-precision float; precision set through set_real_digits().
using Real = boost::multiprecision::mpfr_float;

/// Thrown for malformed or infeasible input data.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a configured resource cap (faces, dimension) would be exceeded.
class ResourceCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr unsigned kDefaultRealDigits = 50;

inline void set_real_digits(unsigned digits) { Real::default_precision(digits); }

/// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& r) { return r.str(); }

inline Rational parse_rational(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash != std::string::npos && Integer(text.substr(slash + 1)) == 0)
      throw InputError("zero denominator in '" + text + "'");
    return Rational(text);
  } catch (const InputError&) {
    throw;
  } catch (const std::exception&) {
    throw InputError("not a rational number: '" + text + "'");
  }
}

inline Integer factorial(unsigned n) {
  Integer f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

inline Integer pow2(unsigned n) {
  Integer p = 1;
  p <<= n;
  return p;
}

/// (2k-1)!! with (-1)!! = 1.
inline Integer double_factorial_odd(int k) {
  Integer f = 1;
  for (int i = 2 * k - 1; i > 1; i -= 2) f *= i;
  return f;
}

inline int sign_of(const Rational& r) { return r.sign(); }

/// Exact square root of a nonnegative rational when it is a perfect square.
inline std::optional<Rational> exact_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  Integer num = boost::multiprecision::numerator(r);
  Integer den = boost::multiprecision::denominator(r);
  Integer sn = boost::multiprecision::sqrt(num);
  Integer sd = boost::multiprecision::sqrt(den);
  if (sn * sn != num || sd * sd != den) return std::nullopt;
  return Rational(sn, sd);
}

/// An angle stored as an exact rational multiple of pi.
struct PiMultiple {
  Rational coefficient;

  friend bool operator==(const PiMultiple&, const PiMultiple&) = default;
  friend PiMultiple operator+(const PiMultiple& a, const PiMultiple& b) {
    return {a.coefficient + b.coefficient};
  }
  friend PiMultiple operator-(const PiMultiple& a, const PiMultiple& b) {
    return {a.coefficient - b.coefficient};
  }
  std::string str() const { return to_string(coefficient) + "*pi"; }
};

/// Elements a + b*sqrt(3) of the real quadratic field Q[sqrt 3].
class QSqrt3 {
 public:
  QSqrt3() = default;
  QSqrt3(Rational a) : a_(std::move(a)) {}  // NOLINT(implicit)
  QSqrt3(int a) : a_(a) {}                  // NOLINT(implicit)
  QSqrt3(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  static QSqrt3 sqrt3() { return {0, 1}; }

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt3_part() const { return b_; }
  bool is_rational() const { return b_ == 0; }

  QSqrt3 conjugate() const { return {a_, -b_}; }
  /// Field norm a^2 - 3 b^2.
  Rational norm() const { return a_ * a_ - 3 * b_ * b_; }

  int sign() const {
    int sa = a_.sign();
    int sb = b_.sign();
    if (sa == 0) return sb;
    if (sb == 0 || sa == sb) return sa;
    // opposite signs: compare a^2 with 3 b^2
    Rational lhs = a_ * a_;
    Rational rhs = 3 * b_ * b_;
    if (lhs == rhs) return 0;
    return lhs > rhs ? sa : sb;
  }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  QSqrt3& operator+=(const QSqrt3& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  QSqrt3& operator-=(const QSqrt3& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  QSqrt3& operator*=(const QSqrt3& o) {
    Rational a = a_ * o.a_ + 3 * b_ * o.b_;
    Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
  }
  QSqrt3& operator/=(const QSqrt3& o) {
    Rational n = o.norm();
    if (n == 0) throw std::domain_error("division by zero in Q[sqrt 3]");
    *this *= o.conjugate();
    a_ /= n;
    b_ /= n;
    return *this;
  }

  friend QSqrt3 operator+(QSqrt3 x, const QSqrt3& y) { return x += y; }
  friend QSqrt3 operator-(QSqrt3 x, const QSqrt3& y) { return x -= y; }
  friend QSqrt3 operator*(QSqrt3 x, const QSqrt3& y) { return x *= y; }
  friend QSqrt3 operator/(QSqrt3 x, const QSqrt3& y) { return x /= y; }
  friend QSqrt3 operator-(const QSqrt3& x) { return {-x.a_, -x.b_}; }
  friend bool operator==(const QSqrt3& x, const QSqrt3& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend bool operator<(const QSqrt3& x, const QSqrt3& y) { return (x - y).sign() < 0; }

  Real to_real() const { return Real(a_) + Real(b_) * boost::multiprecision::sqrt(Real(3)); }

  std::string str() const {
    if (b_ == 0) return to_string(a_);
    std::string s = a_ == 0 ? "" : to_string(a_) + (b_ > 0 ? "+" : "");
    return s + to_string(b_) + "*sqrt(3)";
  }
  friend std::ostream& operator<<(std::ostream& os, const QSqrt3& x) { return os << x.str(); }

 private:
  Rational a_{0};
  Rational b_{0};
};

/// sqrt(r) inside Q[sqrt 3], when r or 3r is a rational square.
inline std::optional<QSqrt3> sqrt_in_qsqrt3(const Rational& r) {
  if (auto s = exact_sqrt(r)) return QSqrt3(*s, 0);
  if (auto s = exact_sqrt(r / 3)) return QSqrt3(0, *s);
  return std::nullopt;
}

// Scalar traits used by the exact linear algebra and the polygon charts.
template <class T>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x) { return x == 0; }
  static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
  static Rational sqrt(const Rational& x) {
    auto s = exact_sqrt(x);
    if (!s) throw std::domain_error("square root is not rational");
    return *s;
  }
};

template <>
struct scalar_traits<Integer> {
  static constexpr bool exact = true;
  static bool is_zero(const Integer& x) { return x == 0; }
  static Integer abs(const Integer& x) { return x < 0 ? Integer(-x) : x; }
};

template <>
struct scalar_traits<QSqrt3> {
  static constexpr bool exact = true;
  static bool is_zero(const QSqrt3& x) { return x.is_zero(); }
  static QSqrt3 abs(const QSqrt3& x) { return x.sign() < 0 ? -x : x; }
  static QSqrt3 sqrt(const QSqrt3& x) {
    if (!x.is_rational()) throw std::domain_error("square root outside Q[sqrt 3]");
    auto s = sqrt_in_qsqrt3(x.rational_part());
    if (!s) throw std::domain_error("square root outside Q[sqrt 3]");
    return *s;
  }
};

template <>
struct scalar_traits<Real> {
  static constexpr bool exact = false;
  // Zero test relative to the working precision.
  static Real epsilon() {
    return boost::multiprecision::pow(Real(10), -static_cast<int>(Real::default_precision()) + 8);
  }
  static bool is_zero(const Real& x) { return boost::multiprecision::abs(x) <= epsilon(); }
  static Real abs(const Real& x) { return boost::multiprecision::abs(x); }
  static Real sqrt(const Real& x) { return boost::multiprecision::sqrt(x); }
};

}  // namespace dtregge
