#include <gtest/gtest.h>

#include "dtregge/matrix.hpp"
#include "dtregge/numeric.hpp"
#include "test_support.hpp"

using namespace dtregge;

TEST(Numeric, ParseRational) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_THROW(parse_rational("x/2"), InputError);
  EXPECT_THROW(parse_rational("1/0"), InputError);
}

TEST(Numeric, Factorials) {
  EXPECT_EQ(factorial(0), 1);
  EXPECT_EQ(factorial(10), 3628800);
  EXPECT_EQ(double_factorial_odd(0), 1);
  EXPECT_EQ(double_factorial_odd(1), 1);
  EXPECT_EQ(double_factorial_odd(4), 105);  // 7!!
  EXPECT_EQ(pow2(10), 1024);
}

TEST(Numeric, ExactSqrt) {
  EXPECT_EQ(exact_sqrt(Rational(9, 4)), Rational(3, 2));
  EXPECT_FALSE(exact_sqrt(Rational(2)).has_value());
  auto s = sqrt_in_qsqrt3(Rational(1, 27));
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(*s * *s, QSqrt3(Rational(1, 27)));
  EXPECT_FALSE(sqrt_in_qsqrt3(Rational(2)).has_value());
}

TEST(Numeric, QSqrt3FieldAxioms) {
  oracle::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    QSqrt3 x(Rational(rng.uniform(-9, 9), rng.uniform(1, 5)), Rational(rng.uniform(-9, 9), rng.uniform(1, 5)));
    QSqrt3 y(Rational(rng.uniform(-9, 9), rng.uniform(1, 5)), Rational(rng.uniform(-9, 9), rng.uniform(1, 5)));
    EXPECT_EQ(x * y, y * x);
    EXPECT_EQ((x + y) - y, x);
    if (!y.is_zero()) {
      EXPECT_EQ((x / y) * y, x);
    }
    const double xd = static_cast<double>(x.to_real());
    EXPECT_EQ(x.sign(), xd > 0 ? 1 : (xd < 0 ? -1 : 0));
  }
  EXPECT_EQ(QSqrt3::sqrt3() * QSqrt3::sqrt3(), QSqrt3(3));
}

TEST(Matrix, DeterminantAgreesWithBareiss) {
  oracle::Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = rng.uniform(1, 6);
    Matrix<Integer> m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = rng.uniform(-4, 4);
    EXPECT_EQ(Rational(determinant_bareiss(m)), determinant(to_rational(m)));
  }
}

TEST(Matrix, InverseAndRank) {
  Matrix<Rational> m{{2, 1}, {1, 1}};
  EXPECT_EQ(m * inverse(m), Matrix<Rational>::identity(2));
  Matrix<Rational> s{{1, 2, 3}, {2, 4, 6}};
  EXPECT_EQ(rank(s), 1u);
  EXPECT_THROW(inverse(Matrix<Rational>{{1, 2}, {2, 4}}), std::domain_error);
}
