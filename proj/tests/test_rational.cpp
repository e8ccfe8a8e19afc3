#include <gtest/gtest.h>

#include "fracvex/error.hpp"
#include "fracvex/rational.hpp"

using fracvex::Rational;

TEST(Rational, NormalizesSignAndGcd) {
  const Rational r(6, -4);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(r.to_string(), "-3/2");
  EXPECT_EQ(Rational(4, 2).to_string(), "2");
}

TEST(Rational, Arithmetic) {
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  EXPECT_EQ(Rational(1, 2) - Rational(1, 3), Rational(1, 6));
  EXPECT_EQ(Rational(2, 3) * Rational(3, 4), Rational(1, 2));
  EXPECT_EQ(Rational(2, 3) / Rational(4, 3), Rational(1, 2));
  EXPECT_LT(Rational(-1, 2), Rational(1, 3));
  EXPECT_DOUBLE_EQ(Rational(3, 4).times(0.5), 0.375);
}

TEST(Rational, Parse) {
  EXPECT_EQ(Rational::parse("-1/2"), Rational(-1, 2));
  EXPECT_EQ(Rational::parse("10"), Rational(10));
  EXPECT_THROW(Rational::parse("1/0"), fracvex::Error);
  EXPECT_THROW(Rational::parse("0.5"), fracvex::Error);
}
