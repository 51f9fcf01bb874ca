#include "crn1d/rational.hpp"

#include <gtest/gtest.h>

using namespace crn1d;

TEST(Rational, ParsesFractionsDecimalsAndExponents) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational(" -11/4 "), Rational(-11, 4));
  EXPECT_EQ(parse_rational("0.1"), Rational(1, 10));
  EXPECT_EQ(parse_rational("-1.25"), Rational(-5, 4));
  EXPECT_EQ(parse_rational("3e-2"), Rational(3, 100));
  EXPECT_EQ(parse_rational("2.5E3"), Rational(2500));
  EXPECT_EQ(parse_rational(".5"), Rational(1, 2));
  EXPECT_EQ(parse_rational("16"), Rational(16));
}

TEST(Rational, RejectsMalformedText) {
  for (const char* bad : {"", "1/0", "abc", "1.2.3", "1/2/3", "--1", "1e", "."})
    EXPECT_THROW(parse_rational(bad), std::invalid_argument) << bad;
}

TEST(Rational, PrintsCanonically) {
  EXPECT_EQ(to_string(Rational(9, 2)), "9/2");
  EXPECT_EQ(to_string(Rational(-22, 3)), "-22/3");
  EXPECT_EQ(to_string(Rational(4, 2)), "2");
  EXPECT_EQ(to_string(Rational(0)), "0");
}

TEST(Rational, FloorAndCeil) {
  EXPECT_EQ(floor(Rational(7, 2)), 3);
  EXPECT_EQ(floor(Rational(-7, 2)), -4);
  EXPECT_EQ(ceil(Rational(-7, 2)), -3);
  EXPECT_EQ(ceil(Rational(3)), 3);
}

TEST(Rational, DecimalRounding) {
  EXPECT_EQ(to_decimal(Rational(2, 3), 4), "0.6667");
  EXPECT_EQ(to_decimal(Rational(-1, 8), 2), "-0.13");
  EXPECT_EQ(to_decimal(Rational(-1, 1000), 2), "0.00");
  EXPECT_EQ(to_decimal(Rational(5), 0), "5");
}

TEST(Rational, SimplestBetween) {
  EXPECT_EQ(simplest_between(Rational(-1), Rational(1)), 0);
  EXPECT_EQ(simplest_between(Rational(1, 3), Rational(1, 2)), Rational(2, 5));
  EXPECT_EQ(simplest_between(Rational(3), Rational(10, 3)), Rational(13, 4));
  EXPECT_EQ(simplest_between(Rational(0), Rational(1, 3)), Rational(1, 4));
  EXPECT_EQ(simplest_between(Rational(-1, 2), Rational(-1, 3)), Rational(-2, 5));
  EXPECT_EQ(simplest_between(Rational(2), Rational(5)), 3);
  // Brute force check of minimal denominator.
  for (int a = -12; a < 12; ++a)
    for (int b = a + 1; b <= 12; ++b) {
      Rational lo(a, 7), hi(b, 7);
      Rational s = simplest_between(lo, hi);
      EXPECT_TRUE(lo < s && s < hi);
      for (int d = 1; d < denom(s); ++d)
        for (int n = -100; n <= 100; ++n) EXPECT_FALSE(Rational(n, d) > lo && Rational(n, d) < hi) << n << "/" << d;
    }
  EXPECT_THROW(simplest_between(Rational(1), Rational(1)), std::invalid_argument);
}
