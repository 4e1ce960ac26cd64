#include <gtest/gtest.h>

#include <cmath>

#include "folia/error.hpp"
#include "folia/interval.hpp"
#include "support/generators.hpp"

using namespace folia;

TEST(Rational, CanonicalForm) {
  Rational a(6, -4);
  EXPECT_EQ(a.num(), -3);
  EXPECT_EQ(a.den(), 2);
  EXPECT_EQ(a.str(), "-3/2");
  EXPECT_EQ(Rational(4, 2).str(), "2");
  EXPECT_THROW(Rational(1, 0), Error);
}

TEST(Rational, ParseRoundTrip) {
  for (const char* s : {"0", "7", "-7", "3/4", "-12/35", "-123456789012345678901234567891/2"}) {
    EXPECT_EQ(Rational::parse(s).str(), s);
  }
  EXPECT_EQ(Rational::parse("6/8"), Rational(3, 4));
  for (const char* bad : {"", "/", "1/", "/2", "1/0", "1.5", "a/b", "1/-2", "1/2/3", " 1"}) {
    EXPECT_THROW(Rational::parse(bad), Error) << bad;
  }
}

TEST(Rational, ExactArithmeticIdentities) {
  gen::Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    Rational a = gen::random_rational(rng, -5, 5, 9973);
    Rational b = gen::random_rational(rng, Rational(1, 3), 7, 7919);
    EXPECT_EQ((a + b) - b, a);
    EXPECT_EQ((a * b) / b, a);
    EXPECT_EQ(a - a, Rational(0));
    EXPECT_EQ(b * b.inverse(), Rational(1));
  }
}

TEST(Rational, FloorAndDecimal) {
  EXPECT_EQ(Rational(-1, 3).floor(), -1);
  EXPECT_EQ(Rational(7, 2).floor(), 3);
  EXPECT_EQ(Rational(1, 3).decimal(12), "0.333333333333");
  EXPECT_EQ(Rational(2, 3).decimal(3), "0.667");
  EXPECT_EQ(Rational(-1, 8).decimal(2), "-0.13");
  EXPECT_EQ(Rational(5).decimal(0), "5");
}

TEST(Rational, SimplestBetween) {
  EXPECT_EQ(Rational::simplest_between(Rational(3, 10), Rational(4, 10)), Rational(1, 3));
  EXPECT_EQ(Rational::simplest_between(Rational(1, 2), Rational(1, 2)), Rational(1, 2));
  EXPECT_EQ(Rational::simplest_between(Rational(-7, 5), Rational(-6, 5)), Rational(-4, 3));
  EXPECT_EQ(Rational::simplest_between(Rational(377, 987) - Rational(1, 10000), Rational(377, 987) + Rational(1, 10000)),
            Rational(34, 89));
}

TEST(Rational, FromDoubleIsExact) {
  EXPECT_EQ(Rational::from_double(0.375), Rational(3, 8));
  EXPECT_EQ(Rational::from_double(0.1).to_double(), 0.1);
  EXPECT_THROW(Rational::from_double(INFINITY), Error);
}

TEST(Interval, HalfOpenConvention) {
  Interval iv(Rational(1, 4), Rational(3, 4));
  EXPECT_TRUE(iv.contains(Rational(1, 4)));
  EXPECT_FALSE(iv.contains(Rational(3, 4)));
  EXPECT_FALSE(iv.contains_open(Rational(1, 4)));
  EXPECT_THROW(Interval(1, 1), Error);
  EXPECT_THROW(Interval(2, 1), Error);
  EXPECT_FALSE(Interval(0, 1).overlaps(Interval(1, 2)));
  EXPECT_EQ(Interval(0, 2).intersect(Interval(1, 3)), Interval(1, 2));
  EXPECT_FALSE(Interval(0, 1).intersect(Interval(1, 3)).has_value());
}

TEST(IntervalSet, NormalizesAndComputesSetAlgebra) {
  IntervalSet s({Interval(0, 1), Interval(1, 2), Interval(5, 6), Interval(Rational(1, 2), Rational(3, 2))});
  ASSERT_EQ(s.parts().size(), 2u);
  EXPECT_EQ(s.parts()[0], Interval(0, 2));
  EXPECT_EQ(s.measure(), Rational(3));
  IntervalSet t(Interval(1, 5));
  EXPECT_EQ(s.intersect(t), IntervalSet(Interval(1, 2)));
  EXPECT_EQ(s.subtract(t), IntervalSet({Interval(0, 1), Interval(5, 6)}));
  EXPECT_EQ(s.unite(t), IntervalSet(Interval(0, 6)));
  EXPECT_EQ(s.hull(), Interval(0, 6));
  EXPECT_TRUE(s.contains(Rational(0)));
  EXPECT_FALSE(s.contains(Rational(2)));
}

TEST(IntervalSet, MeasureIsAdditive) {
  gen::Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Interval> a, b;
    for (int i = 0; i < 4; ++i) {
      Rational x = gen::random_rational(rng, 0, 1, 64), y = gen::random_rational(rng, 0, 1, 64);
      if (x != y) a.emplace_back(min(x, y), max(x, y));
      x = gen::random_rational(rng, 0, 1, 64);
      y = gen::random_rational(rng, 0, 1, 64);
      if (x != y) b.emplace_back(min(x, y), max(x, y));
    }
    IntervalSet A(a), B(b);
    EXPECT_EQ(A.unite(B).measure() + A.intersect(B).measure(), A.measure() + B.measure());
    EXPECT_EQ(A.subtract(B).measure(), A.measure() - A.intersect(B).measure());
  }
}
