#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "rwc/exact_sum.hpp"

namespace {

using rwc::ExactSum;
using rwc::Rational;

Rational exact(double x) {
  int exp = 0;
  const double m = std::frexp(x, &exp);
  const auto mant = static_cast<long long>(std::ldexp(m, 53));
  Rational r(mant);
  const int shift = exp - 53;
  const boost::multiprecision::cpp_int scale = boost::multiprecision::cpp_int(1) << std::abs(shift);
  return shift >= 0 ? Rational(r * Rational(scale)) : Rational(r / Rational(scale));
}

TEST(ExactSum, CancellationIsExact) {
  ExactSum s;
  s += 1e300;
  s += 1.0;
  s += -1e300;
  EXPECT_EQ(s.to_double(), 1.0);
  ExactSum a;
  a += 0.1;
  a += 0.2;
  ExactSum b;
  b += 0.2;
  b += 0.1;
  EXPECT_TRUE((a - b).is_zero());
  EXPECT_EQ(a, b);
}

TEST(ExactSum, MatchesRationalReference) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> ex(-60, 60);
  for (int trial = 0; trial < 50; ++trial) {
    ExactSum s;
    Rational ref = 0;
    for (int i = 0; i < 200; ++i) {
      const double x = std::ldexp(mant(gen), ex(gen));
      s += x;
      ref += exact(x);
    }
    EXPECT_EQ(s.to_rational(), ref);
    EXPECT_EQ(s.to_double(), static_cast<double>(ref));
  }
}

TEST(ExactSum, MixesRationalAndIntegerTerms) {
  ExactSum s;
  s.add(Rational(1, 3));
  s.add(std::int64_t{2});
  s.add(0.5);
  EXPECT_EQ(s.to_rational(), Rational(17, 6));
  s.subtract(ExactSum(0.5));
  EXPECT_EQ(s.to_rational(), Rational(7, 3));
}

TEST(ExactSum, HandlesSubnormalsAndExtremes) {
  ExactSum s;
  const double tiny = std::numeric_limits<double>::denorm_min();
  const double huge = std::numeric_limits<double>::max();
  s += tiny;
  s += huge;
  s += -huge;
  EXPECT_EQ(s.to_double(), tiny);
}

}  // namespace
