#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rwc/bounds.hpp"

namespace {

using namespace rwc;

BoundInputs reference() {
  BoundInputs in;
  in.n = 1e4;
  in.d = 2;
  in.lambda = 0.4;
  in.k = 3;
  in.J = 1;
  in.sigma_sq = 1e8;
  return in;
}

TEST(Bounds, MainVanishesAtZero) {
  BoundInputs in = reference();
  in.lambda = 0;
  EXPECT_EQ(bound_main(in), 0.0);
}

TEST(Bounds, ConstantScalesFirstSummandOnly) {
  BoundInputs in = reference();
  in.gamma = gamma_bound(in.n, in.d, in.lambda, in.k);
  const double tail = bound_tail(in);
  const double base = bound_main(in) - tail;
  in.C = 2;
  EXPECT_NEAR(bound_main(in) - tail, 2 * base, 1e-15);
  EXPECT_EQ(bound_tail(in), tail);
}

TEST(Bounds, AddOneUsesCubeRootOfGamma) {
  BoundInputs in = reference();
  in.gamma = 0.3;
  EXPECT_GT(bound_add_one(in), bound_main(in));
  in.gamma = 0;
  EXPECT_EQ(bound_add_one(in), bound_main(in));
  in.gamma = 1;
  EXPECT_EQ(bound_add_one(in), bound_main(in));
}

TEST(Bounds, CorollaryReferenceValue) {
  const BoundInputs in = reference();
  const double v = bound_corollary(in);
  EXPECT_NEAR(v, 0.7399, 5e-5);
  const auto ref = oracle::corollary_bound(1e4, 2, oracle::BigFloat("0.4"), 3, oracle::BigFloat("1e8"), 1, 0, 1);
  EXPECT_NEAR(v, ref.convert_to<double>(), 1e-12);
  BoundInputs bad = in;
  bad.k = 20000;
  EXPECT_THROW(bound_corollary(bad), std::invalid_argument);
}

TEST(Bounds, CorollaryJScaling) {
  BoundInputs in = reference();
  const double first = bound_corollary(in) - bound_tail(in);
  const double tail = bound_tail(in);
  in.J = 64;
  EXPECT_NEAR(bound_corollary(in) - bound_tail(in), 2 * first, 1e-12);
  EXPECT_NEAR(bound_tail(in), std::pow(2.0, 1.5) * tail, 1e-15);
}

TEST(Bounds, CorollaryDecaysAlongAdmissibleSequences) {
  double prev = INFINITY;
  for (double n = 1e6; n <= 1e24; n *= 1e6) {
    BoundInputs in;
    in.n = n;
    in.d = 2;
    in.lambda = 0.5;
    in.k = static_cast<int>(std::round(std::pow(n, 1.0 / 6)));
    in.sigma_sq = n * n;
    const double v = bound_corollary(in);
    EXPECT_LT(v, prev);
    prev = v;
  }
  EXPECT_LT(prev, 0.5);
}

TEST(Bounds, GammaBoundExamples) {
  EXPECT_DOUBLE_EQ(gamma_bound(100, 1, 1, 2), 0.04);
  EXPECT_DOUBLE_EQ(gamma_bound(1000, 2, 0.3, 3), 27.0 / 1e6);
  EXPECT_DOUBLE_EQ(gamma_bound(3, 1, 1, 5), 25.0 / 3);
}

TEST(Bounds, RhoBoundExamples) {
  EXPECT_NEAR(rho_bound(1, 1, 1000, 2, 0.2, 1.5), 1.5 / 10, 1e-15);
  EXPECT_NEAR(rho_bound(1, 2, 2000, 1, 0.5), rho_bound(1, 2, 1000, 1, 0.5) / std::cbrt(2.0), 1e-15);
  EXPECT_NEAR(rho_bound(1, 3, 1e4, 2, 0.4), std::cbrt(243.0 / 1e4), 1e-15);
  EXPECT_THROW(rho_bound(1, 5, 4, 1, 1), std::invalid_argument);
}

TEST(Bounds, VarianceBounds) {
  EXPECT_EQ(variance_lower_unweighted(10, 1, 1.0, -0.5), 0.0);
  EXPECT_NEAR(variance_lower_unweighted(10, 1, 0.5, -0.5), 2 * 45 * 0.25 * 0.25, 1e-12);
  EXPECT_EQ(variance_upper_efron_stein(300, 1, 300, 1), 300.0 * 300.0);
  const double d = 2;
  const double lambda = 1;
  double prev_gap = INFINITY;
  for (int n : {100, 1000, 10000, 100000}) {
    const double p = lambda / n;
    const double pa = all_faces_maximal_probability(n, 2, lambda);
    const double lower = variance_lower_unweighted(n, 2, p, -pa) / std::pow(n, d);
    const double gap = std::abs(lower / cocycle_variance_limit(2, lambda) - 1);
    EXPECT_LT(gap, prev_gap);
    prev_gap = gap;
  }
  EXPECT_LT(prev_gap, 1e-3);
}

TEST(Bounds, NearestNeighborReferences) {
  EXPECT_EQ(nn_variance_asymptote(300, 1), 450.0);
  EXPECT_EQ(nn_variance_asymptote(100, 2), 9900.0);
  EXPECT_EQ(nn_cov_asymptote(100), 0.005);
  EXPECT_EQ(nn_face_mean(50, 2), 50.0 / 48);
  EXPECT_EQ(nn_face_variance(50, 2), (50.0 / 48) * (50.0 / 48));
  for (int n : {100, 1000}) {
    const Rational m = n - 2;
    const Rational expected = Rational(2 * n * n) / ((m + 1) * (2 * m + 1)) - Rational(n * n) / ((m + 1) * (m + 1));
    EXPECT_EQ(nn_cov_exact(n, 1), expected);
  }
}

TEST(Bounds, TruncationLevel) {
  EXPECT_NEAR(truncation_level(200, 1, 3), 64 * 4 * std::log(200.0), 1e-12);
  EXPECT_NEAR(truncation_level(200, 1, 7), 2 * truncation_level(200, 1, 3), 1e-12);
}

TEST(Bounds, Validation) {
  BoundInputs in = reference();
  in.sigma_sq = 0;
  EXPECT_THROW(in.validate(), std::invalid_argument);
  in = reference();
  in.delta = -1;
  EXPECT_THROW(bound_main(in), std::invalid_argument);
}

}  // namespace
