#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "rwc/philox.hpp"
#include "rwc/statistics.hpp"

namespace {

using namespace rwc;

WeightedComplex complete(int n, int d, double w) {
  std::vector<Rank> all(binomial(n, d + 1));
  std::iota(all.begin(), all.end(), 0);
  return WeightedComplex(n, d, all, std::vector<double>(all.size(), w));
}

WeightedComplex build(int n, int d, const std::vector<Simplex>& tops) {
  const SimplexIndexer idx(n, d);
  std::vector<Rank> r;
  for (const auto& t : tops) r.push_back(idx.rank_of(t));
  return WeightedComplex(n, d, r, std::vector<double>(r.size(), 1.0));
}

TEST(Statistics, NearestNeighborExamples) {
  ModelParams params;
  params.n = 9;
  params.d = 2;
  params.dist = WeightDistribution::constant(2.5);
  const PairedSample s(params, 1);
  EXPECT_EQ(nn_face(s, Simplex{0, 4}), 2.5);
  params.dist = WeightDistribution::constant(1.0);
  EXPECT_EQ(nn_total(PairedSample(params, 1)), 36.0);
  EXPECT_THROW(nn_total_exact(WeightedComplex(5, 1)), std::domain_error);
}

TEST(Statistics, DilutedExamples) {
  EXPECT_EQ(f_alpha(WeightedComplex(7, 2), 1.5), 21 * 1.5);
  ModelParams params;
  params.n = 10;
  params.d = 2;
  params.dist = WeightDistribution::exponential(10);
  const PairedSample s(params, 2);
  const auto x = s.primary();
  const double maxw = *std::max_element(x.weights().begin(), x.weights().end());
  EXPECT_EQ(f_alpha_exact(x, maxw), nn_total_exact(x));
  EXPECT_LE(f_alpha(x, 1.0), f_alpha(x, 2.0));
}

TEST(Statistics, LocalAndCountingExamples) {
  const WeightedComplex empty(7, 2);
  const auto one = LocalStatistic(builtin_local("one", 1, 2));
  EXPECT_EQ(one.evaluate(empty), 21.0);
  EXPECT_EQ(isolated_count(empty), 21);
  EXPECT_EQ(isolated_count(complete(7, 2, 1.0)), 0);
  const auto iso = LocalStatistic(builtin_local("isolated", 1, 2));
  EXPECT_EQ(cocycle_count_bounded(empty, 3), 21);
  EXPECT_EQ(betti_bounded(WeightedComplex(6, 1), 3), 5);
  const auto tri = build(4, 2, {{0, 1, 2}});
  EXPECT_EQ(cocycle_count_bounded(tri, 3), 5);
  EXPECT_EQ(betti_bounded(tri, 3), 2);

  ModelParams params;
  params.n = 9;
  params.d = 2;
  params.p = 0.1;
  for (int r = 0; r < 30; ++r) {
    const auto x = sample_complex(params, replica_seed(3, r));
    EXPECT_EQ(iso.evaluate(x), static_cast<double>(isolated_count(x)));
    EXPECT_EQ(LocalStatistic(builtin_local("cocycle", 4, 2)).evaluate(x),
              static_cast<double>(cocycle_count_bounded(x, 4)));
  }
}

TEST(Statistics, StreamingMatchesMaterialized) {
  for (int d : {1, 2, 3}) {
    ModelParams params;
    params.n = 12;
    params.d = d;
    params.dist = WeightDistribution::exponential(12);
    for (int r = 0; r < 10; ++r) {
      const PairedSample s(params, replica_seed(4, r));
      const auto x = s.primary();
      EXPECT_EQ(nn_total(s), nn_total_exact(x).to_double());
      const auto faces = nn_faces(s);
      for (Rank f = 0; f < x.indexer().num_faces(); ++f) EXPECT_EQ(faces[f], nn_face(s, x.indexer().face(f)));
    }
    params.p = 0.08;
    for (int r = 0; r < 10; ++r) {
      const PairedSample s(params, replica_seed(5, r));
      EXPECT_EQ(isolated_count(s), isolated_count(s.primary()));
    }
  }
}

struct Case {
  std::string stat;
  double p;
  WeightDistribution dist;
};

std::vector<Case> lipschitz_cases() {
  return {{"nn", 1.0, WeightDistribution::exponential(8)},
          {"nn-alpha:4", 0.3, WeightDistribution::exponential(8)},
          {"isolated", 0.2, WeightDistribution::constant(1)},
          {"cocycle:3", 0.2, WeightDistribution::constant(1)},
          {"betti:4", 0.2, WeightDistribution::constant(1)},
          {"local:isolated:2", 0.25, WeightDistribution::constant(1)},
          {"local:cocycle:2", 0.25, WeightDistribution::uniform(3)}};
}

TEST(Statistics, LipschitzEnvelopeHolds) {
  for (const auto& c : lipschitz_cases()) {
    for (int d : {1, 2}) {
      const auto f = parse_statistic(c.stat, d);
      ModelParams params;
      params.n = 8;
      params.d = d;
      params.p = c.p;
      params.dist = c.dist;
      for (int r = 0; r < 500 / 14 + 1; ++r) {
        const PairedSample s(params, replica_seed(6, r));
        std::vector<Rank> F;
        for (Rank t = 0; t < s.indexer().num_top(); ++t) {
          if (mix64(t + 1000 * r) % 5 == 0) F.push_back(t);
        }
        const double diff = std::abs(f->evaluate(s.primary()) - f->evaluate(s.resample(F)));
        double envelope = 0.0;
        for (Rank t : F) {
          const auto q = s.quadruple(t);
          if (q.b || q.b_copy) envelope += f->lipschitz(q.w, q.w_copy, d);
        }
        EXPECT_LE(diff, envelope * (1 + 1e-12) + 1e-12) << c.stat << " d=" << d;
      }
    }
  }
}

TEST(Statistics, InvariantUnderVertexPermutation) {
  std::mt19937_64 gen(9);
  for (const auto& c : lipschitz_cases()) {
    const int d = 2;
    const auto f = parse_statistic(c.stat, d);
    ModelParams params;
    params.n = 8;
    params.d = d;
    params.p = c.p;
    params.dist = c.dist;
    for (int r = 0; r < 100 / 7 + 1; ++r) {
      const auto x = sample_complex(params, replica_seed(7, r));
      std::vector<Vertex> perm(8);
      std::iota(perm.begin(), perm.end(), 0u);
      std::shuffle(perm.begin(), perm.end(), gen);
      std::vector<Rank> ranks;
      for (Rank t : x.present()) {
        std::vector<Vertex> v;
        for (Vertex u : x.indexer().top(t)) v.push_back(perm[u]);
        std::sort(v.begin(), v.end());
        ranks.push_back(x.indexer().rank_of(v));
      }
      const WeightedComplex y(8, d, ranks, {x.weights().begin(), x.weights().end()});
      EXPECT_EQ(f->evaluate_exact(x), f->evaluate_exact(y)) << c.stat;
    }
  }
}

TEST(Statistics, Grammar) {
  for (const char* ok : {"nn", "nn-alpha:2.5", "isolated", "cocycle:3", "betti:2", "local:isolated:1",
                         "local:cocycle:4", "local:one:1"}) {
    EXPECT_NO_THROW(parse_statistic(ok, 2)) << ok;
  }
  EXPECT_EQ(parse_statistic("cocycle:3", 2)->name(), "cocycle:3");
  for (const char* bad : {"", "nn:1", "nn-alpha", "nn-alpha:-1", "cocycle:0", "betti:x", "local:foo:1",
                          "local:isolated", "isolated:2", "median"}) {
    EXPECT_THROW(parse_statistic(bad, 2), std::invalid_argument) << bad;
  }
}

TEST(Statistics, LipschitzDescriptors) {
  EXPECT_EQ(parse_statistic("nn-alpha:3", 2)->lipschitz_constant(2), 9.0);
  EXPECT_EQ(parse_statistic("isolated", 2)->lipschitz_constant(2), 3.0);
  EXPECT_EQ(parse_statistic("cocycle:4", 1)->lipschitz_constant(1), 8.0);
  EXPECT_FALSE(parse_statistic("nn", 1)->lipschitz_constant(1).has_value());
  EXPECT_EQ(parse_statistic("nn", 1)->lipschitz(1.0, 3.0, 1), 6.0);
}

}  // namespace
