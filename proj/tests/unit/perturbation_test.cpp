#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "rwc/bounds.hpp"
#include "rwc/perturbation.hpp"
#include "rwc/philox.hpp"
#include "rwc/topology.hpp"

namespace {

using namespace rwc;

ModelParams make(int n, int d, double p, WeightDistribution dist = WeightDistribution::constant(1)) {
  ModelParams params;
  params.n = n;
  params.d = d;
  params.p = p;
  params.dist = dist;
  return params;
}

TEST(Perturbation, RandomizedDerivativeVanishesWhenBothCopiesAbsent) {
  const auto params = make(7, 2, 0.4);
  const IsolatedCount f;
  ForcedBits forced;
  forced.force(5, Copy::primary, false);
  forced.force(5, Copy::independent, false);
  const PairedSample s(params, 1, forced);
  EXPECT_EQ(randomized_derivative(f, s, {}, 5), 0.0);
}

TEST(Perturbation, RandomizedDerivativeIsolatedEdge) {
  const int n = 6;
  const auto params = make(n, 1, 0.5);
  ForcedBits forced;
  for (Rank t = 0; t < 15; ++t) forced.force(t, Copy::primary, false);
  const Rank tau = SimplexIndexer(n, 1).rank_of(Simplex{0, 1});
  forced.force(tau, Copy::independent, true);
  const PairedSample s(params, 2, forced);
  EXPECT_EQ(randomized_derivative(IsolatedCount(), s, {}, tau), 2.0);
  const std::vector<Rank> F{tau};
  EXPECT_THROW(randomized_derivative(IsolatedCount(), s, F, tau), std::invalid_argument);
}

TEST(Perturbation, AddOneCostExamples) {
  const SimplexIndexer idx(5, 2);
  const Rank tau = idx.rank_of(Simplex{0, 1, 2});
  EXPECT_EQ(add_one_cost(IsolatedCount(), WeightedComplex(5, 2), tau, 1.0), -3.0);

  // Every face of tau already covered by a lighter simplex.
  std::vector<Rank> cover{idx.rank_of(Simplex{0, 1, 3}), idx.rank_of(Simplex{0, 2, 3}), idx.rank_of(Simplex{1, 2, 3})};
  std::sort(cover.begin(), cover.end());
  const WeightedComplex x(5, 2, cover, {0.5, 0.5, 0.5});
  EXPECT_EQ(add_one_cost(DilutedNearestNeighbor(1.0), x, tau, 2.0), 0.0);

  EXPECT_EQ(add_one_cost(CocycleCount(3), WeightedComplex(5, 2), tau, 1.0), -1.0);
}

TEST(Perturbation, DiffusionEnvelopes) {
  for (const char* name : {"nn-alpha:3", "isolated", "cocycle:2", "betti:3", "local:cocycle:2"}) {
    for (int d : {1, 2}) {
      const auto f = parse_statistic(name, d);
      const auto params = make(8, d, 0.3, WeightDistribution::exponential(2));
      for (int r = 0; r < 200 / 5; ++r) {
        const PairedSample s(params, replica_seed(10, r));
        const Rank tau = mix64(r) % s.indexer().num_top();
        const auto q = s.quadruple(tau);
        const double delta = randomized_derivative(*f, s, {}, tau);
        const double H = f->lipschitz(q.w, q.w_copy, d);
        EXPECT_LE(std::abs(delta), (q.b || q.b_copy ? H : 0.0) + 1e-12) << name;
        const double D = add_one_cost(*f, s.primary(), tau, q.w);
        EXPECT_LE(std::abs(D), f->lipschitz(q.w, q.w, d) + 1e-12) << name;
      }
    }
  }
}

TEST(Perturbation, TwoScaleExactness) {
  for (int d : {1, 2}) {
    const auto params = make(9, d, 0.35, WeightDistribution::exponential(9));
    for (int r = 0; r < 60; ++r) {
      const auto x = sample_complex(params, replica_seed(11, r));
      const Rank tau = mix64(r + 99) % x.indexer().num_top();
      const DilutedNearestNeighbor fa(4.0);
      for (int k : {1, 2, 5}) {
        EXPECT_EQ(local_add_one_cost_exact(fa, x, tau, k, 1.5), add_one_cost_exact(fa, x, tau, 1.5));
      }
      for (int M : {1, 2}) {
        for (const char* g : {"isolated", "cocycle", "one"}) {
          const LocalStatistic f(builtin_local(g, M, d));
          EXPECT_EQ(local_add_one_cost_exact(f, x, tau, 2 * M, 1.0), add_one_cost_exact(f, x, tau, 1.0)) << g;
        }
      }
      const CocycleCount c(3);
      EXPECT_EQ(local_add_one_cost_exact(c, x, tau, 1000, 1.0), add_one_cost_exact(c, x, tau, 1.0));
    }
  }
}

TEST(Perturbation, DeltaTildeExamples) {
  const DilutedNearestNeighbor fa(5.0);
  const auto p1 = ModelParams::from_lambda(10, 2, 2.0, WeightDistribution::exponential(10));
  const auto e1 = estimate_delta_tilde(fa, p1, 1, 50, 1);
  EXPECT_EQ(e1.point_estimate, 0.0);
  EXPECT_EQ(e1.std_error, 0.0);

  const LocalStatistic iso(builtin_local("isolated", 1, 2));
  const auto p2 = ModelParams::from_lambda(10, 2, 2.0, WeightDistribution::constant(1));
  EXPECT_EQ(estimate_delta_tilde(iso, p2, 2, 50, 2).point_estimate, 0.0);

  const auto p3 = ModelParams::from_lambda(20, 2, 2.0, WeightDistribution::constant(1));
  const auto e3 = estimate_delta_tilde(CocycleCount(3), p3, 0, 300, 3);
  EXPECT_GT(e3.point_estimate - 1.96 * e3.std_error, 0.0);

  EXPECT_THROW(estimate_delta_tilde(fa, make(5, 2, 0.5), 1, 10, 1), std::domain_error);
  EXPECT_THROW(estimate_delta_tilde(fa, p1, 1, 1, 1), std::invalid_argument);
}

TEST(Perturbation, GammaEstimates) {
  for (std::uint64_t seed : {10u, 11u}) {
    const auto e = estimate_gamma(make(6, 1, 0.3), 1, 4000, seed);
    EXPECT_NEAR(e.point_estimate, 0.3, 3 * e.std_error + 1e-12);
  }
  const auto e = estimate_gamma(make(4, 1, 0.5), 2, 4000, 12);
  EXPECT_NEAR(e.point_estimate, 0.71875, 3 * e.std_error);
  const auto params = ModelParams::from_lambda(12, 2, 1.0, WeightDistribution::constant(1));
  for (int k : {1, 2, 3}) {
    const auto g = estimate_gamma(params, k, 2000, 20 + k);
    EXPECT_LE(g.point_estimate, gamma_bound(12, 2, 1.0, k) + 3 * g.std_error);
  }
}

TEST(Perturbation, RhoProbe) {
  const DilutedNearestNeighbor fa(3.0);
  const auto params = ModelParams::from_lambda(10, 2, 2.0, WeightDistribution::exponential(10));
  const auto zero = estimate_rho_probe(fa, params, 0, {}, {}, 100, 1);
  EXPECT_EQ(zero.point_estimate, 0.0);
  const auto probe = estimate_rho_probe(fa, params, 1, {}, {}, 400, 2);
  const double J = std::max(1.0, std::pow(9.0, 6));
  EXPECT_LE(probe.point_estimate, rho_bound(J, 1, 10, 2, 2.0) + 3 * probe.std_error);

  const std::vector<Rank> F{100, 101};
  const std::vector<Rank> G{50};
  const auto a = estimate_rho_probe(fa, params, 1, F, G, 400, 3);
  const auto b = estimate_rho_probe(fa, params, 1, G, F, 400, 3);
  EXPECT_NEAR(a.point_estimate, b.point_estimate, 3 * std::hypot(a.std_error, b.std_error) + 1e-12);
  const std::vector<Rank> bad{0};
  EXPECT_THROW(estimate_rho_probe(fa, params, 1, bad, {}, 10, 1), std::invalid_argument);
}

TEST(Perturbation, VarianceAndJ) {
  const auto params = ModelParams::from_lambda(10, 2, 2.0, WeightDistribution::exponential(10));
  const auto [var, J] = estimate_variance_and_J(DilutedNearestNeighbor(2.0), params, 100, 1);
  EXPECT_EQ(J.point_estimate, std::pow(6.0, 6));
  EXPECT_EQ(J.std_error, 0.0);
  EXPECT_LE(var.point_estimate, variance_upper_efron_stein(10, 2, 2.0, J.point_estimate) + 3 * var.std_error);

  const auto [cvar, cJ] = estimate_variance_and_J(LocalStatistic(builtin_local("one", 1, 2)), params, 50, 2);
  EXPECT_EQ(cvar.point_estimate, 0.0);
  EXPECT_EQ(cJ.point_estimate, 1.0);

  auto nn_params = make(12, 1, 1.0, WeightDistribution::exponential(12));
  const auto [nvar, nJ] = estimate_variance_and_J(NearestNeighborStatistic(), nn_params, 200, 3);
  EXPECT_GT(nJ.point_estimate, 1.0);
  EXPECT_GT(nJ.std_error, 0.0);
}

TEST(Perturbation, Determinism) {
  const auto params = ModelParams::from_lambda(12, 2, 2.0, WeightDistribution::constant(1));
  EstimatorOptions one;
  EstimatorOptions many;
  many.workers = 5;
  const auto a = estimate_delta_tilde(CocycleCount(2), params, 1, 64, 4, one).to_json();
  const auto b = estimate_delta_tilde(CocycleCount(2), params, 1, 64, 4, one).to_json();
  const auto c = estimate_delta_tilde(CocycleCount(2), params, 1, 64, 4, many).to_json();
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  EXPECT_EQ(estimate_gamma(params, 2, 64, 5, one).to_json(), estimate_gamma(params, 2, 64, 5, many).to_json());
}

TEST(Perturbation, ForcingMatchesRejectionSampling) {
  // E[isolated_count(X) | b_tau' = 1] by forcing the bit, vs rejection sampling.
  const auto params = make(8, 1, 0.15);
  const Rank tau2 = SimplexIndexer(8, 1).rank_of(canonical_top_pair(8, 1).second);
  const int reps = 4000;
  std::vector<double> forced_vals;
  std::vector<double> rejected_vals;
  for (int r = 0; forced_vals.size() < reps; ++r) {
    ForcedBits fb;
    fb.force(tau2, Copy::primary, true);
    forced_vals.push_back(static_cast<double>(isolated_count(PairedSample(params, replica_seed(30, r), fb).primary())));
  }
  for (std::uint64_t r = 0; rejected_vals.size() < reps; ++r) {
    const PairedSample s(params, replica_seed(31, r));
    if (s.bit(tau2)) rejected_vals.push_back(static_cast<double>(isolated_count(s.primary())));
  }
  auto mean_var = [](const std::vector<double>& v) {
    const double m = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return std::pair{m, s / (v.size() - 1)};
  };
  const auto [m1, v1] = mean_var(forced_vals);
  const auto [m2, v2] = mean_var(rejected_vals);
  EXPECT_NEAR(m1, m2, 3 * std::sqrt(v1 / reps + v2 / reps));
}

TEST(Perturbation, RandomPairsAreDisjoint) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto [a, b] = random_top_pair(9, 2, seed);
    const auto [c, e] = random_face_pair(9, 2, seed);
    for (Vertex v : a) EXPECT_FALSE(b.contains(v));
    for (Vertex v : c) EXPECT_FALSE(e.contains(v));
    EXPECT_EQ(a.dim(), 2);
    EXPECT_EQ(c.dim(), 1);
  }
}

TEST(Perturbation, LipschitzAuditFlagsUnderstatedH) {
  ModelParams params;
  params.n = 7;
  params.d = 2;
  params.p = 0.3;
  params.dist = WeightDistribution::constant(1);
  const auto honest = audit_lipschitz(LocalStatistic(builtin_local("isolated", 1, 2)), params, 400, 12);
  EXPECT_TRUE(honest.declared);
  EXPECT_GT(honest.checks, 50);
  EXPECT_TRUE(honest.ok());
  EXPECT_LE(honest.worst_ratio, 1.0 + 1e-12);

  auto understated = builtin_local("isolated", 1, 2);
  understated.H = 0.5;
  const auto flagged = audit_lipschitz(LocalStatistic(understated), params, 400, 12);
  EXPECT_FALSE(flagged.ok());
  EXPECT_GT(flagged.worst_ratio, 1.0);

  auto undeclared = builtin_local("isolated", 1, 2);
  undeclared.H.reset();
  const auto skipped = audit_lipschitz(LocalStatistic(undeclared), params, 10, 12);
  EXPECT_FALSE(skipped.declared);
  EXPECT_EQ(skipped.checks, 0);
}

}  // namespace
