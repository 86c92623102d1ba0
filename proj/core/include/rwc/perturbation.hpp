#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "rwc/complex.hpp"
#include "rwc/exact_sum.hpp"
#include "rwc/sampling.hpp"
#include "rwc/statistics.hpp"

namespace rwc {

/// A Monte Carlo estimate with its provenance.
struct StabilizationEstimate {
  std::string quantity;  // delta_tilde, delta, gamma, rho_probe, variance, J, addone_mean
  double point_estimate = 0.0;
  /// Sample standard deviation / sqrt(replicas); 0 for closed forms.
  double std_error = 0.0;
  /// Sample standard deviation of the per-replica values.
  double sample_sd = 0.0;
  std::int64_t replicas = 0;
  ModelParams params;
  std::optional<int> k;
  std::uint64_t seed = 0;
  std::string statistic;
  std::string conditioning;
  std::string note;

  nlohmann::json to_json() const;
};

struct EstimatorOptions {
  int workers = 1;
  /// Use a seed-derived random disjoint pair instead of the canonical one.
  bool random_pair = false;
  /// Estimate delta_{k,n} of the randomized-derivative form instead of the
  /// add-one-cost form.
  bool randomized_variant = false;
};

nlohmann::json to_json(const ModelParams& params);

/// Delta_tau f(X^F) = f(X^F) - f(X^{F u {tau}}). Requires tau not in F.
ExactSum randomized_derivative_exact(const Statistic& f, const PairedSample& s, std::span<const Rank> F, Rank tau);
double randomized_derivative(const Statistic& f, const PairedSample& s, std::span<const Rank> F, Rank tau);
/// The same evaluated on B_k(tau, X^F) and B_k(tau, X^{F u {tau}}).
ExactSum local_randomized_derivative_exact(const Statistic& f, const PairedSample& s, std::span<const Rank> F,
                                           Rank tau, int k);

/// D_tau f(X) = f(X + tau) - f(X - tau), tau carrying weight w.
ExactSum add_one_cost_exact(const Statistic& f, const WeightedComplex& x, Rank tau, double w);
double add_one_cost(const Statistic& f, const WeightedComplex& x, Rank tau, double w);
/// f(B_k(tau, X + tau)) - f(B_k(tau, X - tau)).
ExactSum local_add_one_cost_exact(const Statistic& f, const WeightedComplex& x, Rank tau, int k, double w);
double local_add_one_cost(const Statistic& f, const WeightedComplex& x, Rank tau, int k, double w);

/// A seed-derived pair of vertex-disjoint d-simplices.
std::pair<Simplex, Simplex> random_top_pair(int n, int d, std::uint64_t seed);
/// A seed-derived pair of vertex-disjoint (d-1)-simplices.
std::pair<Simplex, Simplex> random_face_pair(int n, int d, std::uint64_t seed);

/// max_{i=0,1} E[(D_tau f(X) - D_tau f(B_k(tau, X)))^2 | b_tau' = i].
StabilizationEstimate estimate_delta_tilde(const Statistic& f, const ModelParams& params, int k, int replicas,
                                           std::uint64_t seed, const EstimatorOptions& options = {});
/// P(sigma <-> sigma' within k) by Monte Carlo.
StabilizationEstimate estimate_gamma(const ModelParams& params, int k, int replicas, std::uint64_t seed,
                                     const EstimatorOptions& options = {});
/// Covariance probe for one fixed (F, F'); a lower bound on the supremum only.
StabilizationEstimate estimate_rho_probe(const Statistic& f, const ModelParams& params, int k,
                                         std::span<const Rank> F, std::span<const Rank> F_prime, int replicas,
                                         std::uint64_t seed, const EstimatorOptions& options = {});
/// Sample variance of f(X) and J = 1 v E[H(w, w')^6].
std::pair<StabilizationEstimate, StabilizationEstimate> estimate_variance_and_J(
    const Statistic& f, const ModelParams& params, int replicas, std::uint64_t seed,
    const EstimatorOptions& options = {});
/// E[D_tau f(X)] for the canonical tau.
StabilizationEstimate estimate_addone_mean(const Statistic& f, const ModelParams& params, int replicas,
                                           std::uint64_t seed, const EstimatorOptions& options = {});

/// Result of checking |f(X) - f(X^{tau})| <= H(w_tau, w'_tau) on sampled
/// single-simplex resamplings.
struct LipschitzAudit {
  std::string statistic;
  std::int64_t checks = 0;
  std::int64_t violations = 0;
  /// Largest |difference| / H over checks with H > 0.
  double worst_ratio = 0.0;
  /// Largest |difference| seen where H = 0.
  double worst_unbounded = 0.0;
  bool declared = false;

  bool ok() const { return violations == 0; }
  nlohmann::json to_json() const;
};

/// Empirical test of a statistic's Lipschitz descriptor. A statistic without
/// a declared H is reported with `declared = false` and no checks.
LipschitzAudit audit_lipschitz(const Statistic& f, const ModelParams& params, int replicas, std::uint64_t seed);

}  // namespace rwc
