#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rwc/config.hpp"
#include "rwc/moments.hpp"
#include "rwc/perturbation.hpp"
#include "rwc/sampling.hpp"

namespace rwc {

/// Standard normal CDF. Computed from erfc on the upper tail and mirrored, so
/// normal_cdf(x) == 1 - normal_cdf(-x) holds bit-for-bit. Throws on NaN.
double normal_cdf(double x);

/// sup_t |F_m(t) - Phi(t)| for the empirical CDF F_m of the samples.
double kolmogorov_distance(std::span<const double> samples);

/// (x - mean) / sd with the sample mean and unbiased sample SD.
/// Throws std::domain_error when the SD is zero.
std::vector<double> standardize(std::span<const double> samples);

/// Outcome of a replicated run.
struct RunSummary {
  std::string statistic;
  ModelParams params;
  std::uint64_t seed = 0;
  std::int64_t replicas = 0;
  double mean = 0.0;
  double variance = 0.0;
  /// E|f - mean|^3 / sd^3 with the unbiased SD.
  double skew_proxy = 0.0;
  /// Empty when the run is degenerate.
  std::optional<double> d_K;
  /// 1.36 / sqrt(replicas).
  double d_K_band = 0.0;
  bool degenerate = false;
  std::string csv_path;
  /// Set by run_variance_check.
  std::optional<double> reference_variance;
  std::optional<double> ratio;
  std::optional<double> ratio_ci_low;
  std::optional<double> ratio_ci_high;
  /// Excluded from reproducibility comparisons.
  double wall_seconds = 0.0;
  int workers = 1;

  /// Every field; wall time and worker count sit under "metadata".
  nlohmann::json to_json() const;
};

/// Moments, d_K and degeneracy flag of a sample of replica values.
RunSummary summarize(std::span<const double> values);

/// Per-replica CSV with header `replica,value`.
void write_replica_csv(const std::filesystem::path& path, std::span<const double> values);
std::vector<double> read_replica_csv(const std::filesystem::path& path);

/// Replica values f(X_r) with X_r sampled from replica_seed(seed, r).
/// On failure the values computed so far are returned in `partial` (NaN for
/// missing replicas) before the exception propagates.
std::vector<double> replicate(const ExperimentConfig& config, std::vector<double>* partial = nullptr);

/// Replicates, standardizes and measures d_K. When config.out is set, writes
/// replicas.csv and summary.json there.
RunSummary run_clt(const ExperimentConfig& config);

/// run_clt for `nn` plus the ratio of the sample variance to (1 + d/2) C(n, d)
/// with a 95% interval from the fourth-moment standard error.
RunSummary run_variance_check(const ExperimentConfig& config);

/// Moments of NN({0..d-1}) over independent complete Exp(mean n) complexes.
SampleMoments nn_face_moments(int n, int d, std::int64_t replicas, std::uint64_t seed, int workers = 1);

struct CovarianceEstimate {
  double covariance = 0.0;
  double std_error = 0.0;
  std::int64_t replicas = 0;
  nlohmann::json to_json() const;
};

/// cov(NN(sigma), NN(sigma')) for sigma = {0..d-1}, sigma' = {1..d}.
CovarianceEstimate nn_pair_covariance(int n, int d, std::int64_t replicas, std::uint64_t seed, int workers = 1);

/// The same covariance, averaged in each replica over every adjacent pair
/// (faces sharing d-1 vertices) around the exact mean n/(n-d). All adjacent
/// pairs are exchangeable, so the target is unchanged while the per-replica
/// noise drops by roughly a factor n.
CovarianceEstimate nn_pair_covariance_pooled(int n, int d, std::int64_t replicas, std::uint64_t seed,
                                             int workers = 1);

/// The full stabilization record: delta-tilde, gamma, a rho probe, variance,
/// J, the analytic gamma/rho bounds and the resulting normal-approximation
/// bounds.
struct StabilizationReport {
  StabilizationEstimate delta_tilde;
  StabilizationEstimate gamma;
  std::optional<double> gamma_exact;
  StabilizationEstimate rho_probe;
  StabilizationEstimate variance;
  StabilizationEstimate J;
  /// Analytic bounds; empty when k = 0 (or, for the last two, when the
  /// variance estimate is 0).
  std::optional<double> gamma_bound;
  std::optional<double> rho_bound;
  std::optional<double> bound_corollary;
  std::optional<double> bound_add_one;
  double C = 1.0;
  nlohmann::json to_json() const;
};

/// `C` is the universal constant multiplier applied to every bound.
StabilizationReport run_stabilization(const ExperimentConfig& config, int k, const EstimatorOptions& options = {},
                                      double C = 1.0);

/// Writes `j` as pretty JSON followed by a newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace rwc
