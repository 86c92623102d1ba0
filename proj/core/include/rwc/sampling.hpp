#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rwc/complex.hpp"
#include "rwc/simplex.hpp"

namespace rwc {

/// Law of the weights attached to d-simplices.
class WeightDistribution {
 public:
  enum class Kind { exponential, uniform, constant, truncated_exponential };

  static WeightDistribution exponential(double mean);
  static WeightDistribution uniform(double upper);
  static WeightDistribution constant(double value);
  /// Exp(mean) conditioned on w <= cutoff.
  static WeightDistribution truncated_exponential(double mean, double cutoff);

  /// Parses `exp:mean=<x>`, `uniform:b=<x>`, `const:c=<x>`,
  /// `texp:mean=<x>,alpha=<y>`.
  static WeightDistribution parse(std::string_view text);
  std::string to_string() const;

  Kind kind() const { return kind_; }
  /// Mean for (truncated) exponential, upper end for uniform, value for constant.
  double parameter() const { return parameter_; }
  double cutoff() const { return cutoff_; }

  /// Inverse CDF at u in [0, 1).
  double quantile(double u) const;
  double cdf(double x) const;
  double upper_support() const;

  friend bool operator==(const WeightDistribution&, const WeightDistribution&) = default;

 private:
  WeightDistribution(Kind kind, double parameter, double cutoff)
      : kind_(kind), parameter_(parameter), cutoff_(cutoff) {}

  Kind kind_;
  double parameter_;
  double cutoff_;
};

/// Model parameters (n, d, p, D_n); lambda = n * p.
struct ModelParams {
  int n = 0;
  int d = 1;
  double p = 1.0;
  WeightDistribution dist = WeightDistribution::constant(1.0);

  double lambda() const { return static_cast<double>(n) * p; }
  static ModelParams from_lambda(int n, int d, double lambda, WeightDistribution dist);
  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// p_alpha = 1 - exp(-alpha/n) and the weight law Exp(mean n) conditioned on
/// w <= alpha. Requires dist = exponential.
ModelParams truncated_params(const ModelParams& params, double alpha);

/// Which copy of the (B, W) family a draw belongs to.
enum class Copy : std::uint32_t { primary = 0, independent = 1 };

struct Quadruple {
  bool b = false;
  double w = 0.0;
  bool b_copy = false;
  double w_copy = 0.0;
};

/// Overrides of sampled presence bits, applied after sampling.
class ForcedBits {
 public:
  void force(Rank tau, Copy copy, bool value);
  std::optional<bool> lookup(Rank tau, Copy copy) const;
  bool empty() const { return entries_.empty(); }

 private:
  struct Entry {
    Rank tau;
    Copy copy;
    bool value;
  };
  std::vector<Entry> entries_;
};

/// The coupled family (B, W, B', W') for one seed.
///
/// Every draw is a pure function of (seed, rank, copy): a single Philox block
/// keyed by the seed with counter (rank, copy) yields the presence and weight
/// uniforms. X and every resampled X^F therefore live on one probability
/// space without storing C(n, d+1) values.
class PairedSample {
 public:
  PairedSample(ModelParams params, std::uint64_t seed, ForcedBits forced = {});

  const ModelParams& params() const { return params_; }
  std::uint64_t seed() const { return seed_; }
  const SimplexIndexer& indexer() const { return *indexer_; }
  std::shared_ptr<const SimplexIndexer> shared_indexer() const { return indexer_; }

  std::pair<bool, double> draw(Rank tau, Copy copy) const;
  /// Presence bit b_tau (or b'_tau) only, skipping the weight transform.
  bool bit(Rank tau, Copy copy = Copy::primary) const;
  Quadruple quadruple(Rank tau) const;
  /// Weight w_tau (or w'_tau) regardless of the presence bit.
  double weight(Rank tau, Copy copy = Copy::primary) const;

  /// X = X_(B, W).
  WeightedComplex primary() const;
  /// X^F: (b', w') on F, (b, w) elsewhere.
  WeightedComplex resample(std::span<const Rank> replaced) const;

 private:
  std::pair<double, double> uniforms(Rank tau, Copy copy) const;

  ModelParams params_;
  std::uint64_t seed_;
  ForcedBits forced_;
  std::shared_ptr<const SimplexIndexer> indexer_;
};

WeightedComplex sample_complex(const ModelParams& params, std::uint64_t seed);

WeightedComplex add_simplex(const WeightedComplex& x, Rank tau, double w);
WeightedComplex remove_simplex(const WeightedComplex& x, Rank tau);

/// K_n^alpha: keep every d-simplex of the complete weighted complex whose
/// weight is at most alpha. `complete` must have p = 1.
WeightedComplex threshold_complete(const PairedSample& complete, double alpha);

}  // namespace rwc
