#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rwc/sampling.hpp"

namespace rwc {

enum class Mode { clt, variance, stabilization, gamma, bound_pipeline };

std::string to_string(Mode mode);
Mode parse_mode(std::string_view text);

/// A fully resolved experiment description.
struct ExperimentConfig {
  ModelParams params;
  std::string statistic = "nn";
  std::int64_t replicas = 1000;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string out;
  Mode mode = Mode::clt;
  std::optional<int> k;

  /// Canonical JSON; parse_config(to_json()) reproduces the config.
  nlohmann::json to_json() const;
};

/// Raised with one message per offending field.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// Worker count used when a config does not name one: $RWC_WORKERS if set to
/// a positive integer, otherwise the hardware thread count.
int default_workers();

/// Default weight law: Exp(mean n) for `nn` and `nn-alpha`, constant 1 otherwise.
WeightDistribution default_distribution(std::string_view statistic, int n);

/// Accepts `n`, `d`, `p` or `lambda` (both allowed if consistent), `dist`
/// (a string like `exp:mean=20` or {"kind": ..., "params": {...}}),
/// `statistic` (alias `stat`), `replicas`, `seed`, `workers`, `out`, `mode`
/// and `k`. Unknown keys are rejected. For `nn` the presence probability
/// defaults to p = 1.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig parse_config_text(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

nlohmann::json distribution_to_json(const WeightDistribution& dist);

}  // namespace rwc
