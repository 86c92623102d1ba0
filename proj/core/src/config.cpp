#include "rwc/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "rwc/parallel.hpp"
#include "rwc/statistics.hpp"

namespace rwc {

namespace {

std::string join_problems(const std::vector<std::string>& problems) {
  std::string out = "invalid config: ";
  for (std::size_t i = 0; i < problems.size(); ++i) {
    if (i > 0) out += "; ";
    out += problems[i];
  }
  return out;
}

struct DistKeys {
  const char* kind;
  std::vector<const char*> keys;
};

const std::vector<DistKeys>& dist_table() {
  static const std::vector<DistKeys> table{
      {"exp", {"mean"}}, {"uniform", {"b"}}, {"const", {"c"}}, {"texp", {"mean", "alpha"}}};
  return table;
}

WeightDistribution distribution_from_json(const nlohmann::json& j) {
  if (j.is_string()) return WeightDistribution::parse(j.get<std::string>());
  if (!j.is_object() || !j.contains("kind")) {
    throw std::invalid_argument("expected a string like 'exp:mean=20' or {\"kind\":..., \"params\":{...}}");
  }
  const auto kind = j.at("kind").get<std::string>();
  const nlohmann::json params = j.value("params", nlohmann::json::object());
  for (const auto& entry : dist_table()) {
    if (kind != entry.kind) continue;
    std::string text = kind + ":";
    for (std::size_t i = 0; i < entry.keys.size(); ++i) {
      const char* key = entry.keys[i];
      if (!params.contains(key) || !params.at(key).is_number()) {
        throw std::invalid_argument(std::string("missing numeric params.") + key);
      }
      if (i > 0) text += ",";
      std::ostringstream os;
      os << key << "=" << format_double(params.at(key).get<double>());
      text += os.str();
    }
    return WeightDistribution::parse(text);
  }
  throw std::invalid_argument("unknown kind '" + kind + "'");
}

}  // namespace

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::clt:
      return "clt";
    case Mode::variance:
      return "variance";
    case Mode::stabilization:
      return "stabilization";
    case Mode::gamma:
      return "gamma";
    case Mode::bound_pipeline:
      return "bound-pipeline";
  }
  return "clt";
}

Mode parse_mode(std::string_view text) {
  for (Mode m : {Mode::clt, Mode::variance, Mode::stabilization, Mode::gamma, Mode::bound_pipeline}) {
    if (text == to_string(m)) return m;
  }
  throw std::invalid_argument("unknown mode '" + std::string(text) + "'");
}

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::invalid_argument(join_problems(problems)), problems_(std::move(problems)) {}

int default_workers() {
  if (const char* env = std::getenv("RWC_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 4096) return static_cast<int>(v);
  }
  return resolve_workers(0);
}

WeightDistribution default_distribution(std::string_view statistic, int n) {
  if (statistic == "nn" || statistic.starts_with("nn-alpha:")) {
    return WeightDistribution::exponential(static_cast<double>(n));
  }
  return WeightDistribution::constant(1.0);
}

nlohmann::json distribution_to_json(const WeightDistribution& dist) {
  using Kind = WeightDistribution::Kind;
  switch (dist.kind()) {
    case Kind::exponential:
      return {{"kind", "exp"}, {"params", {{"mean", dist.parameter()}}}};
    case Kind::uniform:
      return {{"kind", "uniform"}, {"params", {{"b", dist.parameter()}}}};
    case Kind::constant:
      return {{"kind", "const"}, {"params", {{"c", dist.parameter()}}}};
    case Kind::truncated_exponential:
      return {{"kind", "texp"}, {"params", {{"mean", dist.parameter()}, {"alpha", dist.cutoff()}}}};
  }
  return nullptr;
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j{{"n", params.n},
                   {"d", params.d},
                   {"p", params.p},
                   {"lambda", params.lambda()},
                   {"dist", distribution_to_json(params.dist)},
                   {"statistic", statistic},
                   {"replicas", replicas},
                   {"seed", seed},
                   {"workers", workers},
                   {"out", out},
                   {"mode", rwc::to_string(mode)}};
  j["k"] = k ? nlohmann::json(*k) : nlohmann::json(nullptr);
  return j;
}

ExperimentConfig parse_config(const nlohmann::json& j) {
  std::vector<std::string> problems;
  if (!j.is_object()) throw ConfigError({"top level: expected a JSON object"});

  static const std::set<std::string> known{"n",    "d",        "p",    "lambda",  "dist", "statistic", "stat",
                                           "replicas", "seed", "workers", "out",  "mode",      "k"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) problems.push_back(key + ": unknown field");
  }

  auto get_int = [&](const char* key, std::optional<std::int64_t> fallback) -> std::optional<std::int64_t> {
    if (!j.contains(key) || j.at(key).is_null()) {
      if (!fallback) problems.push_back(std::string(key) + ": required");
      return fallback;
    }
    const auto& v = j.at(key);
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_number_float()) {
      const double x = v.get<double>();
      if (std::floor(x) == x && std::abs(x) < 9.0e15) return static_cast<std::int64_t>(x);
    }
    problems.push_back(std::string(key) + ": expected an integer");
    return std::nullopt;
  };
  auto get_double = [&](const char* key) -> std::optional<double> {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    if (j.at(key).is_number()) return j.at(key).get<double>();
    problems.push_back(std::string(key) + ": expected a number");
    return std::nullopt;
  };

  ExperimentConfig cfg;
  const auto n = get_int("n", std::nullopt);
  const auto d = get_int("d", std::nullopt);
  if (n && (*n < 2 || *n > 1000000)) problems.push_back("n: must lie in [2, 10^6]");
  if (d && (*d < 1 || *d >= static_cast<std::int64_t>(kMaxSimplexVertices))) {
    problems.push_back("d: must lie in [1, " + std::to_string(kMaxSimplexVertices - 1) + "]");
  }
  if (n && d && *d >= *n) problems.push_back("d: must be smaller than n");

  const auto p = get_double("p");
  const auto lambda = get_double("lambda");
  std::optional<double> resolved_p;
  if (p && (!(*p > 0.0) || *p > 1.0)) problems.push_back("p: must lie in (0, 1]");
  if (lambda && !(*lambda > 0.0)) problems.push_back("lambda: must be positive");
  if (p) {
    resolved_p = *p;
    if (lambda && n) {
      const double implied = static_cast<double>(*n) * *p;
      if (std::abs(implied - *lambda) > 1e-12 * std::max(1.0, std::abs(*lambda))) {
        problems.push_back("lambda: inconsistent with p (n*p = " + format_double(implied) + ")");
      }
    }
  } else if (lambda && n) {
    resolved_p = *lambda / static_cast<double>(*n);
    if (*resolved_p > 1.0) problems.push_back("lambda: implies p > 1");
  }

  if (j.contains("statistic") && j.contains("stat")) problems.push_back("stat: give only one of statistic or stat");
  const char* stat_key = j.contains("stat") ? "stat" : "statistic";
  if (j.contains(stat_key)) {
    if (j.at(stat_key).is_string()) {
      cfg.statistic = j.at(stat_key).get<std::string>();
    } else {
      problems.push_back(std::string(stat_key) + ": expected a string");
    }
  } else {
    problems.push_back("statistic: required");
  }
  if (!p && !lambda) {
    if (cfg.statistic == "nn") {
      resolved_p = 1.0;
    } else {
      problems.push_back("p: one of p or lambda is required");
    }
  }
  if (d && *d >= 1) {
    try {
      parse_statistic(cfg.statistic, static_cast<int>(*d));
    } catch (const std::exception& e) {
      problems.push_back(std::string(stat_key) + ": " + e.what());
    }
  }

  std::optional<WeightDistribution> dist;
  if (j.contains("dist") && !j.at("dist").is_null()) {
    try {
      dist = distribution_from_json(j.at("dist"));
    } catch (const std::exception& e) {
      problems.push_back(std::string("dist: ") + e.what());
    }
  } else if (n) {
    dist = default_distribution(cfg.statistic, static_cast<int>(*n));
  }

  if (const auto r = get_int("replicas", std::nullopt)) {
    if (*r < 2) problems.push_back("replicas: must be >= 2");
    cfg.replicas = *r;
  }
  if (j.contains("seed") && j.at("seed").is_number_unsigned()) {
    cfg.seed = j.at("seed").get<std::uint64_t>();
  } else if (j.contains("seed") && j.at("seed").is_number_integer() && j.at("seed").get<std::int64_t>() >= 0) {
    cfg.seed = static_cast<std::uint64_t>(j.at("seed").get<std::int64_t>());
  } else {
    problems.push_back("seed: required non-negative 64-bit integer");
  }
  if (const auto w = get_int("workers", std::int64_t{0})) {
    if (*w < 0 || *w > 4096) problems.push_back("workers: must lie in [0, 4096]");
    cfg.workers = *w > 0 ? static_cast<int>(*w) : default_workers();
  }
  if (j.contains("out") && !j.at("out").is_null()) {
    if (j.at("out").is_string()) {
      cfg.out = j.at("out").get<std::string>();
    } else {
      problems.push_back("out: expected a string");
    }
  }
  if (j.contains("mode")) {
    try {
      cfg.mode = parse_mode(j.at("mode").get<std::string>());
    } catch (const std::exception& e) {
      problems.push_back(std::string("mode: ") + e.what());
    }
  }
  if (j.contains("k") && !j.at("k").is_null()) {
    if (const auto k = get_int("k", std::nullopt)) {
      if (*k < 0) problems.push_back("k: must be >= 0");
      cfg.k = static_cast<int>(*k);
    }
  }
  if ((cfg.mode == Mode::stabilization || cfg.mode == Mode::gamma) && !cfg.k) {
    problems.push_back("k: required for mode " + to_string(cfg.mode));
  }

  if (problems.empty()) {
    cfg.params.n = static_cast<int>(*n);
    cfg.params.d = static_cast<int>(*d);
    cfg.params.p = *resolved_p;
    cfg.params.dist = *dist;
    try {
      cfg.params.validate();
    } catch (const std::exception& e) {
      problems.push_back(e.what());
    }
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return cfg;
}

ExperimentConfig parse_config_text(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError({std::string("malformed JSON: ") + e.what()});
  }
  return parse_config(j);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config file " + path.string()});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace rwc
