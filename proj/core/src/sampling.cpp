#include "rwc/sampling.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "rwc/philox.hpp"

namespace rwc {

namespace {

double parse_value(std::string_view text, std::string_view key) {
  if (text.substr(0, key.size()) != key || text.size() <= key.size() || text[key.size()] != '=') {
    throw std::invalid_argument("weight distribution: expected '" + std::string(key) + "=<value>'");
  }
  text.remove_prefix(key.size() + 1);
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("weight distribution: bad number '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

WeightDistribution WeightDistribution::exponential(double mean) {
  if (!(mean > 0.0) || !std::isfinite(mean)) throw std::invalid_argument("exponential: mean must be > 0");
  return {Kind::exponential, mean, 0.0};
}

WeightDistribution WeightDistribution::uniform(double upper) {
  if (!(upper > 0.0) || !std::isfinite(upper)) throw std::invalid_argument("uniform: b must be > 0");
  return {Kind::uniform, upper, 0.0};
}

WeightDistribution WeightDistribution::constant(double value) {
  if (!(value >= 0.0) || !std::isfinite(value)) throw std::invalid_argument("constant: c must be >= 0");
  return {Kind::constant, value, 0.0};
}

WeightDistribution WeightDistribution::truncated_exponential(double mean, double cutoff) {
  if (!(mean > 0.0) || !std::isfinite(mean)) throw std::invalid_argument("texp: mean must be > 0");
  if (!(cutoff > 0.0) || !std::isfinite(cutoff)) throw std::invalid_argument("texp: alpha must be > 0");
  return {Kind::truncated_exponential, mean, cutoff};
}

WeightDistribution WeightDistribution::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("weight distribution '" + std::string(text) + "': expected <kind>:<params>");
  }
  const auto kind = text.substr(0, colon);
  const auto rest = text.substr(colon + 1);
  if (kind == "exp") return exponential(parse_value(rest, "mean"));
  if (kind == "uniform") return uniform(parse_value(rest, "b"));
  if (kind == "const") return constant(parse_value(rest, "c"));
  if (kind == "texp") {
    const auto comma = rest.find(',');
    if (comma == std::string_view::npos) throw std::invalid_argument("texp: expected mean=<x>,alpha=<y>");
    return truncated_exponential(parse_value(rest.substr(0, comma), "mean"),
                                 parse_value(rest.substr(comma + 1), "alpha"));
  }
  throw std::invalid_argument("unknown weight distribution kind '" + std::string(kind) + "'");
}

std::string WeightDistribution::to_string() const {
  switch (kind_) {
    case Kind::exponential:
      return "exp:mean=" + format_double(parameter_);
    case Kind::uniform:
      return "uniform:b=" + format_double(parameter_);
    case Kind::constant:
      return "const:c=" + format_double(parameter_);
    case Kind::truncated_exponential:
      return "texp:mean=" + format_double(parameter_) + ",alpha=" + format_double(cutoff_);
  }
  return {};
}

double WeightDistribution::quantile(double u) const {
  switch (kind_) {
    case Kind::exponential:
      return -parameter_ * std::log(1.0 - u);
    case Kind::uniform:
      return parameter_ * (1.0 - u);  // (0, b]
    case Kind::constant:
      return parameter_;
    case Kind::truncated_exponential: {
      // F(x) = (1 - e^{-x/m}) / (1 - e^{-a/m}).
      const double w = -parameter_ * std::log1p(u * std::expm1(-cutoff_ / parameter_));
      return std::min(w, cutoff_);
    }
  }
  return 0.0;
}

double WeightDistribution::cdf(double x) const {
  switch (kind_) {
    case Kind::exponential:
      return x <= 0.0 ? 0.0 : -std::expm1(-x / parameter_);
    case Kind::uniform:
      return x <= 0.0 ? 0.0 : std::min(1.0, x / parameter_);
    case Kind::constant:
      return x < parameter_ ? 0.0 : 1.0;
    case Kind::truncated_exponential:
      if (x <= 0.0) return 0.0;
      if (x >= cutoff_) return 1.0;
      return std::expm1(-x / parameter_) / std::expm1(-cutoff_ / parameter_);
  }
  return 0.0;
}

double WeightDistribution::upper_support() const {
  switch (kind_) {
    case Kind::exponential:
      return HUGE_VAL;
    case Kind::uniform:
    case Kind::constant:
      return parameter_;
    case Kind::truncated_exponential:
      return cutoff_;
  }
  return HUGE_VAL;
}

ModelParams ModelParams::from_lambda(int n, int d, double lambda, WeightDistribution dist) {
  ModelParams p{n, d, lambda / static_cast<double>(n), dist};
  p.validate();
  return p;
}

void ModelParams::validate() const {
  if (d < 1) throw std::invalid_argument("model: d must be >= 1");
  if (n <= d) throw std::invalid_argument("model: need d < n");
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("model: p must lie in (0, 1]");
  // Throws on overflow of C(n, d+1).
  (void)binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(d) + 1);
}

ModelParams truncated_params(const ModelParams& params, double alpha) {
  if (params.dist.kind() != WeightDistribution::Kind::exponential) {
    throw std::invalid_argument("truncated_params: weight distribution must be exponential");
  }
  if (!(alpha > 0.0)) throw std::invalid_argument("truncated_params: alpha must be > 0");
  const double mean = params.dist.parameter();
  ModelParams out = params;
  out.p = -std::expm1(-alpha / mean);
  out.dist = WeightDistribution::truncated_exponential(mean, alpha);
  return out;
}

void ForcedBits::force(Rank tau, Copy copy, bool value) {
  for (auto& e : entries_) {
    if (e.tau == tau && e.copy == copy) {
      e.value = value;
      return;
    }
  }
  entries_.push_back({tau, copy, value});
}

std::optional<bool> ForcedBits::lookup(Rank tau, Copy copy) const {
  for (const auto& e : entries_) {
    if (e.tau == tau && e.copy == copy) return e.value;
  }
  return std::nullopt;
}

PairedSample::PairedSample(ModelParams params, std::uint64_t seed, ForcedBits forced)
    : params_(std::move(params)), seed_(seed), forced_(std::move(forced)) {
  params_.validate();
  indexer_ = std::make_shared<const SimplexIndexer>(params_.n, params_.d);
}

std::pair<double, double> PairedSample::uniforms(Rank tau, Copy copy) const {
  const Philox4x32::Key key{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)};
  const Philox4x32::Counter ctr{static_cast<std::uint32_t>(tau), static_cast<std::uint32_t>(tau >> 32),
                                static_cast<std::uint32_t>(copy), 0x5257u};
  const auto out = Philox4x32::apply(ctr, key);
  return {unit_interval(join32(out[0], out[1])), unit_interval(join32(out[2], out[3]))};
}

std::pair<bool, double> PairedSample::draw(Rank tau, Copy copy) const {
  const auto [ub, uw] = uniforms(tau, copy);
  bool b = ub < params_.p;
  if (!forced_.empty()) {
    if (auto f = forced_.lookup(tau, copy)) b = *f;
  }
  return {b, params_.dist.quantile(uw)};
}

bool PairedSample::bit(Rank tau, Copy copy) const {
  bool b = uniforms(tau, copy).first < params_.p;
  if (!forced_.empty()) {
    if (auto f = forced_.lookup(tau, copy)) b = *f;
  }
  return b;
}

Quadruple PairedSample::quadruple(Rank tau) const {
  const auto [b, w] = draw(tau, Copy::primary);
  const auto [b2, w2] = draw(tau, Copy::independent);
  return {b, w, b2, w2};
}

double PairedSample::weight(Rank tau, Copy copy) const {
  return params_.dist.quantile(uniforms(tau, copy).second);
}

WeightedComplex PairedSample::primary() const { return resample({}); }

WeightedComplex PairedSample::resample(std::span<const Rank> replaced) const {
  std::vector<Rank> swapped(replaced.begin(), replaced.end());
  std::sort(swapped.begin(), swapped.end());
  std::vector<Rank> present;
  std::vector<double> weights;
  const Rank total = indexer_->num_top();
  const double p = params_.p;
  const bool force_check = !forced_.empty();
  auto next_swapped = swapped.begin();
  for (Rank tau = 0; tau < total; ++tau) {
    Copy copy = Copy::primary;
    while (next_swapped != swapped.end() && *next_swapped < tau) ++next_swapped;
    if (next_swapped != swapped.end() && *next_swapped == tau) copy = Copy::independent;
    const auto [ub, uw] = uniforms(tau, copy);
    bool b = ub < p;
    if (force_check) {
      if (auto f = forced_.lookup(tau, copy)) b = *f;
    }
    if (b) {
      present.push_back(tau);
      weights.push_back(params_.dist.quantile(uw));
    }
  }
  return WeightedComplex::from_sorted(indexer_, std::move(present), std::move(weights));
}

WeightedComplex sample_complex(const ModelParams& params, std::uint64_t seed) {
  return PairedSample(params, seed).primary();
}

WeightedComplex add_simplex(const WeightedComplex& x, Rank tau, double w) { return x.with_simplex(tau, w); }

WeightedComplex remove_simplex(const WeightedComplex& x, Rank tau) { return x.without_simplex(tau); }

WeightedComplex threshold_complete(const PairedSample& complete, double alpha) {
  if (complete.params().p != 1.0) throw std::invalid_argument("threshold_complete: sample must have p = 1");
  std::vector<Rank> present;
  std::vector<double> weights;
  const Rank total = complete.indexer().num_top();
  for (Rank tau = 0; tau < total; ++tau) {
    const double w = complete.weight(tau);
    if (w <= alpha) {
      present.push_back(tau);
      weights.push_back(w);
    }
  }
  return WeightedComplex::from_sorted(complete.shared_indexer(), std::move(present), std::move(weights));
}

}  // namespace rwc
