#include "rwc/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "rwc/bounds.hpp"
#include "rwc/parallel.hpp"
#include "rwc/philox.hpp"
#include "rwc/statistics.hpp"
#include "rwc/topology.hpp"
#include "rwc/version.hpp"

namespace rwc {

double normal_cdf(double x) {
  if (std::isnan(x)) throw std::domain_error("normal_cdf: NaN input");
  const double upper_tail = 0.5 * std::erfc(std::abs(x) / std::sqrt(2.0));
  return x < 0.0 ? upper_tail : 1.0 - upper_tail;
}

double kolmogorov_distance(std::span<const double> samples) {
  if (samples.empty()) throw std::invalid_argument("kolmogorov_distance: empty sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double m = static_cast<double>(sorted.size());
  double best = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double phi = normal_cdf(sorted[i]);
    best = std::max({best, static_cast<double>(i + 1) / m - phi, phi - static_cast<double>(i) / m});
  }
  return best;
}

std::vector<double> standardize(std::span<const double> samples) {
  const auto mom = sample_moments(samples);
  const double sd = mom.sd();
  if (!(sd > 0.0)) throw std::domain_error("standardize: zero sample variance");
  std::vector<double> out(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) out[i] = (samples[i] - mom.mean) / sd;
  return out;
}

nlohmann::json RunSummary::to_json() const {
  nlohmann::json j{{"statistic", statistic},
                   {"params", rwc::to_json(params)},
                   {"seed", seed},
                   {"seed_derivation", "replica r uses replica_seed(seed, r)"},
                   {"replicas", replicas},
                   {"mean", mean},
                   {"variance", variance},
                   {"skew_proxy", skew_proxy},
                   {"d_K_band", d_K_band},
                   {"degenerate", degenerate},
                   {"csv", csv_path}};
  j["d_K"] = d_K ? nlohmann::json(*d_K) : nlohmann::json(nullptr);
  if (reference_variance) {
    j["reference_variance"] = *reference_variance;
    j["ratio"] = *ratio;
    j["ratio_ci95"] = {*ratio_ci_low, *ratio_ci_high};
  }
  j["metadata"] = {{"wall_seconds", wall_seconds}, {"workers", workers}};
  return j;
}

RunSummary summarize(std::span<const double> values) {
  if (values.size() < 2) throw std::invalid_argument("summarize: need at least 2 replicas");
  const auto mom = sample_moments(values);
  RunSummary s;
  s.replicas = static_cast<std::int64_t>(values.size());
  s.mean = mom.mean;
  s.variance = mom.variance;
  s.d_K_band = 1.36 / std::sqrt(static_cast<double>(values.size()));
  if (mom.variance > 0.0) {
    s.skew_proxy = mom.abs_m3 / std::pow(mom.sd(), 3);
    s.d_K = kolmogorov_distance(standardize(values));
  } else {
    s.degenerate = true;
  }
  return s;
}

void write_replica_csv(const std::filesystem::path& path, std::span<const double> values) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "replica,value\n";
  for (std::size_t i = 0; i < values.size(); ++i) out << i << ',' << format_double(values[i]) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<double> read_replica_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "replica,value") {
    throw std::runtime_error(path.string() + ": expected header 'replica,value'");
  }
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error(path.string() + ": malformed row '" + line + "'");
    if (std::stoull(line.substr(0, comma)) != values.size()) {
      throw std::runtime_error(path.string() + ": replica ids must be 0, 1, 2, ...");
    }
    values.push_back(std::stod(line.substr(comma + 1)));
  }
  return values;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

std::vector<double> replicate(const ExperimentConfig& config, std::vector<double>* partial) {
  const auto stat = parse_statistic(config.statistic, config.params.d);
  config.params.validate();
  std::vector<double> values(static_cast<std::size_t>(config.replicas), std::numeric_limits<double>::quiet_NaN());
  try {
    parallel_for(values.size(), config.workers, [&](std::size_t r) {
      values[r] = stat->evaluate_sample(PairedSample(config.params, replica_seed(config.seed, r)));
    });
  } catch (...) {
    if (partial) *partial = std::move(values);
    throw;
  }
  return values;
}

namespace {

nlohmann::json config_echo(const ExperimentConfig& config) {
  auto j = config.to_json();
  j.erase("workers");
  return j;
}

RunSummary run_replicated(const ExperimentConfig& config, std::vector<double>& values) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<double> partial;
  const std::filesystem::path out = config.out;
  if (!config.out.empty()) std::filesystem::create_directories(out);
  try {
    values = replicate(config, &partial);
  } catch (const std::exception& e) {
    if (!config.out.empty()) {
      std::vector<double> done;
      for (double v : partial) {
        if (std::isnan(v)) break;
        done.push_back(v);
      }
      write_replica_csv(out / "replicas.csv", done);
      write_json(out / "summary.json", {{"partial", true},
                                        {"completed_replicas", done.size()},
                                        {"error", e.what()},
                                        {"config", config_echo(config)},
                                        {"version", kVersion}});
    }
    throw;
  }
  RunSummary s = summarize(values);
  s.statistic = config.statistic;
  s.params = config.params;
  s.seed = config.seed;
  s.workers = resolve_workers(config.workers);
  if (!config.out.empty()) {
    s.csv_path = (out / "replicas.csv").string();
    write_replica_csv(s.csv_path, values);
  }
  s.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return s;
}

void write_summary(const ExperimentConfig& config, const RunSummary& s) {
  if (config.out.empty()) return;
  auto j = s.to_json();
  j["config"] = config_echo(config);
  j["version"] = kVersion;
  write_json(std::filesystem::path(config.out) / "summary.json", j);
}

}  // namespace

RunSummary run_clt(const ExperimentConfig& config) {
  std::vector<double> values;
  RunSummary s = run_replicated(config, values);
  write_summary(config, s);
  return s;
}

RunSummary run_variance_check(const ExperimentConfig& config) {
  if (config.statistic != "nn") throw std::invalid_argument("variance check requires statistic nn");
  std::vector<double> values;
  RunSummary s = run_replicated(config, values);
  const auto mom = sample_moments(values);
  const double ref = nn_variance_asymptote(config.params.n, config.params.d);
  s.reference_variance = ref;
  s.ratio = mom.variance / ref;
  const double half = 1.96 * mom.variance_std_error() / ref;
  s.ratio_ci_low = *s.ratio - half;
  s.ratio_ci_high = *s.ratio + half;
  write_summary(config, s);
  return s;
}

namespace {

ModelParams complete_nn_params(int n, int d) {
  ModelParams params;
  params.n = n;
  params.d = d;
  params.p = 1.0;
  params.dist = WeightDistribution::exponential(static_cast<double>(n));
  params.validate();
  return params;
}

Simplex first_vertices(Vertex from, int count) {
  std::vector<Vertex> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = from + static_cast<Vertex>(i);
  return Simplex(std::span<const Vertex>(v));
}

}  // namespace

SampleMoments nn_face_moments(int n, int d, std::int64_t replicas, std::uint64_t seed, int workers) {
  const auto params = complete_nn_params(n, d);
  const Simplex sigma = first_vertices(0, d);
  std::vector<double> values(static_cast<std::size_t>(replicas));
  parallel_for(values.size(), workers, [&](std::size_t r) {
    values[r] = nn_face(PairedSample(params, replica_seed(seed, r)), sigma);
  });
  return sample_moments(values);
}

nlohmann::json CovarianceEstimate::to_json() const {
  return {{"covariance", covariance}, {"std_error", std_error}, {"replicas", replicas}};
}

CovarianceEstimate nn_pair_covariance(int n, int d, std::int64_t replicas, std::uint64_t seed, int workers) {
  if (replicas < 2) throw std::invalid_argument("nn_pair_covariance: need at least 2 replicas");
  const auto params = complete_nn_params(n, d);
  const Simplex sigma = first_vertices(0, d);
  const Simplex sigma_prime = first_vertices(1, d);
  std::vector<double> a(static_cast<std::size_t>(replicas));
  std::vector<double> b(a.size());
  parallel_for(a.size(), workers, [&](std::size_t r) {
    const PairedSample s(params, replica_seed(seed, r));
    a[r] = nn_face(s, sigma);
    b[r] = nn_face(s, sigma_prime);
  });
  const double ma = sample_moments(a).mean;
  const double mb = sample_moments(b).mean;
  std::vector<double> prod(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) prod[i] = (a[i] - ma) * (b[i] - mb);
  const auto mp = sample_moments(prod);
  const double m = static_cast<double>(replicas);
  return {mp.mean * m / (m - 1.0), mp.std_error(), replicas};
}

CovarianceEstimate nn_pair_covariance_pooled(int n, int d, std::int64_t replicas, std::uint64_t seed,
                                             int workers) {
  if (replicas < 2) throw std::invalid_argument("nn_pair_covariance_pooled: need at least 2 replicas");
  const auto params = complete_nn_params(n, d);
  const double mu = nn_face_mean(n, d);
  const SimplexIndexer idx(n, d);
  const auto& binom = idx.binomials();
  const std::size_t groups = d == 1 ? 1 : static_cast<std::size_t>(binomial(n, d - 1));
  const double pairs = static_cast<double>(groups) * static_cast<double>(binomial(n - d + 1, 2));
  std::vector<double> values(static_cast<std::size_t>(replicas));
  parallel_for(values.size(), workers, [&](std::size_t r) {
    const auto nn = nn_faces(PairedSample(params, replica_seed(seed, r)));
    std::vector<double> group(groups, 0.0);
    double sumsq = 0.0;
    ColexWalker walk(n, d);
    for (std::size_t f = 0; f < nn.size(); ++f, walk.advance()) {
      const double c = nn[f] - mu;
      sumsq += c * c;
      const Simplex& sigma = walk.current();
      for (int drop = 0; drop < d; ++drop) {
        Rank g = 0;
        int pos = 0;
        for (int i = 0; i < d; ++i) {
          if (i == drop) continue;
          g += binom(static_cast<int>(sigma[static_cast<std::size_t>(i)]), pos + 1);
          ++pos;
        }
        group[g] += c;
      }
    }
    double squares = 0.0;
    for (double gsum : group) squares += gsum * gsum;
    values[r] = (squares - static_cast<double>(d) * sumsq) / 2.0 / pairs;
  });
  const auto m = sample_moments(values);
  return {m.mean, m.std_error(), replicas};
}

nlohmann::json StabilizationReport::to_json() const {
  auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  return {{"delta_tilde", delta_tilde.to_json()},
          {"gamma", gamma.to_json()},
          {"gamma_exact", opt(gamma_exact)},
          {"rho_probe", rho_probe.to_json()},
          {"variance", variance.to_json()},
          {"J", J.to_json()},
          {"gamma_bound", opt(gamma_bound)},
          {"rho_bound", opt(rho_bound)},
          {"bound_corollary", opt(bound_corollary)},
          {"bound_add_one", opt(bound_add_one)},
          {"C", C},
          {"note", "bounds up to universal constant C; rho_probe is a lower probe of the supremum, rho_bound the "
                   "analytic upper bound"}};
}

StabilizationReport run_stabilization(const ExperimentConfig& config, int k, const EstimatorOptions& options,
                                      double C) {
  const auto f = parse_statistic(config.statistic, config.params.d);
  const auto& params = config.params;
  params.validate();
  const int replicas = static_cast<int>(config.replicas);
  EstimatorOptions opts = options;
  opts.workers = config.workers;

  StabilizationReport rep;
  rep.C = C;
  rep.delta_tilde = estimate_delta_tilde(*f, params, k, replicas, config.seed, opts);
  rep.gamma = estimate_gamma(params, k, replicas, config.seed, opts);
  if (binomial(params.n, params.d + 1) <= kGammaEnumerationLimit && !opts.random_pair) {
    rep.gamma_exact = gamma_exact(params, k);
  }
  rep.rho_probe = estimate_rho_probe(*f, params, k, {}, {}, replicas, config.seed, opts);
  std::tie(rep.variance, rep.J) = estimate_variance_and_J(*f, params, replicas, config.seed, opts);

  const double n = params.n;
  if (k >= 1 && k <= params.n) {
    rep.gamma_bound = rwc::gamma_bound(n, params.d, params.lambda(), k);
    rep.rho_bound = rwc::rho_bound(rep.J.point_estimate, k, n, params.d, params.lambda(), rep.C);
    if (rep.variance.point_estimate > 0.0) {
      BoundInputs in;
      in.n = n;
      in.d = params.d;
      in.lambda = params.lambda();
      in.k = k;
      in.sigma_sq = rep.variance.point_estimate;
      in.J = rep.J.point_estimate;
      in.delta = rep.delta_tilde.point_estimate;
      in.rho = *rep.rho_bound;
      in.gamma = rep.gamma_exact.value_or(rep.gamma.point_estimate);
      in.C = rep.C;
      rep.bound_corollary = rwc::bound_corollary(in);
      rep.bound_add_one = rwc::bound_add_one(in);
    }
  }
  return rep;
}

}  // namespace rwc
