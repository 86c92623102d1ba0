#include "rwc/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "rwc/moments.hpp"
#include "rwc/parallel.hpp"
#include "rwc/philox.hpp"
#include "rwc/topology.hpp"

namespace rwc {

nlohmann::json to_json(const ModelParams& params) {
  return {{"n", params.n}, {"d", params.d}, {"p", params.p}, {"lambda", params.lambda()},
          {"weights", params.dist.to_string()}};
}

nlohmann::json StabilizationEstimate::to_json() const {
  nlohmann::json j{{"quantity", quantity},
                   {"point_estimate", point_estimate},
                   {"std_error", std_error},
                   {"sample_sd", sample_sd},
                   {"replicas", replicas},
                   {"params", rwc::to_json(params)},
                   {"seed", seed},
                   {"statistic", statistic},
                   {"conditioning", conditioning}};
  j["k"] = k ? nlohmann::json(*k) : nlohmann::json(nullptr);
  if (!note.empty()) j["note"] = note;
  return j;
}

ExactSum randomized_derivative_exact(const Statistic& f, const PairedSample& s, std::span<const Rank> F, Rank tau) {
  if (std::find(F.begin(), F.end(), tau) != F.end()) {
    throw std::invalid_argument("randomized_derivative: tau must not belong to F");
  }
  std::vector<Rank> with_tau(F.begin(), F.end());
  with_tau.push_back(tau);
  return f.evaluate_exact(s.resample(F)) - f.evaluate_exact(s.resample(with_tau));
}

double randomized_derivative(const Statistic& f, const PairedSample& s, std::span<const Rank> F, Rank tau) {
  return randomized_derivative_exact(f, s, F, tau).to_double();
}

ExactSum local_randomized_derivative_exact(const Statistic& f, const PairedSample& s, std::span<const Rank> F,
                                           Rank tau, int k) {
  if (std::find(F.begin(), F.end(), tau) != F.end()) {
    throw std::invalid_argument("randomized_derivative: tau must not belong to F");
  }
  std::vector<Rank> with_tau(F.begin(), F.end());
  with_tau.push_back(tau);
  const Simplex center = s.indexer().top(tau);
  return f.evaluate_exact(ball_k(s.resample(F), center, k)) -
         f.evaluate_exact(ball_k(s.resample(with_tau), center, k));
}

ExactSum add_one_cost_exact(const Statistic& f, const WeightedComplex& x, Rank tau, double w) {
  return f.evaluate_exact(x.with_simplex(tau, w)) - f.evaluate_exact(x.without_simplex(tau));
}

double add_one_cost(const Statistic& f, const WeightedComplex& x, Rank tau, double w) {
  return add_one_cost_exact(f, x, tau, w).to_double();
}

ExactSum local_add_one_cost_exact(const Statistic& f, const WeightedComplex& x, Rank tau, int k, double w) {
  const Simplex center = x.indexer().top(tau);
  return f.evaluate_exact(ball_k(x.with_simplex(tau, w), center, k)) -
         f.evaluate_exact(ball_k(x.without_simplex(tau), center, k));
}

double local_add_one_cost(const Statistic& f, const WeightedComplex& x, Rank tau, int k, double w) {
  return local_add_one_cost_exact(f, x, tau, k, w).to_double();
}

namespace {

std::string simplex_text(const Simplex& s) {
  std::ostringstream os;
  os << s;
  return os.str();
}

std::vector<Vertex> seeded_permutation(int n, std::uint64_t seed) {
  std::vector<Vertex> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Vertex{0});
  std::uint64_t state = mix64(seed ^ 0x7065726D75746521ull);
  for (int i = n - 1; i > 0; --i) {
    state = mix64(state + static_cast<std::uint64_t>(i));
    const auto j = static_cast<std::size_t>(state % static_cast<std::uint64_t>(i + 1));
    std::swap(perm[static_cast<std::size_t>(i)], perm[j]);
  }
  return perm;
}

std::pair<Simplex, Simplex> random_pair(int n, int size, std::uint64_t seed) {
  if (n < 2 * size) throw std::domain_error("no vertex-disjoint pair fits in n vertices");
  auto perm = seeded_permutation(n, seed);
  auto a_end = perm.begin() + size;
  auto b_end = a_end + size;
  std::sort(perm.begin(), a_end);
  std::sort(a_end, b_end);
  return {Simplex(std::span<const Vertex>(&*perm.begin(), static_cast<std::size_t>(size))),
          Simplex(std::span<const Vertex>(&*a_end, static_cast<std::size_t>(size)))};
}

StabilizationEstimate make_estimate(std::string quantity, const ModelParams& params, std::uint64_t seed,
                                    std::span<const double> values) {
  const auto m = sample_moments(values);
  StabilizationEstimate e;
  e.quantity = std::move(quantity);
  e.point_estimate = m.mean;
  e.std_error = m.std_error();
  e.sample_sd = m.sd();
  e.replicas = static_cast<std::int64_t>(values.size());
  e.params = params;
  e.seed = seed;
  return e;
}

void require_replicas(int replicas) {
  if (replicas < 2) throw std::invalid_argument("estimators need at least 2 replicas");
}

}  // namespace

std::pair<Simplex, Simplex> random_top_pair(int n, int d, std::uint64_t seed) { return random_pair(n, d + 1, seed); }

std::pair<Simplex, Simplex> random_face_pair(int n, int d, std::uint64_t seed) { return random_pair(n, d, seed); }

StabilizationEstimate estimate_delta_tilde(const Statistic& f, const ModelParams& params, int k, int replicas,
                                           std::uint64_t seed, const EstimatorOptions& options) {
  require_replicas(replicas);
  params.validate();
  if (k < 0) throw std::invalid_argument("estimate_delta_tilde: k must be >= 0");
  const auto [tau_s, tau2_s] = options.random_pair ? random_top_pair(params.n, params.d, seed)
                                                   : canonical_top_pair(params.n, params.d);
  const SimplexIndexer idx(params.n, params.d);
  const Rank tau = idx.rank_of(tau_s);
  const Rank tau2 = idx.rank_of(tau2_s);

  struct Cell {
    ForcedBits forced;
    std::string label;
  };
  std::vector<Cell> cells;
  for (int i = 0; i <= 1; ++i) {
    if (!options.randomized_variant) {
      Cell c;
      c.forced.force(tau2, Copy::primary, i == 1);
      c.label = "b_tau'=" + std::to_string(i);
      cells.push_back(std::move(c));
      continue;
    }
    for (int flip = 0; flip <= 1; ++flip) {
      Cell c;
      c.forced.force(tau, Copy::primary, flip == 0);
      c.forced.force(tau, Copy::independent, flip == 1);
      c.forced.force(tau2, Copy::primary, i == 1);
      c.label = "(b_tau,b'_tau)=(" + std::to_string(flip == 0) + "," + std::to_string(flip == 1) +
                "),b_tau'=" + std::to_string(i);
      cells.push_back(std::move(c));
    }
  }

  StabilizationEstimate best;
  std::string per_cell;
  bool first = true;
  double max_se = 0.0;
  for (const auto& cell : cells) {
    std::vector<double> values(static_cast<std::size_t>(replicas));
    parallel_for(values.size(), options.workers, [&](std::size_t r) {
      const PairedSample s(params, replica_seed(seed, r), cell.forced);
      ExactSum gap;
      if (options.randomized_variant) {
        gap = randomized_derivative_exact(f, s, {}, tau) - local_randomized_derivative_exact(f, s, {}, tau, k);
      } else {
        const WeightedComplex x = s.primary();
        const double w = s.weight(tau);
        gap = add_one_cost_exact(f, x, tau, w) - local_add_one_cost_exact(f, x, tau, k, w);
      }
      const double g = gap.to_double();
      values[r] = g * g;
    });
    auto e = make_estimate(options.randomized_variant ? "delta" : "delta_tilde", params, seed, values);
    per_cell += (per_cell.empty() ? "" : "; ") + cell.label + ": mean=" + format_double(e.point_estimate) +
                " se=" + format_double(e.std_error);
    max_se = std::max(max_se, e.std_error);
    if (first || e.point_estimate > best.point_estimate) best = e;
    first = false;
  }
  best.std_error = max_se;
  best.k = k;
  best.statistic = f.name();
  best.conditioning = options.randomized_variant ? "max over (b_tau,b'_tau) in {(1,0),(0,1)} and b_tau' in {0,1}"
                                                 : "max over b_tau' in {0,1}";
  best.note = "tau=" + simplex_text(tau_s) + " tau'=" + simplex_text(tau2_s) + "; " + per_cell +
              "; conditional mean, equal to the smallest dominating constant only if the conditional quantity is "
              "almost surely constant";
  return best;
}

StabilizationEstimate estimate_gamma(const ModelParams& params, int k, int replicas, std::uint64_t seed,
                                     const EstimatorOptions& options) {
  require_replicas(replicas);
  params.validate();
  const auto [a, b] = options.random_pair ? random_face_pair(params.n, params.d, seed)
                                          : canonical_face_pair(params.n, params.d);
  const SimplexIndexer idx(params.n, params.d);
  const Rank ra = idx.rank_of(a);
  const Rank rb = idx.rank_of(b);
  std::vector<double> values(static_cast<std::size_t>(replicas));
  parallel_for(values.size(), options.workers, [&](std::size_t r) {
    const WeightedComplex x = PairedSample(params, replica_seed(seed, r)).primary();
    const FaceAdjacency adj(x);
    values[r] = connected_within(adj, ra, rb, k) ? 1.0 : 0.0;
  });
  auto e = make_estimate("gamma", params, seed, values);
  e.k = k;
  e.conditioning = "none";
  e.note = "sigma=" + simplex_text(a) + " sigma'=" + simplex_text(b);
  return e;
}

StabilizationEstimate estimate_rho_probe(const Statistic& f, const ModelParams& params, int k,
                                         std::span<const Rank> F, std::span<const Rank> F_prime, int replicas,
                                         std::uint64_t seed, const EstimatorOptions& options) {
  require_replicas(replicas);
  params.validate();
  const auto [tau_s, tau2_s] = options.random_pair ? random_top_pair(params.n, params.d, seed)
                                                   : canonical_top_pair(params.n, params.d);
  const SimplexIndexer idx(params.n, params.d);
  const Rank tau = idx.rank_of(tau_s);
  const Rank tau2 = idx.rank_of(tau2_s);
  for (auto set : {F, F_prime}) {
    for (Rank r : set) {
      if (r == tau || r == tau2) throw std::invalid_argument("estimate_rho_probe: F and F' must avoid tau and tau'");
      if (r >= idx.num_top()) throw std::invalid_argument("estimate_rho_probe: invalid rank in F");
    }
  }
  std::vector<double> a(static_cast<std::size_t>(replicas));
  std::vector<double> b(static_cast<std::size_t>(replicas));
  parallel_for(a.size(), options.workers, [&](std::size_t r) {
    const PairedSample s(params, replica_seed(seed, r));
    const WeightedComplex x = s.primary();
    const WeightedComplex xf = s.resample(F);
    const WeightedComplex xf2 = s.resample(F_prime);
    const double w1 = s.weight(tau);
    const double w2 = s.weight(tau2);
    a[r] = local_add_one_cost(f, x, tau, k, w1) * local_add_one_cost(f, xf, tau, k, w1);
    b[r] = local_add_one_cost(f, x, tau2, k, w2) * local_add_one_cost(f, xf2, tau2, k, w2);
  });
  const auto ma = sample_moments(a);
  const auto mb = sample_moments(b);
  std::vector<double> prod(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) prod[i] = (a[i] - ma.mean) * (b[i] - mb.mean);
  const double m = static_cast<double>(replicas);
  auto e = make_estimate("rho_probe", params, seed, prod);
  e.point_estimate *= m / (m - 1.0);
  e.k = k;
  e.statistic = f.name();
  e.conditioning = "fixed F (" + std::to_string(F.size()) + " simplices), F' (" + std::to_string(F_prime.size()) +
                   " simplices)";
  e.note = "covariance probe for one (F, F'); a lower bound on the supremum, not an upper bound";
  return e;
}

std::pair<StabilizationEstimate, StabilizationEstimate> estimate_variance_and_J(const Statistic& f,
                                                                                const ModelParams& params,
                                                                                int replicas, std::uint64_t seed,
                                                                                const EstimatorOptions& options) {
  require_replicas(replicas);
  params.validate();
  std::vector<double> values(static_cast<std::size_t>(replicas));
  parallel_for(values.size(), options.workers, [&](std::size_t r) {
    values[r] = f.evaluate_sample(PairedSample(params, replica_seed(seed, r)));
  });
  const auto m = sample_moments(values);
  StabilizationEstimate var;
  var.quantity = "variance";
  var.point_estimate = m.variance;
  var.std_error = m.variance_std_error();
  var.sample_sd = m.sd();
  var.replicas = replicas;
  var.params = params;
  var.seed = seed;
  var.statistic = f.name();
  var.conditioning = "none";

  StabilizationEstimate J;
  J.quantity = "J";
  J.params = params;
  J.seed = seed;
  J.statistic = f.name();
  J.conditioning = "none";
  if (const auto h = f.lipschitz_constant(params.d)) {
    J.point_estimate = std::max(1.0, std::pow(*h, 6));
    J.replicas = 0;
    J.note = "closed form max(1, H^6)";
  } else {
    std::vector<double> h6(static_cast<std::size_t>(replicas));
    for (std::size_t r = 0; r < h6.size(); ++r) {
      const PairedSample s(params, replica_seed(seed ^ 0x4A5F4A5F4A5F4A5Full, r));
      const double h = f.lipschitz(s.weight(0, Copy::primary), s.weight(0, Copy::independent), params.d);
      h6[r] = std::pow(h, 6);
    }
    const auto mh = sample_moments(h6);
    J.point_estimate = std::max(1.0, mh.mean);
    J.std_error = mh.mean >= 1.0 ? mh.std_error() : 0.0;
    J.sample_sd = mh.sd();
    J.replicas = replicas;
    J.note = "Monte Carlo over weight pairs";
  }
  return {var, J};
}

StabilizationEstimate estimate_addone_mean(const Statistic& f, const ModelParams& params, int replicas,
                                           std::uint64_t seed, const EstimatorOptions& options) {
  require_replicas(replicas);
  params.validate();
  const auto tau_s = options.random_pair ? random_top_pair(params.n, params.d, seed).first
                                         : canonical_top_pair(params.n, params.d).first;
  const SimplexIndexer idx(params.n, params.d);
  const Rank tau = idx.rank_of(tau_s);
  std::vector<double> values(static_cast<std::size_t>(replicas));
  parallel_for(values.size(), options.workers, [&](std::size_t r) {
    const PairedSample s(params, replica_seed(seed, r));
    values[r] = add_one_cost(f, s.primary(), tau, s.weight(tau));
  });
  auto e = make_estimate("addone_mean", params, seed, values);
  e.statistic = f.name();
  e.conditioning = "none";
  e.note = "tau=" + simplex_text(tau_s);
  return e;
}

nlohmann::json LipschitzAudit::to_json() const {
  return {{"statistic", statistic}, {"declared", declared},         {"checks", checks},
          {"violations", violations}, {"worst_ratio", worst_ratio}, {"worst_unbounded", worst_unbounded}};
}

LipschitzAudit audit_lipschitz(const Statistic& f, const ModelParams& params, int replicas, std::uint64_t seed) {
  params.validate();
  LipschitzAudit audit;
  audit.statistic = f.name();
  const double probe = f.lipschitz(1.0, 1.0, params.d);
  audit.declared = std::isfinite(probe);
  if (!audit.declared) return audit;
  constexpr double kTol = 1e-12;
  for (int r = 0; r < replicas; ++r) {
    const std::uint64_t rs = replica_seed(seed, static_cast<std::uint64_t>(r));
    const PairedSample s(params, rs);
    const Rank tau = static_cast<Rank>(mix64(rs) % s.indexer().num_top());
    const auto q = s.quadruple(tau);
    if (!q.b && !q.b_copy) continue;
    if (f.requires_complete() && !(q.b && q.b_copy)) continue;
    const Rank F[] = {tau};
    const double diff = std::abs(f.evaluate(s.primary()) - f.evaluate(s.resample(F)));
    const double h = f.lipschitz(q.w, q.w_copy, params.d);
    ++audit.checks;
    if (diff > h * (1 + kTol) + kTol) ++audit.violations;
    if (h > 0) {
      audit.worst_ratio = std::max(audit.worst_ratio, diff / h);
    } else {
      audit.worst_unbounded = std::max(audit.worst_unbounded, diff);
    }
  }
  return audit;
}

}  // namespace rwc
