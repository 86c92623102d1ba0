#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rwc/rwc.hpp"

namespace rwc::cli {

namespace {

using nlohmann::json;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Flags {
  std::string config;
  int n = 0;
  int d = 1;
  double p = 0;
  double lambda = 0;
  std::string weights;
  std::string stat;
  std::int64_t replicas = 0;
  std::uint64_t seed = 0;
  int workers = 0;
  int k = 0;
  std::string out;
  std::string input;
  bool random_pair = false;
  bool randomized = false;
  bool pooled = false;
  double C = 1.0;
  std::string formula;
  double J = 1.0;
  std::string sigma_sq;
  double delta = 0;
  double rho = 0;
  double gamma = 0;
  double addone_mean = 0;
  double C2 = 0;
};

/// Options registered on one subcommand, keyed by config field.
struct Registered {
  std::vector<std::pair<std::string, CLI::Option*>> options;
  CLI::Option* find(const std::string& key) const {
    for (const auto& [k, o] : options) {
      if (k == key) return o;
    }
    return nullptr;
  }
  bool given(const std::string& key) const {
    const auto* o = find(key);
    return o != nullptr && o->count() > 0;
  }
};

void add_model(CLI::App* app, Flags& f, Registered& reg, bool with_stat, bool with_replicas) {
  reg.options.emplace_back("config", app->add_option("--config", f.config, "JSON experiment config; flags override it"));
  reg.options.emplace_back("n", app->add_option("--n", f.n, "Number of vertices"));
  reg.options.emplace_back("d", app->add_option("--d", f.d, "Top dimension d >= 1"));
  reg.options.emplace_back("p", app->add_option("--p", f.p, "Presence probability in (0, 1]"));
  reg.options.emplace_back("lambda", app->add_option("--lambda", f.lambda, "lambda = n p (alternative to --p)"));
  reg.options.emplace_back(
      "dist", app->add_option("--weights", f.weights,
                              "Weight law: exp:mean=<x>, uniform:b=<x>, const:c=<x>, texp:mean=<x>,alpha=<y>"));
  reg.options.emplace_back("seed", app->add_option("--seed", f.seed, "64-bit master seed (default 0)"));
  if (with_stat) {
    reg.options.emplace_back(
        "statistic", app->add_option("--stat", f.stat,
                                     "Statistic: nn, nn-alpha:<a>, isolated, cocycle:<M>, betti:<M>, local:<g>:<M>"));
  }
  if (with_replicas) {
    reg.options.emplace_back("replicas", app->add_option("--replicas", f.replicas, "Number of replicas (default 1000)"));
    reg.options.emplace_back("workers",
                             app->add_option("--workers", f.workers, "Worker threads (default $RWC_WORKERS or all)"));
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("malformed config JSON: ") + e.what());
  }
}

/// Config file overlaid with the given flags, then validated.
ExperimentConfig resolve(const Flags& f, const Registered& reg, Mode mode, const json& defaults) {
  json j = f.config.empty() ? json::object() : read_json_file(f.config);
  if (!j.is_object()) throw UsageError("config file must hold a JSON object");
  if (reg.given("p") && !reg.given("lambda")) j.erase("lambda");
  if (reg.given("lambda") && !reg.given("p")) j.erase("p");
  if (reg.given("statistic")) j.erase("stat");
  if (reg.given("n")) j["n"] = f.n;
  if (reg.given("d")) j["d"] = f.d;
  if (reg.given("p")) j["p"] = f.p;
  if (reg.given("lambda")) j["lambda"] = f.lambda;
  if (reg.given("dist")) j["dist"] = f.weights;
  if (reg.given("seed")) j["seed"] = f.seed;
  if (reg.given("statistic")) j["statistic"] = f.stat;
  if (reg.given("replicas")) j["replicas"] = f.replicas;
  if (reg.given("workers")) j["workers"] = f.workers;
  if (reg.given("out")) j["out"] = f.out;
  if (reg.given("k")) j["k"] = f.k;
  j["mode"] = to_string(mode);
  for (const auto& [key, value] : defaults.items()) {
    if (!j.contains(key) && !(key == "statistic" && j.contains("stat"))) j[key] = value;
  }
  return parse_config(j);
}

json echo(const ExperimentConfig& cfg) {
  auto j = cfg.to_json();
  j.erase("workers");
  return j;
}

void emit(const json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << j.dump(2) << '\n';
    return;
  }
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  write_json(p, j);
}

double parse_sigma_sq(const std::string& text, double n, int d) {
  if (text.empty()) throw UsageError("--sigma-sq is required for this formula");
  if (text == "auto:n^d") return std::pow(n, d);
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("--sigma-sq: expected a number or auto:n^d, got '" + text + "'");
  }
}

int run_bound(const Flags& f, const Registered& reg, std::ostream& out) {
  const std::string& formula = f.formula;
  auto need = [&](const char* key) {
    if (!reg.given(key)) throw UsageError("formula " + formula + " requires --" + std::string(key));
  };
  double lambda = f.lambda;
  if (reg.given("p")) {
    need("n");
    const double implied = f.n * f.p;
    if (reg.given("lambda") && std::abs(implied - f.lambda) > 1e-12 * std::max(1.0, f.lambda)) {
      throw UsageError("--lambda is inconsistent with --n * --p");
    }
    lambda = implied;
  }
  json inputs;
  double value = 0.0;
  auto core_inputs = [&](bool with_sigma) {
    need("n");
    need("d");
    BoundInputs in;
    in.n = f.n;
    in.d = f.d;
    in.lambda = lambda;
    in.k = f.k;
    in.J = f.J;
    in.delta = f.delta;
    in.rho = f.rho;
    in.gamma = f.gamma;
    in.C = f.C;
    if (with_sigma) in.sigma_sq = parse_sigma_sq(f.sigma_sq, in.n, in.d);
    in.validate();
    inputs = {{"n", in.n},        {"d", in.d},   {"lambda", in.lambda}, {"k", in.k},        {"J", in.J},
              {"sigma_sq", in.sigma_sq}, {"delta", in.delta}, {"rho", in.rho}, {"gamma", in.gamma}, {"C", in.C}};
    return in;
  };
  if (formula == "main") {
    value = bound_main(core_inputs(true));
  } else if (formula == "add-one") {
    value = bound_add_one(core_inputs(true));
  } else if (formula == "cor24") {
    value = bound_corollary(core_inputs(true));
  } else if (formula == "gamma") {
    need("n");
    need("d");
    need("k");
    inputs = {{"n", f.n}, {"d", f.d}, {"lambda", lambda}, {"k", f.k}};
    value = gamma_bound(f.n, f.d, lambda, f.k);
  } else if (formula == "rho") {
    need("n");
    need("d");
    need("k");
    inputs = {{"n", f.n}, {"d", f.d}, {"lambda", lambda}, {"k", f.k}, {"J", f.J}, {"C", f.C}};
    value = rho_bound(f.J, f.k, f.n, f.d, lambda, f.C);
  } else if (formula == "var-lower") {
    need("n");
    need("d");
    need("addone_mean");
    const double p = lambda / f.n;
    inputs = {{"n", f.n}, {"d", f.d}, {"p", p}, {"addone_mean", f.addone_mean}};
    value = variance_lower_unweighted(f.n, f.d, p, f.addone_mean);
  } else if (formula == "var-upper") {
    need("n");
    need("d");
    inputs = {{"n", f.n}, {"d", f.d}, {"lambda", lambda}, {"J", f.J}};
    value = variance_upper_efron_stein(f.n, f.d, lambda, f.J);
  } else if (formula == "nn-var") {
    need("n");
    need("d");
    inputs = {{"n", f.n}, {"d", f.d}};
    value = nn_variance_asymptote(f.n, f.d);
  } else if (formula == "nn-cov") {
    need("n");
    need("d");
    inputs = {{"n", f.n}, {"d", f.d}};
    const Rational exact = nn_cov_exact(f.n, f.d);
    value = exact.convert_to<double>();
    inputs["exact_rational"] = exact.str();
    inputs["asymptote"] = nn_cov_asymptote(f.n);
  } else if (formula == "truncation") {
    need("n");
    need("d");
    need("C2");
    inputs = {{"n", f.n}, {"d", f.d}, {"C2", f.C2}};
    value = truncation_level(f.n, f.d, f.C2);
  } else {
    throw UsageError("unknown formula '" + formula + "'");
  }
  emit({{"formula", formula}, {"inputs", inputs}, {"value", value}, {"note", "up to universal constant C"}}, f.out,
       out);
  return 0;
}

void print_error(std::ostream& err, const char* kind, const std::string& message) {
  err << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"generate",      "stat",  "clt",   "variance",
                                              "stabilization", "gamma", "bound", "cov-nn"};
  return names;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"rwc: randomly weighted simplicial complexes toolkit", "rwc"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Flags f;
  std::map<std::string, Registered> reg;

  auto* generate = app.add_subcommand("generate", "Sample one complex and write it in the complex text format");
  add_model(generate, f, reg["generate"], false, false);
  reg["generate"].options.emplace_back("out", generate->add_option("--out", f.out, "Output file (default stdout)"));

  auto* stat = app.add_subcommand("stat", "Evaluate a statistic on a sampled complex or a complex file");
  add_model(stat, f, reg["stat"], true, false);
  reg["stat"].options.emplace_back("input", stat->add_option("--input", f.input, "Complex file to evaluate instead of sampling"));
  reg["stat"].options.emplace_back("out", stat->add_option("--out", f.out, "Output JSON file (default stdout)"));

  auto* clt = app.add_subcommand("clt", "Replicate a statistic, standardize and measure d_K against N(0,1)");
  add_model(clt, f, reg["clt"], true, true);
  reg["clt"].options.emplace_back("out", clt->add_option("--out", f.out, "Directory for replicas.csv and summary.json"));

  auto* variance = app.add_subcommand("variance", "Compare var(NN) with (1 + d/2) C(n, d)");
  add_model(variance, f, reg["variance"], true, true);
  reg["variance"].options.emplace_back(
      "out", variance->add_option("--out", f.out, "Directory for replicas.csv and summary.json"));

  auto* stab = app.add_subcommand("stabilization", "Estimate delta-tilde, gamma, a rho probe, variance, J and bounds");
  add_model(stab, f, reg["stabilization"], true, true);
  reg["stabilization"].options.emplace_back("k", stab->add_option("--k", f.k, "Neighbourhood radius k >= 0")->required());
  reg["stabilization"].options.emplace_back("random_pair",
                                            stab->add_flag("--random-pair", f.random_pair, "Use a seed-derived disjoint pair"));
  reg["stabilization"].options.emplace_back(
      "randomized", stab->add_flag("--randomized", f.randomized, "Estimate the randomized-derivative variant delta"));
  reg["stabilization"].options.emplace_back("C", stab->add_option("--C", f.C, "Universal constant multiplier (default 1)"));
  reg["stabilization"].options.emplace_back("out", stab->add_option("--out", f.out, "Output JSON file (default stdout)"));

  auto* gamma = app.add_subcommand("gamma", "Connection probability gamma_{k,n}: exact, Monte Carlo and bound");
  add_model(gamma, f, reg["gamma"], false, true);
  reg["gamma"].options.emplace_back("k", gamma->add_option("--k", f.k, "Path length bound k >= 0")->required());
  reg["gamma"].options.emplace_back("random_pair",
                                    gamma->add_flag("--random-pair", f.random_pair, "Use a seed-derived disjoint pair"));
  reg["gamma"].options.emplace_back("out", gamma->add_option("--out", f.out, "Output JSON file (default stdout)"));

  auto* bound = app.add_subcommand("bound", "Evaluate a closed-form bound");
  {
    auto& r = reg["bound"];
    r.options.emplace_back(
        "formula", bound
                       ->add_option("--formula", f.formula,
                                    "main, add-one, cor24, gamma, rho, var-lower, var-upper, nn-var, nn-cov, truncation")
                       ->required());
    r.options.emplace_back("n", bound->add_option("--n", f.n, "Number of vertices"));
    r.options.emplace_back("d", bound->add_option("--d", f.d, "Top dimension"));
    r.options.emplace_back("lambda", bound->add_option("--lambda", f.lambda, "lambda = n p"));
    r.options.emplace_back("p", bound->add_option("--p", f.p, "Presence probability (alternative to --lambda)"));
    r.options.emplace_back("k", bound->add_option("--k", f.k, "Neighbourhood radius"));
    r.options.emplace_back("J", bound->add_option("--J", f.J, "J = 1 v E[H^6] (default 1)"));
    r.options.emplace_back("sigma_sq", bound->add_option("--sigma-sq", f.sigma_sq, "Variance, a number or auto:n^d"));
    r.options.emplace_back("delta", bound->add_option("--delta", f.delta, "delta or delta-tilde (default 0)"));
    r.options.emplace_back("rho", bound->add_option("--rho", f.rho, "rho or rho-tilde (default 0)"));
    r.options.emplace_back("gamma", bound->add_option("--gamma", f.gamma, "gamma_{k,n} (default 0)"));
    r.options.emplace_back("C", bound->add_option("--C", f.C, "Universal constant multiplier (default 1)"));
    r.options.emplace_back("addone_mean", bound->add_option("--addone-mean", f.addone_mean, "E[D_tau f] for var-lower"));
    r.options.emplace_back("C2", bound->add_option("--C2", f.C2, "C2 for the truncation level"));
    r.options.emplace_back("out", bound->add_option("--out", f.out, "Output JSON file (default stdout)"));
  }

  auto* cov = app.add_subcommand("cov-nn", "Estimate cov(NN(sigma), NN(sigma')) for adjacent faces");
  {
    auto& r = reg["cov-nn"];
    r.options.emplace_back("n", cov->add_option("--n", f.n, "Number of vertices")->required());
    r.options.emplace_back("d", cov->add_option("--d", f.d, "Top dimension")->required());
    r.options.emplace_back("replicas", cov->add_option("--replicas", f.replicas, "Number of replicas (default 1000)"));
    r.options.emplace_back("seed", cov->add_option("--seed", f.seed, "64-bit master seed (default 0)"));
    r.options.emplace_back("workers", cov->add_option("--workers", f.workers, "Worker threads (default $RWC_WORKERS or all)"));
    r.options.emplace_back("pooled", cov->add_flag("--pooled", f.pooled, "Average over every adjacent pair per replica"));
    r.options.emplace_back("out", cov->add_option("--out", f.out, "Output JSON file (default stdout)"));
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    print_error(err, "usage", e.what());
    return 1;
  }

  try {
    const auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    const Registered& r = reg[name];
    const json sampling_defaults{{"seed", 0}, {"replicas", 1000}};

    if (name == "generate") {
      auto cfg = resolve(f, r, Mode::clt, {{"seed", 0}, {"replicas", 2}, {"statistic", "isolated"}});
      const auto x = sample_complex(cfg.params, cfg.seed);
      if (f.out.empty()) {
        write_complex(out, x);
      } else {
        std::ofstream file(f.out);
        if (!file) throw std::runtime_error("cannot write " + f.out);
        write_complex(file, x);
      }
      return 0;
    }
    if (name == "stat") {
      if (!f.input.empty()) {
        std::ifstream in(f.input);
        if (!in) throw std::runtime_error("cannot read " + f.input);
        const auto x = read_complex(in);
        if (f.stat.empty()) throw UsageError("--stat is required");
        const auto s = parse_statistic(f.stat, x.d());
        const auto value = s->evaluate_exact(x);
        emit({{"statistic", s->name()},
              {"input", f.input},
              {"n", x.n()},
              {"d", x.d()},
              {"value", value.to_double()},
              {"exact", value.to_rational().str()}},
             f.out, out);
        return 0;
      }
      auto cfg = resolve(f, r, Mode::clt, {{"seed", 0}, {"replicas", 2}});
      const auto s = parse_statistic(cfg.statistic, cfg.params.d);
      const auto value = s->evaluate_exact(sample_complex(cfg.params, cfg.seed));
      auto cj = echo(cfg);
      cj.erase("replicas");
      cj.erase("mode");
      emit({{"statistic", s->name()}, {"value", value.to_double()}, {"exact", value.to_rational().str()}, {"config", cj}},
           f.out, out);
      return 0;
    }
    if (name == "clt" || name == "variance") {
      json defaults = sampling_defaults;
      defaults["statistic"] = "nn";
      auto cfg = resolve(f, r, name == "clt" ? Mode::clt : Mode::variance, defaults);
      const auto summary = name == "clt" ? run_clt(cfg) : run_variance_check(cfg);
      auto j = summary.to_json();
      j["config"] = echo(cfg);
      j["version"] = kVersion;
      out << j.dump(2) << '\n';
      return 0;
    }
    if (name == "stabilization") {
      auto cfg = resolve(f, r, Mode::stabilization, sampling_defaults);
      EstimatorOptions opts;
      opts.random_pair = f.random_pair;
      opts.randomized_variant = f.randomized;
      cfg.out.clear();
      const auto report = run_stabilization(cfg, *cfg.k, opts, f.C);
      auto j = report.to_json();
      j["config"] = echo(cfg);
      j["options"] = {{"random_pair", f.random_pair}, {"randomized", f.randomized}};
      j["version"] = kVersion;
      emit(j, f.out, out);
      return 0;
    }
    if (name == "gamma") {
      auto cfg = resolve(f, r, Mode::gamma, {{"seed", 0}, {"replicas", 1000}, {"statistic", "isolated"}});
      EstimatorOptions opts;
      opts.workers = cfg.workers;
      opts.random_pair = f.random_pair;
      const int k = *cfg.k;
      const auto est = estimate_gamma(cfg.params, k, static_cast<int>(cfg.replicas), cfg.seed, opts);
      json j{{"k", k}, {"estimate", est.to_json()}};
      const bool enumerable = binomial(cfg.params.n, cfg.params.d + 1) <= kGammaEnumerationLimit;
      j["exact"] = enumerable && !f.random_pair ? json(gamma_exact(cfg.params, k)) : json(nullptr);
      j["bound"] = k >= 1 ? json(gamma_bound(cfg.params.n, cfg.params.d, cfg.params.lambda(), k)) : json(nullptr);
      auto cj = echo(cfg);
      cj.erase("statistic");
      cj.erase("dist");
      j["config"] = cj;
      j["version"] = kVersion;
      emit(j, f.out, out);
      return 0;
    }
    if (name == "bound") return run_bound(f, r, out);
    if (name == "cov-nn") {
      const std::int64_t replicas = r.given("replicas") ? f.replicas : 1000;
      if (replicas < 2) throw UsageError("--replicas must be >= 2");
      const int workers = r.given("workers") && f.workers > 0 ? f.workers : default_workers();
      const auto est = f.pooled ? nn_pair_covariance_pooled(f.n, f.d, replicas, f.seed, workers)
                                : nn_pair_covariance(f.n, f.d, replicas, f.seed, workers);
      const Rational exact = nn_cov_exact(f.n, f.d);
      emit({{"n", f.n},
            {"d", f.d},
            {"seed", f.seed},
            {"pooled", f.pooled},
            {"estimate", est.to_json()},
            {"two_n_cov", 2.0 * f.n * est.covariance},
            {"two_n_cov_std_error", 2.0 * f.n * est.std_error},
            {"exact", exact.convert_to<double>()},
            {"exact_rational", exact.str()},
            {"asymptote", nn_cov_asymptote(f.n)},
            {"version", kVersion}},
           f.out, out);
      return 0;
    }
    throw UsageError("unknown subcommand " + name);
  } catch (const std::invalid_argument& e) {
    print_error(err, "usage", e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error(err, "runtime", e.what());
    return 2;
  }
}

}  // namespace rwc::cli
