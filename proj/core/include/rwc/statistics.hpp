#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rwc/complex.hpp"
#include "rwc/exact_sum.hpp"
#include "rwc/sampling.hpp"

namespace rwc {

/// Value of a local functional g: a double, or an exact rational.
using LocalValue = std::variant<double, Rational>;

/// g together with its locality radius M.
struct LocalFunctional {
  std::string name;
  std::function<LocalValue(const LocalComplex&)> g;
  int M = 1;
  /// Declared Lipschitz constant H of the induced statistic, if known.
  std::optional<double> H;
};

/// Built-in g: `isolated` (1 if no d-simplex), `cocycle` (dim Z / f_{d-1}
/// on 0 < f_{d-1} <= M) and `one`.
LocalFunctional builtin_local(std::string_view g_name, int M, int d);

/// A real functional of weighted d-complexes with a Lipschitz descriptor H.
class Statistic {
 public:
  virtual ~Statistic() = default;

  virtual std::string name() const = 0;
  virtual ExactSum evaluate_exact(const WeightedComplex& x) const = 0;
  double evaluate(const WeightedComplex& x) const { return evaluate_exact(x).to_double(); }
  /// f(X) for the primary complex of a sample. Overridden where a streaming
  /// pass avoids materializing X.
  virtual double evaluate_sample(const PairedSample& s) const { return evaluate(s.primary()); }

  /// H(w, w') for dimension d.
  virtual double lipschitz(double w, double w_prime, int d) const = 0;
  /// H when it does not depend on the weights.
  virtual std::optional<double> lipschitz_constant(int d) const = 0;
  /// True if f is only defined on complexes where every (d-1)-simplex has a
  /// present cofacet.
  virtual bool requires_complete() const { return false; }
};

/// Parses `nn`, `nn-alpha:<a>`, `isolated`, `cocycle:<M>`, `betti:<M>`,
/// `local:<g>:<M>`. `d` is needed for the Lipschitz descriptors.
std::unique_ptr<Statistic> parse_statistic(std::string_view text, int d);

// ---- Nearest face-weights (complete complexes) ----

/// min over cofacets of sigma of w_tau, drawing only the n-d relevant weights.
double nn_face(const PairedSample& s, const Simplex& sigma);
/// NN(sigma) for every (d-1)-simplex, indexed by rank; one pass over d-simplices.
std::vector<double> nn_faces(const PairedSample& s);
/// Sum of NN(sigma) by one streaming pass.
double nn_total(const PairedSample& s);
/// Sum over sigma of min weight over present cofacets. Throws if some
/// (d-1)-simplex has no present cofacet.
ExactSum nn_total_exact(const WeightedComplex& x);

// ---- Diluted NN ----

/// Per-face min(alpha, min over present cofacets of w), indexed by rank.
std::vector<double> nn_alpha_faces(const WeightedComplex& x, double alpha);
ExactSum f_alpha_exact(const WeightedComplex& x, double alpha);
double f_alpha(const WeightedComplex& x, double alpha);

// ---- Local statistics ----

ExactSum local_statistic_exact(const WeightedComplex& x, const LocalFunctional& lf);
double local_statistic(const WeightedComplex& x, const LocalFunctional& lf);

std::int64_t isolated_count(const WeightedComplex& x);
/// Streaming count for the primary complex of a sample.
std::int64_t isolated_count(const PairedSample& s);

std::int64_t cocycle_count_bounded(const WeightedComplex& x, int M);
std::int64_t betti_bounded(const WeightedComplex& x, int M);

// ---- Concrete statistics ----

class NearestNeighborStatistic final : public Statistic {
 public:
  std::string name() const override { return "nn"; }
  ExactSum evaluate_exact(const WeightedComplex& x) const override { return nn_total_exact(x); }
  double evaluate_sample(const PairedSample& s) const override { return nn_total(s); }
  double lipschitz(double w, double w_prime, int d) const override;
  std::optional<double> lipschitz_constant(int) const override { return std::nullopt; }
  bool requires_complete() const override { return true; }
};

class DilutedNearestNeighbor final : public Statistic {
 public:
  explicit DilutedNearestNeighbor(double alpha);
  double alpha() const { return alpha_; }
  std::string name() const override;
  ExactSum evaluate_exact(const WeightedComplex& x) const override { return f_alpha_exact(x, alpha_); }
  double lipschitz(double, double, int d) const override { return (d + 1) * alpha_; }
  std::optional<double> lipschitz_constant(int d) const override { return (d + 1) * alpha_; }

 private:
  double alpha_;
};

class IsolatedCount final : public Statistic {
 public:
  std::string name() const override { return "isolated"; }
  ExactSum evaluate_exact(const WeightedComplex& x) const override;
  double evaluate_sample(const PairedSample& s) const override;
  double lipschitz(double, double, int d) const override { return d + 1; }
  std::optional<double> lipschitz_constant(int d) const override { return d + 1; }
};

class CocycleCount final : public Statistic {
 public:
  explicit CocycleCount(int M);
  int M() const { return M_; }
  std::string name() const override { return "cocycle:" + std::to_string(M_); }
  ExactSum evaluate_exact(const WeightedComplex& x) const override;
  double lipschitz(double, double, int d) const override { return (d + 1.0) * M_; }
  std::optional<double> lipschitz_constant(int d) const override { return (d + 1.0) * M_; }

 private:
  int M_;
};

class BettiBounded final : public Statistic {
 public:
  explicit BettiBounded(int M);
  std::string name() const override { return "betti:" + std::to_string(M_); }
  ExactSum evaluate_exact(const WeightedComplex& x) const override;
  double lipschitz(double, double, int d) const override { return (d + 1.0) * M_; }
  std::optional<double> lipschitz_constant(int d) const override { return (d + 1.0) * M_; }

 private:
  int M_;
};

class LocalStatistic final : public Statistic {
 public:
  explicit LocalStatistic(LocalFunctional lf);
  const LocalFunctional& functional() const { return lf_; }
  std::string name() const override { return "local:" + lf_.name + ":" + std::to_string(lf_.M); }
  ExactSum evaluate_exact(const WeightedComplex& x) const override { return local_statistic_exact(x, lf_); }
  double lipschitz(double, double, int d) const override;
  std::optional<double> lipschitz_constant(int d) const override;

 private:
  LocalFunctional lf_;
};

}  // namespace rwc
