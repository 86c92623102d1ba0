#pragma once

#include <string>

#include "rwc/exact_sum.hpp"

namespace rwc {

/// Inputs shared by the normal-approximation bounds. All values are up to the
/// universal multiplier C.
struct BoundInputs {
  double n = 0;
  int d = 1;
  double lambda = 0;
  int k = 1;
  double sigma_sq = 1;
  double J = 1;
  double delta = 0;
  double rho = 0;
  double gamma = 0;
  double C = 1.0;

  /// Throws std::invalid_argument naming the first bad field.
  void validate() const;
};

/// C (n^d/s2)^{1/2} [(J^{1/2} delta^{1/2} + rho + J^{2/3} gamma^{1/2}) lambda^2
///   + J^{2/3}(lambda^2/n + lambda/n^d + lambda^3/n)]^{1/4} + tail,
/// tail = (n^d/s2)^{3/4} J^{1/4} lambda^{1/2} / n^{d/4}.
double bound_main(const BoundInputs& in);
/// bound_main with gamma^{1/3} in place of gamma^{1/2}.
double bound_add_one(const BoundInputs& in);
/// C J^{1/6} (1 v lambda)^{1/2} (n^d/s2)^{1/2} [delta^{1/8}
///   + (k^5 (1 v d lambda)^{2k} / n)^{1/12}] + tail. Requires k <= n.
double bound_corollary(const BoundInputs& in);
/// The shared second summand of the three bounds above.
double bound_tail(const BoundInputs& in);

/// min(k^{d+1}(1 v d lambda)^k / n^d, k^2 (1 v d lambda)^k / n), the second
/// form only when k <= n.
double gamma_bound(double n, int d, double lambda, int k);
/// C J^{2/3} (k^5 (1 v d lambda)^{2k} / n)^{1/3}. Requires k <= n.
double rho_bound(double J, int k, double n, int d, double lambda, double C = 1.0);

/// 2 C(n, d+1) p (1-p) addone_mean^2.
double variance_lower_unweighted(int n, int d, double p, double addone_mean);
/// n^d lambda J^{1/3}.
double variance_upper_efron_stein(double n, int d, double lambda, double J);
/// P(A) = (1 - lambda/n)^{(n-d-1)(d+1)}: every face of tau is maximal.
double all_faces_maximal_probability(int n, int d, double lambda);
/// 2 lambda / (d+1)! * exp(-2(d+1) lambda).
double cocycle_variance_limit(int d, double lambda);

/// (1 + d/2) C(n, d).
double nn_variance_asymptote(int n, int d);
/// 1 / (2n).
double nn_cov_asymptote(double n);
/// Exact cov(NN(sigma), NN(sigma')) for dim(sigma u sigma') = d under
/// Exp(mean n) weights: with m = n - d - 1,
/// (n/m)^2 (1 - 2/(1+m) + 1/(1+2m)) - (n/(n-d))^2.
Rational nn_cov_exact(int n, int d);
/// Per-face moments: E NN(sigma) = n/(n-d), var NN(sigma) = (n/(n-d))^2.
double nn_face_mean(int n, int d);
double nn_face_variance(int n, int d);

/// alpha_n = 64 (C2 + d) ln n.
double truncation_level(double n, int d, double C2);

}  // namespace rwc
