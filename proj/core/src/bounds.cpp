#include "rwc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rwc/simplex.hpp"

namespace rwc {

namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("bound inputs: ") + field + " " + what);
}

double bracket_core(const BoundInputs& in, double gamma_term) {
  const double nd = std::pow(in.n, in.d);
  const double l = in.lambda;
  const double J23 = std::pow(in.J, 2.0 / 3.0);
  const double local = (std::sqrt(in.J) * std::sqrt(in.delta) + in.rho + J23 * gamma_term) * l * l;
  const double global = J23 * (l * l / in.n + l / nd + l * l * l / in.n);
  return in.C * std::sqrt(nd / in.sigma_sq) * std::pow(local + global, 0.25);
}

}  // namespace

void BoundInputs::validate() const {
  require(n > 0 && std::isfinite(n), "n", "must be > 0");
  require(d >= 1, "d", "must be >= 1");
  require(lambda >= 0 && std::isfinite(lambda), "lambda", "must be >= 0");
  require(k >= 1, "k", "must be >= 1");
  require(sigma_sq > 0 && std::isfinite(sigma_sq), "sigma_sq", "must be > 0");
  require(J >= 0 && std::isfinite(J), "J", "must be >= 0");
  require(delta >= 0 && std::isfinite(delta), "delta", "must be >= 0");
  require(rho >= 0 && std::isfinite(rho), "rho", "must be >= 0");
  require(gamma >= 0 && std::isfinite(gamma), "gamma", "must be >= 0");
  require(C >= 0 && std::isfinite(C), "C", "must be >= 0");
}

double bound_tail(const BoundInputs& in) {
  const double nd = std::pow(in.n, in.d);
  return std::pow(nd / in.sigma_sq, 0.75) * std::pow(in.J, 0.25) * std::sqrt(in.lambda) / std::pow(in.n, in.d / 4.0);
}

double bound_main(const BoundInputs& in) {
  in.validate();
  return bracket_core(in, std::sqrt(in.gamma)) + bound_tail(in);
}

double bound_add_one(const BoundInputs& in) {
  in.validate();
  return bracket_core(in, std::cbrt(in.gamma)) + bound_tail(in);
}

double bound_corollary(const BoundInputs& in) {
  in.validate();
  if (in.k > in.n) throw std::invalid_argument("bound_corollary: requires k <= n");
  const double nd = std::pow(in.n, in.d);
  const double growth = std::max(1.0, in.d * in.lambda);
  const double inner = std::pow(in.k, 5) * std::pow(growth, 2.0 * in.k) / in.n;
  const double first = in.C * std::pow(in.J, 1.0 / 6.0) * std::sqrt(std::max(1.0, in.lambda)) *
                       std::sqrt(nd / in.sigma_sq) * (std::pow(in.delta, 0.125) + std::pow(inner, 1.0 / 12.0));
  return first + bound_tail(in);
}

double gamma_bound(double n, int d, double lambda, int k) {
  if (k < 1) throw std::invalid_argument("gamma_bound: k must be >= 1");
  const double growth = std::pow(std::max(1.0, d * lambda), k);
  const double general = std::pow(k, d + 1) * growth / std::pow(n, d);
  if (k > n) return general;
  return std::min(general, static_cast<double>(k) * k * growth / n);
}

double rho_bound(double J, int k, double n, int d, double lambda, double C) {
  if (k > n) throw std::invalid_argument("rho_bound: requires k <= n");
  const double inner = std::pow(k, 5) * std::pow(std::max(1.0, d * lambda), 2.0 * k) / n;
  return C * std::pow(J, 2.0 / 3.0) * std::cbrt(inner);
}

double variance_lower_unweighted(int n, int d, double p, double addone_mean) {
  const double tops = static_cast<double>(binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(d) + 1));
  return 2.0 * tops * p * (1.0 - p) * addone_mean * addone_mean;
}

double variance_upper_efron_stein(double n, int d, double lambda, double J) {
  return std::pow(n, d) * lambda * std::cbrt(J);
}

double all_faces_maximal_probability(int n, int d, double lambda) {
  return std::pow(1.0 - lambda / n, static_cast<double>(n - d - 1) * (d + 1));
}

double cocycle_variance_limit(int d, double lambda) {
  return 2.0 * lambda / std::tgamma(d + 2.0) * std::exp(-2.0 * (d + 1) * lambda);
}

double nn_variance_asymptote(int n, int d) {
  if (n <= d) throw std::invalid_argument("nn_variance_asymptote: need n > d");
  return (1.0 + d / 2.0) * static_cast<double>(binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(d)));
}

double nn_cov_asymptote(double n) { return 1.0 / (2.0 * n); }

Rational nn_cov_exact(int n, int d) {
  if (n < d + 2) throw std::invalid_argument("nn_cov_exact: need n >= d + 2");
  const Rational nn(n);
  const Rational m(n - d - 1);
  const Rational one(1);
  const Rational ratio = nn / m;
  const Rational mean = nn / Rational(n - d);
  return ratio * ratio * (one - Rational(2) / (one + m) + one / (one + 2 * m)) - mean * mean;
}

double nn_face_mean(int n, int d) { return static_cast<double>(n) / (n - d); }

double nn_face_variance(int n, int d) {
  const double m = nn_face_mean(n, d);
  return m * m;
}

double truncation_level(double n, int d, double C2) {
  if (!(C2 > 0)) throw std::invalid_argument("truncation_level: C2 must be > 0");
  return 64.0 * (C2 + d) * std::log(n);
}

}  // namespace rwc
