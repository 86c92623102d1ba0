#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace rwc {

/// Pairwise (tree) summation; the result depends only on the input order.
inline double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

struct SampleMoments {
  std::size_t count = 0;
  double mean = 0.0;
  /// Unbiased sample variance.
  double variance = 0.0;
  /// Central fourth moment (biased).
  double m4 = 0.0;
  /// Mean absolute third central moment (biased).
  double abs_m3 = 0.0;

  double sd() const { return std::sqrt(variance); }
  double std_error() const { return count == 0 ? 0.0 : std::sqrt(variance / static_cast<double>(count)); }
  /// Standard error of the sample variance from the fourth moment.
  double variance_std_error() const {
    if (count < 4) return 0.0;
    const double m = static_cast<double>(count);
    const double v = (m4 - variance * variance * (m - 3.0) / (m - 1.0)) / m;
    return std::sqrt(v > 0.0 ? v : 0.0);
  }
};

SampleMoments sample_moments(std::span<const double> xs);

}  // namespace rwc
