#include "rwc/moments.hpp"

#include <vector>

namespace rwc {

SampleMoments sample_moments(std::span<const double> xs) {
  SampleMoments m;
  m.count = xs.size();
  if (xs.empty()) return m;
  const double count = static_cast<double>(xs.size());
  m.mean = pairwise_sum(xs) / count;
  std::vector<double> sq(xs.size());
  std::vector<double> cube(xs.size());
  std::vector<double> quad(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double c = xs[i] - m.mean;
    sq[i] = c * c;
    cube[i] = std::fabs(c) * c * c;
    quad[i] = sq[i] * sq[i];
  }
  m.variance = xs.size() > 1 ? pairwise_sum(sq) / (count - 1.0) : 0.0;
  m.abs_m3 = pairwise_sum(cube) / count;
  m.m4 = pairwise_sum(quad) / count;
  return m;
}

}  // namespace rwc
