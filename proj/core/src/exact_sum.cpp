#include "rwc/exact_sum.hpp"

#include <cmath>
#include <stdexcept>

namespace rwc {

void ExactSum::add(double x) {
  if (!std::isfinite(x)) throw std::domain_error("ExactSum: non-finite term");
  if (x == 0.0) return;
  int e = 0;
  const double m = std::frexp(std::fabs(x), &e);
  auto mag = static_cast<std::uint64_t>(std::ldexp(m, 53));
  int pos = e - 53 + kOffset;
  if (pos < 0) {
    mag >>= -pos;  // subnormal input: the shifted-out bits are zero
    pos = 0;
  }
  const int idx = pos / kChunkBits;
  const unsigned __int128 wide = static_cast<unsigned __int128>(mag) << (pos % kChunkBits);
  const std::int64_t sign = x < 0 ? -1 : 1;
  for (int j = 0; j < 3; ++j) {
    const auto part = static_cast<std::int64_t>(static_cast<std::uint64_t>(wide >> (kChunkBits * j)) & 0xFFFFFFFFu);
    if (part != 0) chunks_[static_cast<std::size_t>(idx + j)] += sign * part;
  }
  if (++pending_ >= kNormalizeEvery) normalize();
}

void ExactSum::add(std::int64_t i) {
  if (i == 0) return;
  const std::uint64_t mag = i < 0 ? static_cast<std::uint64_t>(-(i + 1)) + 1 : static_cast<std::uint64_t>(i);
  const int idx = kOffset / kChunkBits;
  const unsigned __int128 wide = static_cast<unsigned __int128>(mag) << (kOffset % kChunkBits);
  const std::int64_t sign = i < 0 ? -1 : 1;
  for (int j = 0; j < 3; ++j) {
    const auto part = static_cast<std::int64_t>(static_cast<std::uint64_t>(wide >> (kChunkBits * j)) & 0xFFFFFFFFu);
    if (part != 0) chunks_[static_cast<std::size_t>(idx + j)] += sign * part;
  }
  if (++pending_ >= kNormalizeEvery) normalize();
}

void ExactSum::add(const Rational& q) {
  if (q == 0) return;
  rational_ += q;
  has_rational_ = true;
}

void ExactSum::add(const ExactSum& other) {
  normalize();
  other.normalize();
  for (std::size_t i = 0; i < chunks_.size(); ++i) chunks_[i] += other.chunks_[i];
  pending_ = 2;
  if (other.has_rational_) add(other.rational_);
}

void ExactSum::subtract(const ExactSum& other) {
  normalize();
  other.normalize();
  for (std::size_t i = 0; i < chunks_.size(); ++i) chunks_[i] -= other.chunks_[i];
  pending_ = 2;
  if (other.has_rational_) add(Rational(-other.rational_));
}

void ExactSum::normalize() const {
  if (pending_ == 0) return;
  for (std::size_t i = 0; i + 1 < chunks_.size(); ++i) {
    const std::int64_t carry = chunks_[i] >> kChunkBits;  // floor division
    chunks_[i] -= carry * (std::int64_t{1} << kChunkBits);
    chunks_[i + 1] += carry;
  }
  pending_ = 0;
}

boost::multiprecision::cpp_int ExactSum::dyadic_numerator() const {
  normalize();
  boost::multiprecision::cpp_int v = 0;
  for (std::size_t i = chunks_.size(); i-- > 0;) {
    v <<= kChunkBits;
    v += chunks_[i];
  }
  return v;
}

Rational ExactSum::to_rational() const {
  Rational dyadic(dyadic_numerator(), boost::multiprecision::cpp_int(1) << kOffset);
  if (has_rational_) dyadic += rational_;
  return dyadic;
}

bool ExactSum::is_zero() const {
  if (has_rational_) return to_rational() == 0;
  normalize();
  for (auto c : chunks_) {
    if (c != 0) return false;
  }
  return true;
}

double ExactSum::to_double() const {
  if (has_rational_ && rational_ != 0) return to_rational().convert_to<double>();
  normalize();
  std::array<std::int64_t, kChunks> c = chunks_;
  bool negative = c.back() < 0;
  if (negative) {
    for (auto& v : c) v = -v;
    for (std::size_t i = 0; i + 1 < c.size(); ++i) {
      const std::int64_t carry = c[i] >> kChunkBits;
      c[i] -= carry * (std::int64_t{1} << kChunkBits);
      c[i + 1] += carry;
    }
  }
  int top = kChunks - 1;
  while (top >= 0 && c[static_cast<std::size_t>(top)] == 0) --top;
  if (top < 0) return 0.0;
  const int low = top >= 2 ? top - 2 : 0;
  unsigned __int128 v = 0;
  for (int i = top; i >= low; --i) {
    v = (v << kChunkBits) | static_cast<std::uint64_t>(c[static_cast<std::size_t>(i)]);
  }
  for (int i = low - 1; i >= 0; --i) {
    if (c[static_cast<std::size_t>(i)] != 0) {
      v |= 1;  // sticky bit for correct rounding
      break;
    }
  }
  const double r = std::ldexp(static_cast<double>(v), kChunkBits * low - kOffset);
  return negative ? -r : r;
}

}  // namespace rwc
