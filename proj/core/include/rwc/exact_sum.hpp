#pragma once

#include <array>
#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace rwc {

using Rational = boost::multiprecision::cpp_rational;

/// An exact sum of doubles and rationals.
///
/// Doubles go into a fixed-point superaccumulator spanning the full binary64
/// range, so addition and subtraction are exact and associative. Rational
/// terms are kept separately. Rounding happens only in to_double(), which
/// means two sums that are mathematically equal always convert to the same
/// double, and a difference of equal sums is exactly 0.
class ExactSum {
 public:
  ExactSum() = default;
  explicit ExactSum(double x) { add(x); }

  void add(double x);
  void add(const Rational& q);
  void add(std::int64_t i);
  void add(const ExactSum& other);
  void subtract(const ExactSum& other);

  ExactSum& operator+=(double x) {
    add(x);
    return *this;
  }
  ExactSum& operator+=(const ExactSum& o) {
    add(o);
    return *this;
  }
  ExactSum& operator-=(const ExactSum& o) {
    subtract(o);
    return *this;
  }
  friend ExactSum operator-(ExactSum a, const ExactSum& b) {
    a.subtract(b);
    return a;
  }
  friend ExactSum operator+(ExactSum a, const ExactSum& b) {
    a.add(b);
    return a;
  }

  /// Correctly rounded value (round to nearest, ties to even).
  double to_double() const;
  /// The exact value.
  Rational to_rational() const;
  bool is_zero() const;

  friend bool operator==(const ExactSum& a, const ExactSum& b) { return (a - b).is_zero(); }

 private:
  static constexpr int kChunkBits = 32;
  static constexpr int kChunks = 68;
  static constexpr int kOffset = 1074;  // chunk 0 bit 0 has weight 2^-1074
  static constexpr int kNormalizeEvery = 1 << 28;

  void normalize() const;
  boost::multiprecision::cpp_int dyadic_numerator() const;

  mutable std::array<std::int64_t, kChunks> chunks_{};
  mutable int pending_ = 0;
  Rational rational_;
  bool has_rational_ = false;
};

}  // namespace rwc
