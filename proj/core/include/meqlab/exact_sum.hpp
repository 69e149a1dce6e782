#pragma once

#include <array>
#include <compare>
#include <cstdint>

namespace meqlab {

/// Fixed-point accumulator wide enough to hold any finite double exactly
/// (bit i stands for 2^(i - 1074), two's complement). Sums and differences of
/// doubles are therefore exact and independent of summation order, which lets
/// sliding-window sums agree bit for bit with direct ones.
class ExactSum {
 public:
  static constexpr int kWords = 35;

  ExactSum() = default;
  explicit ExactSum(double v) { add(v); }

  void add(double v);
  void subtract(double v);

  ExactSum& operator+=(const ExactSum& other);
  ExactSum& operator-=(const ExactSum& other);
  friend ExactSum operator+(ExactSum a, const ExactSum& b) { return a += b; }
  friend ExactSum operator-(ExactSum a, const ExactSum& b) { return a -= b; }

  int sign() const;
  bool is_zero() const { return sign() == 0; }

  /// Correctly rounded (nearest, ties to even) value.
  double to_double() const { return divided_by(1); }

  /// Correctly rounded value of sum / n.
  double divided_by(std::uint64_t n) const;

  friend std::strong_ordering operator<=>(const ExactSum& a, const ExactSum& b);
  friend bool operator==(const ExactSum& a, const ExactSum& b) { return a.words_ == b.words_; }

 private:
  void add_shifted(std::uint64_t mantissa, int position, bool negative);
  bool negative() const { return (words_[kWords - 1] >> 63) != 0; }

  std::array<std::uint64_t, kWords> words_{};
};

}  // namespace meqlab
