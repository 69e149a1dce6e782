#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace meqlab {

/// A 2-adic integer with an eventually periodic digit stream
/// d_0 d_1 ... = preperiod, period, period, ... (least significant digit
/// first). Values are kept in a canonical form (primitive period, shortest
/// preperiod), so equality of values is equality of representations.
class DyadicInteger {
 public:
  /// Zero.
  DyadicInteger();
  DyadicInteger(std::vector<std::uint8_t> preperiod, std::vector<std::uint8_t> period);

  static DyadicInteger from_integer(std::int64_t n);

  /// "<int>" or "<preperiod>|<period>" with digits least significant first,
  /// e.g. "5", "-1", "1|01".
  static DyadicInteger parse(const std::string& text);
  std::string to_string() const;

  const std::vector<std::uint8_t>& preperiod() const { return pre_; }
  const std::vector<std::uint8_t>& period() const { return per_; }

  std::uint8_t digit(std::size_t i) const;
  /// Digits 0..63 as a machine word (the residue mod 2^64).
  std::uint64_t low_bits() const { return low_; }

  bool is_zero() const;
  /// True for elements of Z inside Z_2 (period 0 or period 1).
  bool is_integer() const;
  std::optional<std::int64_t> to_integer() const;

  /// Index of the lowest nonzero digit; empty for zero.
  std::optional<std::size_t> valuation() const;

  DyadicInteger operator+(const DyadicInteger& other) const;
  DyadicInteger operator+(std::int64_t g) const { return *this + from_integer(g); }
  DyadicInteger operator-() const;
  DyadicInteger operator-(const DyadicInteger& other) const { return *this + (-other); }

  /// Number of leading digits on which the two streams agree; empty if equal.
  static std::optional<std::size_t> agreeing_prefix(const DyadicInteger& a, const DyadicInteger& b);

  bool operator==(const DyadicInteger& other) const { return pre_ == other.pre_ && per_ == other.per_; }
  bool operator<(const DyadicInteger& other) const;

 private:
  void canonicalize();

  std::vector<std::uint8_t> pre_;
  std::vector<std::uint8_t> per_;
  std::uint64_t low_ = 0;
};

}  // namespace meqlab
