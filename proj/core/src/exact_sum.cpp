#include "meqlab/exact_sum.hpp"

#include <bit>
#include <cmath>

#include "meqlab/errors.hpp"

namespace meqlab {

namespace {

using Words = std::array<std::uint64_t, ExactSum::kWords>;

void negate(Words& w) {
  std::uint64_t carry = 1;
  for (auto& word : w) {
    const std::uint64_t inv = ~word;
    word = inv + carry;
    carry = (carry != 0 && word == 0) ? 1 : 0;
  }
}

int highest_bit(const Words& w) {
  for (int i = ExactSum::kWords - 1; i >= 0; --i) {
    if (w[i] != 0) return i * 64 + 63 - std::countl_zero(w[i]);
  }
  return -1;
}

bool test_bit(const Words& w, int pos) { return (w[pos / 64] >> (pos % 64)) & 1U; }

bool any_below(const Words& w, int pos) {
  if (pos <= 0) return false;
  const int word = pos / 64;
  for (int i = 0; i < word; ++i) {
    if (w[i] != 0) return true;
  }
  const int bits = pos % 64;
  return bits != 0 && (w[word] & ((std::uint64_t{1} << bits) - 1)) != 0;
}

/// 53-bit window starting at bit `shift`.
std::uint64_t extract(const Words& w, int shift) {
  const int word = shift / 64;
  const int off = shift % 64;
  std::uint64_t value = w[word] >> off;
  if (off != 0 && word + 1 < ExactSum::kWords) value |= w[word + 1] << (64 - off);
  return value & ((std::uint64_t{1} << 53) - 1);
}

}  // namespace

void ExactSum::add_shifted(std::uint64_t mantissa, int position, bool neg) {
  const int word = position / 64;
  const int off = position % 64;
  const std::uint64_t lo = mantissa << off;
  const std::uint64_t hi = off == 0 ? 0 : mantissa >> (64 - off);
  if (!neg) {
    std::uint64_t before = words_[word];
    words_[word] += lo;
    std::uint64_t carry = words_[word] < before ? 1 : 0;
    int i = word + 1;
    if (i < kWords) {
      before = words_[i];
      words_[i] += hi + carry;
      carry = (words_[i] < before || (carry && words_[i] == before)) ? 1 : 0;
      for (++i; carry && i < kWords; ++i) {
        words_[i] += 1;
        carry = words_[i] == 0 ? 1 : 0;
      }
    }
  } else {
    std::uint64_t before = words_[word];
    words_[word] -= lo;
    std::uint64_t borrow = words_[word] > before ? 1 : 0;
    int i = word + 1;
    if (i < kWords) {
      before = words_[i];
      words_[i] -= hi + borrow;
      borrow = (words_[i] > before || (borrow && words_[i] == before)) ? 1 : 0;
      for (++i; borrow && i < kWords; ++i) {
        borrow = words_[i] == 0 ? 1 : 0;
        words_[i] -= 1;
      }
    }
  }
}

void ExactSum::add(double v) {
  if (!std::isfinite(v)) throw PreconditionError("exact sum of a non-finite value");
  const auto bits = std::bit_cast<std::uint64_t>(v);
  const bool neg = (bits >> 63) != 0;
  const auto exponent = static_cast<int>((bits >> 52) & 0x7ff);
  std::uint64_t mantissa = bits & ((std::uint64_t{1} << 52) - 1);
  if (exponent == 0 && mantissa == 0) return;
  if (exponent != 0) mantissa |= std::uint64_t{1} << 52;
  add_shifted(mantissa, exponent == 0 ? 0 : exponent - 1, neg);
}

void ExactSum::subtract(double v) { add(-v); }

ExactSum& ExactSum::operator+=(const ExactSum& other) {
  std::uint64_t carry = 0;
  for (int i = 0; i < kWords; ++i) {
    const std::uint64_t a = words_[i];
    const std::uint64_t s = a + other.words_[i];
    const std::uint64_t c1 = s < a ? 1 : 0;
    words_[i] = s + carry;
    const std::uint64_t c2 = words_[i] < s ? 1 : 0;
    carry = c1 | c2;
  }
  return *this;
}

ExactSum& ExactSum::operator-=(const ExactSum& other) {
  ExactSum neg = other;
  negate(neg.words_);
  return *this += neg;
}

int ExactSum::sign() const {
  if (negative()) return -1;
  for (auto w : words_) {
    if (w != 0) return 1;
  }
  return 0;
}

std::strong_ordering operator<=>(const ExactSum& a, const ExactSum& b) {
  const bool na = a.negative();
  const bool nb = b.negative();
  if (na != nb) return na ? std::strong_ordering::less : std::strong_ordering::greater;
  // Same sign: two's complement words compare as unsigned from the top.
  for (int i = ExactSum::kWords - 1; i >= 0; --i) {
    if (a.words_[i] != b.words_[i]) {
      return a.words_[i] < b.words_[i] ? std::strong_ordering::less
                                       : std::strong_ordering::greater;
    }
  }
  return std::strong_ordering::equal;
}

double ExactSum::divided_by(std::uint64_t n) const {
  if (n == 0) throw PreconditionError("division of an exact sum by zero");
  Words mag = words_;
  const bool neg = negative();
  if (neg) negate(mag);

  // Long division in units of 2^-1074; the remainder feeds the sticky bit.
  Words q{};
  unsigned __int128 rem = 0;
  for (int i = kWords - 1; i >= 0; --i) {
    const unsigned __int128 cur = (rem << 64) | mag[i];
    q[i] = static_cast<std::uint64_t>(cur / n);
    rem = cur % n;
  }

  const int top = highest_bit(q);
  double result = 0.0;
  if (top < 0) {
    // |sum / n| < 2^-1074: round to 0 or the smallest subnormal.
    result = (2 * rem > n) ? std::ldexp(1.0, -1074) : 0.0;
  } else if (top <= 52) {
    std::uint64_t units = q[0];
    const unsigned __int128 twice = 2 * rem;
    if (twice > n || (twice == n && (units & 1U))) ++units;
    result = std::ldexp(static_cast<double>(units), -1074);
  } else {
    int shift = top - 52;
    std::uint64_t mant = extract(q, shift);
    const bool round_bit = test_bit(q, shift - 1);
    const bool sticky = any_below(q, shift - 1) || rem != 0;
    if (round_bit && (sticky || (mant & 1U))) {
      ++mant;
      if (mant == (std::uint64_t{1} << 53)) {
        mant >>= 1;
        ++shift;
      }
    }
    result = std::ldexp(static_cast<double>(mant), shift - 1074);
  }
  return neg ? -result : result;
}

}  // namespace meqlab
