#include "meqlab/dyadic.hpp"

#include <algorithm>
#include <numeric>

#include "meqlab/errors.hpp"

namespace meqlab {

namespace {

std::size_t primitive_period(const std::vector<std::uint8_t>& per) {
  const std::size_t n = per.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = per[i] == per[i - p];
    if (ok) return p;
  }
  return n;
}

}  // namespace

DyadicInteger::DyadicInteger() : per_{0} {}

DyadicInteger::DyadicInteger(std::vector<std::uint8_t> preperiod, std::vector<std::uint8_t> period)
    : pre_(std::move(preperiod)), per_(std::move(period)) {
  if (per_.empty()) throw PreconditionError("dyadic integer needs a nonempty period");
  for (auto d : pre_) {
    if (d > 1) throw PreconditionError("dyadic digits must be 0 or 1");
  }
  for (auto d : per_) {
    if (d > 1) throw PreconditionError("dyadic digits must be 0 or 1");
  }
  canonicalize();
}

void DyadicInteger::canonicalize() {
  per_.resize(primitive_period(per_));
  while (!pre_.empty() && pre_.back() == per_.back()) {
    pre_.pop_back();
    std::rotate(per_.rbegin(), per_.rbegin() + 1, per_.rend());
  }
  low_ = 0;
  for (std::size_t i = 0; i < 64; ++i) {
    low_ |= static_cast<std::uint64_t>(digit(i)) << i;
  }
}

DyadicInteger DyadicInteger::from_integer(std::int64_t n) {
  std::vector<std::uint8_t> pre;
  const std::uint8_t tail = n < 0 ? 1 : 0;
  const std::int64_t stop = n < 0 ? -1 : 0;
  while (n != stop) {
    pre.push_back(static_cast<std::uint8_t>(n & 1));
    n >>= 1;  // arithmetic shift: two's complement digits
  }
  return {std::move(pre), {tail}};
}

std::uint8_t DyadicInteger::digit(std::size_t i) const {
  if (i < pre_.size()) return pre_[i];
  return per_[(i - pre_.size()) % per_.size()];
}

bool DyadicInteger::is_zero() const { return pre_.empty() && per_.size() == 1 && per_[0] == 0; }

bool DyadicInteger::is_integer() const { return per_.size() == 1; }

std::optional<std::int64_t> DyadicInteger::to_integer() const {
  if (!is_integer() || pre_.size() > 62) return std::nullopt;
  std::int64_t value = 0;
  for (std::size_t i = 0; i < pre_.size(); ++i) value |= static_cast<std::int64_t>(pre_[i]) << i;
  if (per_[0] == 1) value -= std::int64_t{1} << pre_.size();
  return value;
}

std::optional<std::size_t> DyadicInteger::valuation() const {
  if (is_zero()) return std::nullopt;
  const std::size_t bound = pre_.size() + per_.size();
  for (std::size_t i = 0; i < bound; ++i) {
    if (digit(i) != 0) return i;
  }
  return std::nullopt;  // unreachable for canonical nonzero values
}

DyadicInteger DyadicInteger::operator+(const DyadicInteger& other) const {
  const std::size_t start = std::max(pre_.size(), other.pre_.size());
  const std::size_t block = std::lcm(per_.size(), other.per_.size());

  std::vector<std::uint8_t> digits;
  unsigned carry = 0;
  for (std::size_t i = 0; i < start; ++i) {
    const unsigned s = digit(i) + other.digit(i) + carry;
    digits.push_back(static_cast<std::uint8_t>(s & 1U));
    carry = s >> 1;
  }
  // Past `start` both streams repeat every `block` digits, so the sum repeats
  // as soon as the carry entering a block repeats.
  int seen[2] = {-1, -1};
  std::vector<std::vector<std::uint8_t>> blocks;
  std::size_t pos = start;
  while (seen[carry] < 0) {
    seen[carry] = static_cast<int>(blocks.size());
    std::vector<std::uint8_t> out;
    for (std::size_t j = 0; j < block; ++j) {
      const unsigned s = digit(pos + j) + other.digit(pos + j) + carry;
      out.push_back(static_cast<std::uint8_t>(s & 1U));
      carry = s >> 1;
    }
    blocks.push_back(std::move(out));
    pos += block;
  }
  const auto first = static_cast<std::size_t>(seen[carry]);
  for (std::size_t b = 0; b < first; ++b) digits.insert(digits.end(), blocks[b].begin(), blocks[b].end());
  std::vector<std::uint8_t> period;
  for (std::size_t b = first; b < blocks.size(); ++b) {
    period.insert(period.end(), blocks[b].begin(), blocks[b].end());
  }
  return {std::move(digits), std::move(period)};
}

DyadicInteger DyadicInteger::operator-() const {
  std::vector<std::uint8_t> pre = pre_;
  std::vector<std::uint8_t> per = per_;
  for (auto& d : pre) d ^= 1U;
  for (auto& d : per) d ^= 1U;
  return DyadicInteger(std::move(pre), std::move(per)) + from_integer(1);
}

std::optional<std::size_t> DyadicInteger::agreeing_prefix(const DyadicInteger& a,
                                                          const DyadicInteger& b) {
  if (a == b) return std::nullopt;
  const std::size_t bound =
      std::max(a.pre_.size(), b.pre_.size()) + std::lcm(a.per_.size(), b.per_.size());
  for (std::size_t i = 0; i < bound; ++i) {
    if (a.digit(i) != b.digit(i)) return i;
  }
  return std::nullopt;
}

bool DyadicInteger::operator<(const DyadicInteger& other) const {
  if (pre_ != other.pre_) return pre_ < other.pre_;
  return per_ < other.per_;
}

DyadicInteger DyadicInteger::parse(const std::string& text) {
  const auto bar = text.find('|');
  if (bar == std::string::npos) {
    std::size_t used = 0;
    std::int64_t value = 0;
    try {
      value = std::stoll(text, &used);
    } catch (const std::exception&) {
      throw ParseError("bad dyadic literal '" + text + "'");
    }
    if (used != text.size()) throw ParseError("bad dyadic literal '" + text + "'");
    return from_integer(value);
  }
  auto digits_of = [&](const std::string& s) {
    std::vector<std::uint8_t> out;
    for (char c : s) {
      if (c != '0' && c != '1') throw ParseError("bad dyadic digit in '" + text + "'");
      out.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return out;
  };
  auto period = digits_of(text.substr(bar + 1));
  if (period.empty()) throw ParseError("dyadic literal needs a period: '" + text + "'");
  return {digits_of(text.substr(0, bar)), std::move(period)};
}

std::string DyadicInteger::to_string() const {
  if (auto n = to_integer()) return std::to_string(*n);
  std::string out;
  for (auto d : pre_) out.push_back(static_cast<char>('0' + d));
  out.push_back('|');
  for (auto d : per_) out.push_back(static_cast<char>('0' + d));
  return out;
}

}  // namespace meqlab
