#include "meqlab/golden.hpp"

#include <cmath>
#include <numeric>
#include <utility>

#include "meqlab/errors.hpp"

namespace meqlab {

namespace {

using u128 = unsigned __int128;

struct U256 {
  u128 hi = 0;
  u128 lo = 0;
};

U256 square(u128 a) {
  const u128 mask = (u128{1} << 64) - 1;
  const u128 a0 = a & mask;
  const u128 a1 = a >> 64;
  const u128 p00 = a0 * a0;
  const u128 p01 = a0 * a1;
  const u128 p11 = a1 * a1;
  // a^2 = p11 * 2^128 + 2 * p01 * 2^64 + p00
  U256 r;
  r.lo = p00;
  r.hi = p11;
  for (int k = 0; k < 2; ++k) {
    const u128 add_lo = p01 << 64;
    const u128 add_hi = p01 >> 64;
    const u128 before = r.lo;
    r.lo += add_lo;
    r.hi += add_hi + (r.lo < before ? 1 : 0);
  }
  return r;
}

U256 times_five(U256 v) {
  U256 four{(v.hi << 2) | (v.lo >> 126), v.lo << 2};
  U256 r = four;
  const u128 before = r.lo;
  r.lo += v.lo;
  r.hi += v.hi + (r.lo < before ? 1 : 0);
  return r;
}

bool greater(U256 a, U256 b) { return a.hi != b.hi ? a.hi > b.hi : a.lo > b.lo; }

u128 magnitude(__int128 v) { return v < 0 ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v); }

int sgn(__int128 v) { return (v > 0) - (v < 0); }

// alpha split so that turns * kAlphaHi is exact in long double for |turns| < 2^36.
const long double kAlphaHi = std::ldexp(std::nearbyint(std::ldexp(kGoldenAlpha, 26)), -26);
const long double kAlphaLo = kGoldenAlpha - kAlphaHi;

// num/den + m*alpha - k in long double, accurate to a few ulps of the result.
long double offset_from(std::int64_t num, std::int64_t den, std::int64_t m, std::int64_t k) {
  const long double head = static_cast<long double>(m) * kAlphaHi - static_cast<long double>(k);
  return head + static_cast<long double>(num) / static_cast<long double>(den) +
         static_cast<long double>(m) * kAlphaLo;
}

}  // namespace

int golden_sign(__int128 p, __int128 q) {
  // 2(p + q alpha) = (2p - q) + q sqrt(5)
  const __int128 u = 2 * p - q;
  const int su = sgn(u);
  const int sq = sgn(q);
  if (sq == 0) return su;
  if (su == 0 || su == sq) return sq;
  const U256 uu = square(magnitude(u));
  const U256 qq5 = times_five(square(magnitude(q)));
  return greater(uu, qq5) ? su : sq;
}

std::int64_t golden_floor(std::int64_t num, std::int64_t den, std::int64_t m) {
  if (den <= 0) throw PreconditionError("golden_floor needs a positive denominator");
  std::int64_t k = static_cast<std::int64_t>(std::floor(offset_from(num, den, m, 0)));
  auto sign_minus = [&](std::int64_t kk) {
    return golden_sign(static_cast<__int128>(num) - static_cast<__int128>(kk) * den,
                       static_cast<__int128>(m) * den);
  };
  while (sign_minus(k) < 0) --k;
  while (sign_minus(k + 1) >= 0) ++k;
  return k;
}

GoldenPhase GoldenPhase::make(std::int64_t num, std::int64_t den, std::int64_t turns) {
  if (den <= 0) throw PreconditionError("phase denominator must be positive");
  if (den > (std::int64_t{1} << 24)) throw PreconditionError("phase denominator exceeds 2^24");
  num %= den;
  if (num < 0) num += den;
  const std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return {num, den, turns};
}

double GoldenPhase::value() const {
  const std::int64_t k = golden_floor(num, den, turns);
  long double v = offset_from(num, den, turns, k);
  if (v < 0) v = 0;
  if (v >= 1) v = std::nextafter(1.0L, 0.0L);
  return static_cast<double>(v);
}

double circle_distance(const GoldenPhase& a, const GoldenPhase& b) {
  if (a == b) return 0.0;
  const GoldenPhase& p = a < b ? a : b;
  const GoldenPhase& q = a < b ? b : a;
  const std::int64_t den = p.den * q.den;
  const std::int64_t num = p.num * q.den - q.num * p.den;
  const std::int64_t turns = p.turns - q.turns;
  const std::int64_t k = golden_floor(num, den, turns);
  long double f = offset_from(num, den, turns, k);
  if (f < 0) f = 0;
  const long double d = std::min(f, 1.0L - f);
  return static_cast<double>(d < 0 ? 0.0L : d);
}

GoldenPhase GoldenPhase::parse(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) throw ParseError("phase literal needs '<num>/<den>'");
    std::size_t sign_pos = text.find_first_of("+-", slash + 1);
    const std::int64_t num = std::stoll(text.substr(0, slash));
    const std::int64_t den = std::stoll(text.substr(slash + 1, sign_pos - slash - 1));
    std::int64_t turns = 0;
    if (sign_pos != std::string::npos) {
      std::string rest = text.substr(sign_pos);
      if (rest.empty() || rest.back() != 'a') throw ParseError("phase turns must end in 'a'");
      rest.pop_back();
      if (rest == "+" || rest == "-") rest += "1";
      std::size_t used = 0;
      turns = std::stoll(rest, &used);
      if (used != rest.size()) throw ParseError("bad phase turns");
    }
    return make(num, den, turns);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("bad phase literal '" + text + "'");
  }
}

std::string GoldenPhase::to_string() const {
  std::string out = std::to_string(num) + "/" + std::to_string(den);
  if (turns != 0) out += (turns > 0 ? "+" : "") + std::to_string(turns) + "a";
  return out;
}

}  // namespace meqlab
