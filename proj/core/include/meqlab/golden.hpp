#pragma once

#include <cstdint>
#include <string>

namespace meqlab {

/// alpha = (sqrt(5) - 1) / 2, the rotation number used by the rotation and
/// Sturmian systems.
inline constexpr long double kGoldenAlpha = 0.6180339887498948482045868343656381177L;

/// Exact sign of p + q * alpha for integers p, q.
int golden_sign(__int128 p, __int128 q);

/// Exact floor of num/den + m * alpha (den > 0).
std::int64_t golden_floor(std::int64_t num, std::int64_t den, std::int64_t m);

/// A point of R/Z written exactly as frac(num/den + turns * alpha) with
/// 0 <= num < den, gcd(num, den) = 1. Acting by g adds g to `turns`.
/// Limits: den <= 2^24 and |turns| <= 2^36 keep all sign tests inside 128 bits.
struct GoldenPhase {
  std::int64_t num = 0;
  std::int64_t den = 1;
  std::int64_t turns = 0;

  static GoldenPhase make(std::int64_t num, std::int64_t den, std::int64_t turns);

  GoldenPhase shifted(std::int64_t g) const { return {num, den, turns + g}; }

  /// Value in [0, 1) in floating point.
  double value() const;

  /// "<num>/<den>[+<turns>a]" e.g. "1/10", "0/1-3a".
  static GoldenPhase parse(const std::string& text);
  std::string to_string() const;

  bool operator==(const GoldenPhase&) const = default;
  auto operator<=>(const GoldenPhase&) const = default;
};

/// Distance on R/Z between two phases; depends only on the exact difference,
/// so it is invariant under a common shift.
double circle_distance(const GoldenPhase& a, const GoldenPhase& b);

}  // namespace meqlab
