#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "meqlab/point.hpp"

namespace meqlab {

/// A substitution on {0, 1}, written with characters '0' and '1'.
struct Substitution {
  std::string name;
  std::array<std::string, 2> images;

  std::string apply(const std::string& word) const;
};

/// 0 -> 01, 1 -> 10
Substitution thue_morse_substitution();
/// 0 -> 01, 1 -> 00
Substitution period_doubling_substitution();

/// First `length` letters of the one-sided fixed point starting with `seed`
/// (requires the image of `seed` to start with `seed`).
std::string fixed_point_prefix(const Substitution& sub, std::size_t length, char seed = '0');

/// All factors of the given length of the substitution subshift (length <= 24).
std::set<std::string> substitution_language(const Substitution& sub, std::size_t length);

/// Swaps '0' and '1'.
std::string exchange_symbols(const std::string& word);

/// Windows of a sequence compared against a substitution language, once
/// directly and once after the 0 <-> 1 exchange.
struct LanguageCheck {
  std::size_t max_length = 0;
  std::size_t windows_checked = 0;
  bool direct_holds = true;
  bool exchanged_holds = true;
  std::optional<std::string> first_direct_miss;
  std::optional<std::string> first_exchanged_miss;
  /// "direct", "exchanged", "both" or "neither".
  std::string convention() const;
};

/// Every window of length 1..max_length of x_lo..x_hi.
LanguageCheck language_check(const std::vector<std::uint8_t>& sequence, const Substitution& sub,
                             std::size_t max_length);

/// language_check on the Toeplitz point over coordinates -span..span.
LanguageCheck toeplitz_language_check(const ToeplitzState& point, std::size_t max_length,
                                      std::int64_t span = 4096);

}  // namespace meqlab
