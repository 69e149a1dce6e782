#include "meqlab/substitution.hpp"

#include "meqlab/errors.hpp"
#include "meqlab/systems.hpp"

namespace meqlab {

std::string Substitution::apply(const std::string& word) const {
  std::string out;
  out.reserve(word.size() * 2);
  for (char c : word) {
    if (c != '0' && c != '1') throw PreconditionError("substitution words use only '0' and '1'");
    out += images[static_cast<std::size_t>(c - '0')];
  }
  return out;
}

Substitution thue_morse_substitution() { return {"0->01,1->10", {"01", "10"}}; }

Substitution period_doubling_substitution() { return {"0->01,1->00", {"01", "00"}}; }

std::string fixed_point_prefix(const Substitution& sub, std::size_t length, char seed) {
  std::string word(1, seed);
  if (sub.apply(word).front() != seed) throw PreconditionError("no fixed point starts with this letter");
  while (word.size() < length) word = sub.apply(word);
  word.resize(length);
  return word;
}

std::set<std::string> substitution_language(const Substitution& sub, std::size_t length) {
  if (length == 0 || length > 24) throw PreconditionError("language length must lie in [1, 24]");
  // Both substitutions are primitive with constant length 2, so every factor
  // of length n occurs in sigma^k(a) once 2^k is a comfortable multiple of n;
  // 2^16 letters cover lengths up to 24 with room to spare.
  std::set<std::string> out;
  for (char seed : {'0', '1'}) {
    std::string word(1, seed);
    while (word.size() < (std::size_t{1} << 16)) word = sub.apply(word);
    for (std::size_t i = 0; i + length <= word.size(); ++i) out.insert(word.substr(i, length));
  }
  return out;
}

std::string exchange_symbols(const std::string& word) {
  std::string out = word;
  for (char& c : out) c = c == '0' ? '1' : '0';
  return out;
}

std::string LanguageCheck::convention() const {
  if (direct_holds && exchanged_holds) return "both";
  if (direct_holds) return "direct";
  if (exchanged_holds) return "exchanged";
  return "neither";
}

LanguageCheck language_check(const std::vector<std::uint8_t>& sequence, const Substitution& sub,
                             std::size_t max_length) {
  LanguageCheck r;
  r.max_length = max_length;
  std::string text(sequence.size(), '0');
  for (std::size_t i = 0; i < sequence.size(); ++i) text[i] = sequence[i] ? '1' : '0';
  for (std::size_t n = 1; n <= max_length; ++n) {
    const auto lang = substitution_language(sub, n);
    std::set<std::string> windows;
    for (std::size_t i = 0; i + n <= text.size(); ++i) windows.insert(text.substr(i, n));
    for (const std::string& w : windows) {
      ++r.windows_checked;
      if (!lang.count(w)) {
        r.direct_holds = false;
        if (!r.first_direct_miss) r.first_direct_miss = w;
      }
      if (!lang.count(exchange_symbols(w))) {
        r.exchanged_holds = false;
        if (!r.first_exchanged_miss) r.first_exchanged_miss = w;
      }
    }
  }
  return r;
}

LanguageCheck toeplitz_language_check(const ToeplitzState& point, std::size_t max_length, std::int64_t span) {
  return language_check(toeplitz_window(point, -span, span), period_doubling_substitution(), max_length);
}

}  // namespace meqlab
