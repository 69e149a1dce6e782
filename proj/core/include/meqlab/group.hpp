#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace meqlab {

/// An element of the acting group Z. Composition is addition.
struct GroupElement {
  std::int64_t value = 0;

  static constexpr GroupElement identity() { return {0}; }
  constexpr GroupElement inverse() const { return {-value}; }
  constexpr GroupElement operator+(GroupElement other) const { return {value + other.value}; }
  constexpr GroupElement operator-() const { return inverse(); }
  constexpr auto operator<=>(const GroupElement&) const = default;
};

/// The integer interval {lo, ..., hi}, both ends included.
class FolnerWindow {
 public:
  FolnerWindow(std::int64_t lo, std::int64_t hi);

  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return hi_; }
  std::int64_t size() const { return hi_ - lo_ + 1; }
  bool contains(std::int64_t g) const { return lo_ <= g && g <= hi_; }

  FolnerWindow translated(std::int64_t g) const { return {lo_ + g, hi_ + g}; }

  /// |F symmetric-difference (F + g)|.
  std::int64_t symmetric_difference_with_shift(std::int64_t g) const;

  /// |F symmetric-difference (F + g)| / |F|; the Folner ratio.
  double folner_ratio(std::int64_t g = 1) const;

  bool operator==(const FolnerWindow&) const = default;

 private:
  std::int64_t lo_;
  std::int64_t hi_;
};

enum class WindowFamily { symmetric, one_sided };

const char* to_string(WindowFamily family);
WindowFamily parse_window_family(const std::string& text);

/// A growing family of windows together with the radius M_n that truncates
/// the supremum over translates for window n.
class FolnerSchedule {
 public:
  FolnerSchedule(std::vector<FolnerWindow> windows, std::vector<std::int64_t> translate_radius,
                 std::string label = "custom");

  const std::vector<FolnerWindow>& windows() const { return windows_; }
  const std::vector<std::int64_t>& translate_radius() const { return radius_; }
  std::size_t size() const { return windows_.size(); }
  const FolnerWindow& window(std::size_t i) const { return windows_[i]; }
  std::int64_t radius(std::size_t i) const { return radius_[i]; }
  const std::string& label() const { return label_; }

  /// First index of the tail half used by the limsup surrogate.
  std::size_t tail_begin() const { return windows_.size() / 2; }

  /// Smallest interval containing every window, optionally widened by the
  /// translate radius of each window.
  FolnerWindow hull(bool with_translates) const;

 private:
  std::vector<FolnerWindow> windows_;
  std::vector<std::int64_t> radius_;
  std::string label_;
};

/// Windows {-L_n..L_n} (symmetric) or {-L_n..0} (one-sided) for L_n = 2^n,
/// n = 0..max_exponent, with translate radius M_n = L_n.
FolnerSchedule default_schedule(int max_exponent, WindowFamily family = WindowFamily::symmetric);

/// As default_schedule but starting at L = 2^min_exponent, which moves the
/// tail half of the schedule to longer windows.
FolnerSchedule dyadic_schedule(int min_exponent, int max_exponent,
                               WindowFamily family = WindowFamily::symmetric);

/// Both families of default_schedule.
std::vector<FolnerSchedule> default_schedules(int max_exponent);

}  // namespace meqlab
