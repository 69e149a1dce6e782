#include "meqlab/group.hpp"

#include <algorithm>
#include <cstdlib>

#include "meqlab/errors.hpp"

namespace meqlab {

FolnerWindow::FolnerWindow(std::int64_t lo, std::int64_t hi) : lo_(lo), hi_(hi) {
  if (lo > hi) {
    throw PreconditionError("window lower end exceeds upper end");
  }
}

std::int64_t FolnerWindow::symmetric_difference_with_shift(std::int64_t g) const {
  return 2 * std::min<std::int64_t>(std::llabs(g), size());
}

double FolnerWindow::folner_ratio(std::int64_t g) const {
  return static_cast<double>(symmetric_difference_with_shift(g)) / static_cast<double>(size());
}

const char* to_string(WindowFamily family) {
  return family == WindowFamily::symmetric ? "symmetric" : "one-sided";
}

WindowFamily parse_window_family(const std::string& text) {
  if (text == "symmetric") return WindowFamily::symmetric;
  if (text == "one-sided" || text == "one_sided") return WindowFamily::one_sided;
  throw PreconditionError("unknown window family '" + text + "'");
}

FolnerSchedule::FolnerSchedule(std::vector<FolnerWindow> windows,
                               std::vector<std::int64_t> translate_radius, std::string label)
    : windows_(std::move(windows)), radius_(std::move(translate_radius)), label_(std::move(label)) {
  if (windows_.empty()) {
    throw PreconditionError("schedule needs at least one window");
  }
  if (windows_.size() != radius_.size()) {
    throw PreconditionError("one translate radius per window is required");
  }
  for (std::size_t i = 0; i < windows_.size(); ++i) {
    if (radius_[i] < 0) throw PreconditionError("translate radius must be nonnegative");
    if (i > 0) {
      if (windows_[i].size() <= windows_[i - 1].size()) {
        throw PreconditionError("window cardinalities must be strictly increasing");
      }
      if (radius_[i] < radius_[i - 1]) {
        throw PreconditionError("translate radius must be nondecreasing");
      }
    }
  }
}

FolnerWindow FolnerSchedule::hull(bool with_translates) const {
  std::int64_t lo = windows_.front().lo();
  std::int64_t hi = windows_.front().hi();
  for (std::size_t i = 0; i < windows_.size(); ++i) {
    const std::int64_t m = with_translates ? radius_[i] : 0;
    lo = std::min(lo, windows_[i].lo() - m);
    hi = std::max(hi, windows_[i].hi() + m);
  }
  return {lo, hi};
}

FolnerSchedule dyadic_schedule(int min_exponent, int max_exponent, WindowFamily family) {
  if (max_exponent < 1 || max_exponent > 40) {
    throw PreconditionError("max_exponent must lie in [1, 40]");
  }
  if (min_exponent < 0 || min_exponent >= max_exponent) {
    throw PreconditionError("min_exponent must lie in [0, max_exponent)");
  }
  std::vector<FolnerWindow> windows;
  std::vector<std::int64_t> radii;
  for (int n = min_exponent; n <= max_exponent; ++n) {
    const std::int64_t len = std::int64_t{1} << n;
    if (family == WindowFamily::symmetric) {
      windows.emplace_back(-len, len);
    } else {
      windows.emplace_back(-len, 0);
    }
    radii.push_back(len);
  }
  const std::string label = std::string(to_string(family)) + " L=2^" + std::to_string(min_exponent) +
                            "..2^" + std::to_string(max_exponent);
  return {std::move(windows), std::move(radii), label};
}

FolnerSchedule default_schedule(int max_exponent, WindowFamily family) {
  return dyadic_schedule(0, max_exponent, family);
}

std::vector<FolnerSchedule> default_schedules(int max_exponent) {
  return {default_schedule(max_exponent, WindowFamily::symmetric),
          default_schedule(max_exponent, WindowFamily::one_sided)};
}

}  // namespace meqlab
