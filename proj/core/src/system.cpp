#include "meqlab/system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "meqlab/errors.hpp"

namespace meqlab {

System::System(std::string id, std::string description, std::string literal_syntax, bool exact)
    : id_(std::move(id)),
      description_(std::move(description)),
      literal_syntax_(std::move(literal_syntax)),
      exact_(exact) {}

void System::require_owned(const Point& x) const {
  if (!owns(x)) throw CrossSystemError(id_, x.system);
}

Point System::act(const Point& x, GroupElement g) const {
  require_owned(x);
  if (g.value == 0) return x;
  return do_act(x, g.value);
}

double System::dist(const Point& x, const Point& y) const {
  require_owned(x);
  require_owned(y);
  if (x.payload == y.payload) return 0.0;
  return do_dist(x, y);
}

std::vector<Point> System::orbit(const Point& x, std::int64_t lo, std::int64_t hi) const {
  require_owned(x);
  if (lo > hi) throw PreconditionError("empty orbit range");
  return do_orbit(x, lo, hi);
}

std::vector<double> System::orbit_distances(const Point& x, const Point& y, std::int64_t lo,
                                            std::int64_t hi) const {
  require_owned(x);
  require_owned(y);
  if (lo > hi) throw PreconditionError("empty orbit range");
  if (x.payload == y.payload) return std::vector<double>(static_cast<std::size_t>(hi - lo + 1), 0.0);
  return do_orbit_distances(x, y, lo, hi);
}

Point System::random_point(Rng& rng) const { return do_random_point(rng); }

Point System::parse_point(const std::string& literal) const { return do_parse_point(literal); }

std::string System::format_point(const Point& x) const {
  require_owned(x);
  return do_format_point(x);
}

std::vector<Point> System::do_orbit(const Point& x, std::int64_t lo, std::int64_t hi) const {
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t g = lo; g <= hi; ++g) out.push_back(act(x, {g}));
  return out;
}

std::vector<double> System::do_orbit_distances(const Point& x, const Point& y, std::int64_t lo,
                                               std::int64_t hi) const {
  const auto xs = do_orbit(x, lo, hi);
  const auto ys = do_orbit(y, lo, hi);
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = dist(xs[i], ys[i]);
  return out;
}

std::vector<std::uint8_t> SubshiftSystem::coordinates(const Point& x, std::int64_t lo,
                                                      std::int64_t hi) const {
  require_owned(x);
  if (lo > hi) throw PreconditionError("empty coordinate range");
  return do_coordinates(x, lo, hi);
}

std::uint8_t SubshiftSystem::coordinate(const Point& x, std::int64_t n) const {
  return coordinates(x, n, n).front();
}

double SubshiftSystem::do_dist(const Point& x, const Point& y) const {
  for (std::int64_t radius = 16;; radius *= 4) {
    const std::int64_t r = std::min<std::int64_t>(radius, kMaxScan);
    const auto a = do_coordinates(x, -r, r);
    const auto b = do_coordinates(y, -r, r);
    for (std::int64_t k = 0; k <= r; ++k) {
      if (a[r + k] != b[r + k] || a[r - k] != b[r - k]) return std::ldexp(1.0, -static_cast<int>(k));
    }
    if (r == kMaxScan) return std::numeric_limits<double>::denorm_min();
  }
}

std::vector<double> SubshiftSystem::do_orbit_distances(const Point& x, const Point& y,
                                                       std::int64_t lo, std::int64_t hi) const {
  // d(g.x, g.y) = 2^-(distance from g to the nearest index where x and y differ).
  const std::int64_t pad = kMaxScan + 1;
  const auto a = do_coordinates(x, lo - pad, hi + pad);
  const auto b = do_coordinates(y, lo - pad, hi + pad);
  const std::size_t n = a.size();
  constexpr std::int64_t kNone = std::numeric_limits<std::int64_t>::max() / 4;

  std::vector<std::int64_t> nearest(n, kNone);
  std::int64_t last = -kNone;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) last = static_cast<std::int64_t>(i);
    nearest[i] = static_cast<std::int64_t>(i) - last;
  }
  last = kNone + static_cast<std::int64_t>(n);
  for (std::size_t i = n; i-- > 0;) {
    if (a[i] != b[i]) last = static_cast<std::int64_t>(i);
    nearest[i] = std::min(nearest[i], last - static_cast<std::int64_t>(i));
  }

  std::vector<double> out(static_cast<std::size_t>(hi - lo + 1));
  for (std::size_t k = 0; k < out.size(); ++k) {
    const std::int64_t d = nearest[k + pad];
    out[k] = d > kMaxScan ? std::numeric_limits<double>::denorm_min()
                          : std::ldexp(1.0, -static_cast<int>(d));
  }
  return out;
}

}  // namespace meqlab
