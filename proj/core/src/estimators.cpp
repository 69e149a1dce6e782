#include "meqlab/estimators.hpp"

#include <algorithm>
#include <cstdlib>

#include "meqlab/errors.hpp"
#include "meqlab/registry.hpp"

namespace meqlab {

std::string to_string(EstimateKind kind) {
  switch (kind) {
    case EstimateKind::check:
      return "check";
    case EstimateKind::hat:
      return "hat";
    case EstimateKind::besicovitch:
      return "besicovitch";
    case EstimateKind::weyl:
      return "weyl";
    case EstimateKind::banach_density:
      return "banach_density";
  }
  return "unknown";
}

DistanceSeries::DistanceSeries(FolnerWindow range, std::vector<double> values)
    : range_(range), values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(range_.size())) throw PreconditionError("series length does not match range");
}

DistanceSeries DistanceSeries::compute(const System& system, const Point& x, const Point& y,
                                       FolnerWindow range) {
  return DistanceSeries(range, system.orbit_distances(x, y, range.lo(), range.hi()));
}

DistanceSeries DistanceSeries::for_schedule(const System& system, const Point& x, const Point& y,
                                            const FolnerSchedule& schedule) {
  return compute(system, x, y, schedule.hull(true));
}

void DistanceSeries::require_inside(const FolnerWindow& window) const {
  if (window.lo() < range_.lo() || window.hi() > range_.hi()) {
    throw PreconditionError("window lies outside the computed distance series");
  }
}

double DistanceSeries::at(std::int64_t g) const {
  if (!range_.contains(g)) throw PreconditionError("index outside the computed distance series");
  return values_[static_cast<std::size_t>(g - range_.lo())];
}

ExactSum DistanceSeries::window_sum(const FolnerWindow& window) const {
  require_inside(window);
  ExactSum s;
  const auto first = values_.begin() + (window.lo() - range_.lo());
  std::for_each(first, first + static_cast<std::ptrdiff_t>(window.size()), [&](double v) { s.add(v); });
  return s;
}

double DistanceSeries::window_average(const FolnerWindow& window) const {
  return window_sum(window).divided_by(window.size());
}

double DistanceSeries::window_min(const FolnerWindow& window) const {
  require_inside(window);
  const auto first = values_.begin() + (window.lo() - range_.lo());
  return *std::min_element(first, first + static_cast<std::ptrdiff_t>(window.size()));
}

double DistanceSeries::window_max(const FolnerWindow& window) const {
  require_inside(window);
  const auto first = values_.begin() + (window.lo() - range_.lo());
  return *std::max_element(first, first + static_cast<std::ptrdiff_t>(window.size()));
}

namespace {

PseudometricEstimate start(EstimateKind kind, const FolnerSchedule& schedule) {
  PseudometricEstimate e;
  e.kind = kind;
  e.schedule_label = schedule.label();
  e.per_window.reserve(schedule.size());
  return e;
}

/// Limsup surrogate: max over the tail half; the earliest maximal window wins.
void aggregate_tail_max(PseudometricEstimate& e, const FolnerSchedule& schedule) {
  std::size_t best = schedule.tail_begin();
  for (std::size_t i = best + 1; i < e.per_window.size(); ++i) {
    if (e.per_window[i].value > e.per_window[best].value) best = i;
  }
  e.achieving_window = best;
  e.value = e.per_window[best].value;
  e.achieving_translate = e.per_window[best].translate;
  if (e.achieving_translate) {
    e.boundary_hit = std::llabs(e.achieving_translate->value) == schedule.radius(best) &&
                     schedule.radius(best) > 0;
  }
}

/// Running min/max over the union of windows, reported per window as the
/// value on windows 0..i.
PseudometricEstimate extreme_over_union(const DistanceSeries& series, const FolnerSchedule& schedule,
                                        EstimateKind kind) {
  PseudometricEstimate e = start(kind, schedule);
  const bool is_min = kind == EstimateKind::check;
  double acc = 0.0;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const FolnerWindow& w = schedule.window(i);
    const double v = is_min ? series.window_min(w) : series.window_max(w);
    acc = i == 0 ? v : (is_min ? std::min(acc, v) : std::max(acc, v));
    e.per_window.push_back({w, acc, std::nullopt});
  }
  e.value = acc;
  e.achieving_window = schedule.size() - 1;
  e.one_sided_bound = true;
  return e;
}

}  // namespace

PseudometricEstimate besicovitch_from(const DistanceSeries& series, const FolnerSchedule& schedule) {
  PseudometricEstimate e = start(EstimateKind::besicovitch, schedule);
  for (const FolnerWindow& w : schedule.windows()) {
    e.per_window.push_back({w, series.window_average(w), std::nullopt});
  }
  aggregate_tail_max(e, schedule);
  return e;
}

PseudometricEstimate weyl_from(const DistanceSeries& series, const FolnerSchedule& schedule) {
  PseudometricEstimate e = start(EstimateKind::weyl, schedule);
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const FolnerWindow& w = schedule.window(i);
    const std::int64_t radius = schedule.radius(i);
    // Sliding exact sums over w + t for t = -radius..radius. Ties go to the
    // translate of smallest |t|, then to the negative one.
    ExactSum sum = series.window_sum(w.translated(-radius));
    ExactSum best = sum;
    std::int64_t best_t = -radius;
    for (std::int64_t t = -radius; t <= radius; ++t) {
      if (t > -radius) {
        sum.add(series.at(w.hi() + t));
        sum.subtract(series.at(w.lo() + t - 1));
      }
      const auto cmp = sum <=> best;
      if (cmp > 0 || (cmp == 0 && std::llabs(t) < std::llabs(best_t))) {
        best = sum;
        best_t = t;
      }
    }
    e.per_window.push_back({w, best.divided_by(w.size()), GroupElement{best_t}});
  }
  aggregate_tail_max(e, schedule);
  return e;
}

PseudometricEstimate check_from(const DistanceSeries& series, const FolnerSchedule& schedule) {
  return extreme_over_union(series, schedule, EstimateKind::check);
}

PseudometricEstimate hat_from(const DistanceSeries& series, const FolnerSchedule& schedule) {
  return extreme_over_union(series, schedule, EstimateKind::hat);
}

PseudometricEstimate banach_density_from(const DistanceSeries& series, double eps,
                                         const FolnerSchedule& schedule) {
  if (!(eps > 0.0)) throw PreconditionError("banach density needs eps > 0");
  PseudometricEstimate e = start(EstimateKind::banach_density, schedule);
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const FolnerWindow& w = schedule.window(i);
    const std::int64_t radius = schedule.radius(i);
    auto good = [&](std::int64_t g) { return series.at(g) < eps ? 1 : 0; };
    std::int64_t count = 0;
    for (std::int64_t g = w.lo() - radius; g <= w.hi() - radius; ++g) count += good(g);
    std::int64_t worst = count;
    std::int64_t worst_t = -radius;
    for (std::int64_t t = -radius + 1; t <= radius; ++t) {
      count += good(w.hi() + t) - good(w.lo() + t - 1);
      if (count < worst || (count == worst && std::llabs(t) < std::llabs(worst_t))) {
        worst = count;
        worst_t = t;
      }
    }
    e.per_window.push_back(
        {w, static_cast<double>(worst) / static_cast<double>(w.size()), GroupElement{worst_t}});
  }
  aggregate_tail_max(e, schedule);
  return e;
}

PseudometricEstimate besicovitch_estimate(const System& system, const Point& x, const Point& y,
                                          const FolnerSchedule& schedule) {
  return besicovitch_from(DistanceSeries::compute(system, x, y, schedule.hull(false)), schedule);
}

PseudometricEstimate weyl_estimate(const System& system, const Point& x, const Point& y,
                                   const FolnerSchedule& schedule) {
  return weyl_from(DistanceSeries::for_schedule(system, x, y, schedule), schedule);
}

PseudometricEstimate check_estimate(const System& system, const Point& x, const Point& y,
                                    const FolnerSchedule& schedule) {
  return check_from(DistanceSeries::compute(system, x, y, schedule.hull(false)), schedule);
}

PseudometricEstimate hat_estimate(const System& system, const Point& x, const Point& y,
                                  const FolnerSchedule& schedule) {
  return hat_from(DistanceSeries::compute(system, x, y, schedule.hull(false)), schedule);
}

PseudometricEstimate banach_density_estimate(const System& system, const Point& x, const Point& y,
                                             double eps, const FolnerSchedule& schedule) {
  if (!(eps > 0.0)) throw PreconditionError("banach density needs eps > 0");
  return banach_density_from(DistanceSeries::for_schedule(system, x, y, schedule), eps, schedule);
}

PseudometricEstimate besicovitch_estimate(const Point& x, const Point& y, const FolnerSchedule& schedule) {
  return besicovitch_estimate(common_system(x, y), x, y, schedule);
}

PseudometricEstimate weyl_estimate(const Point& x, const Point& y, const FolnerSchedule& schedule) {
  return weyl_estimate(common_system(x, y), x, y, schedule);
}

PseudometricEstimate check_estimate(const Point& x, const Point& y, const FolnerSchedule& schedule) {
  return check_estimate(common_system(x, y), x, y, schedule);
}

PseudometricEstimate hat_estimate(const Point& x, const Point& y, const FolnerSchedule& schedule) {
  return hat_estimate(common_system(x, y), x, y, schedule);
}

PseudometricEstimate banach_density_estimate(const Point& x, const Point& y, double eps,
                                             const FolnerSchedule& schedule) {
  return banach_density_estimate(common_system(x, y), x, y, eps, schedule);
}

PairEstimates estimate_pair(const System& system, const Point& x, const Point& y,
                            const FolnerSchedule& schedule) {
  const DistanceSeries series = DistanceSeries::for_schedule(system, x, y, schedule);
  return PairEstimates{check_from(series, schedule), hat_from(series, schedule),
                       besicovitch_from(series, schedule), weyl_from(series, schedule)};
}

}  // namespace meqlab
