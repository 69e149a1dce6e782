#pragma once

#include <optional>
#include <string>
#include <vector>

#include "meqlab/exact_sum.hpp"
#include "meqlab/group.hpp"
#include "meqlab/system.hpp"

namespace meqlab {

enum class EstimateKind { check, hat, besicovitch, weyl, banach_density };

std::string to_string(EstimateKind kind);

struct WindowValue {
  FolnerWindow window;
  double value = 0.0;
  /// Translate achieving the per-window sup (weyl) or inf (banach_density).
  std::optional<GroupElement> translate;
};

struct PseudometricEstimate {
  EstimateKind kind = EstimateKind::besicovitch;
  double value = 0.0;
  std::vector<WindowValue> per_window;
  std::optional<GroupElement> achieving_translate;
  /// Index into per_window of the window that produced `value`.
  std::size_t achieving_window = 0;
  /// Set when an achieving translate sits on the edge of its search range,
  /// i.e. the sup over G may not have stabilised.
  bool boundary_hit = false;
  /// check is only an upper bound for the infimum and hat a lower bound for
  /// the supremum over all of Z.
  bool one_sided_bound = false;
  std::string schedule_label;
};

/// d(g.x, g.x') for every g in a contiguous range, computed once and shared
/// by all estimators.
class DistanceSeries {
 public:
  DistanceSeries(FolnerWindow range, std::vector<double> values);

  static DistanceSeries compute(const System& system, const Point& x, const Point& y,
                                FolnerWindow range);
  /// Covers every window of the schedule widened by its translate radius.
  static DistanceSeries for_schedule(const System& system, const Point& x, const Point& y,
                                     const FolnerSchedule& schedule);

  const FolnerWindow& range() const { return range_; }
  const std::vector<double>& values() const { return values_; }
  double at(std::int64_t g) const;

  /// Exact sum over the window (must lie inside range()).
  ExactSum window_sum(const FolnerWindow& window) const;
  double window_average(const FolnerWindow& window) const;
  double window_min(const FolnerWindow& window) const;
  double window_max(const FolnerWindow& window) const;

 private:
  void require_inside(const FolnerWindow& window) const;

  FolnerWindow range_;
  std::vector<double> values_;
};

PseudometricEstimate besicovitch_from(const DistanceSeries& series, const FolnerSchedule& schedule);
PseudometricEstimate weyl_from(const DistanceSeries& series, const FolnerSchedule& schedule);
PseudometricEstimate check_from(const DistanceSeries& series, const FolnerSchedule& schedule);
PseudometricEstimate hat_from(const DistanceSeries& series, const FolnerSchedule& schedule);
PseudometricEstimate banach_density_from(const DistanceSeries& series, double eps,
                                         const FolnerSchedule& schedule);

PseudometricEstimate besicovitch_estimate(const System& system, const Point& x, const Point& y,
                                          const FolnerSchedule& schedule);
PseudometricEstimate weyl_estimate(const System& system, const Point& x, const Point& y,
                                   const FolnerSchedule& schedule);
PseudometricEstimate check_estimate(const System& system, const Point& x, const Point& y,
                                    const FolnerSchedule& schedule);
PseudometricEstimate hat_estimate(const System& system, const Point& x, const Point& y,
                                  const FolnerSchedule& schedule);
PseudometricEstimate banach_density_estimate(const System& system, const Point& x, const Point& y,
                                             double eps, const FolnerSchedule& schedule);

// Registry lookups by the points' system id.
PseudometricEstimate besicovitch_estimate(const Point& x, const Point& y, const FolnerSchedule& schedule);
PseudometricEstimate weyl_estimate(const Point& x, const Point& y, const FolnerSchedule& schedule);
PseudometricEstimate check_estimate(const Point& x, const Point& y, const FolnerSchedule& schedule);
PseudometricEstimate hat_estimate(const Point& x, const Point& y, const FolnerSchedule& schedule);
PseudometricEstimate banach_density_estimate(const Point& x, const Point& y, double eps,
                                             const FolnerSchedule& schedule);

/// check, besicovitch and weyl of one pair from a single distance series.
struct PairEstimates {
  PseudometricEstimate check;
  PseudometricEstimate hat;
  PseudometricEstimate besicovitch;
  PseudometricEstimate weyl;
};

PairEstimates estimate_pair(const System& system, const Point& x, const Point& y,
                            const FolnerSchedule& schedule);

}  // namespace meqlab
