#include "property_suites.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "meqlab/chains.hpp"
#include "meqlab/estimators.hpp"
#include "meqlab/factor_map.hpp"
#include "meqlab/registry.hpp"
#include "meqlab/relations.hpp"
#include "meqlab/systems.hpp"

namespace meqlab::testing {

namespace {

constexpr std::size_t kMaxReported = 5;

void record(SuiteResult& r, bool ok, const std::string& what) {
  ++r.checks;
  if (!ok && r.failures.size() < kMaxReported) r.failures.push_back(what);
}

struct SampledPair {
  const System* system;
  Point x;
  Point y;
};

/// Random pairs of every system plus fibre pairs of every factor map.
std::vector<SampledPair> sample_pairs(Rng& rng, std::size_t per_system) {
  std::vector<SampledPair> out;
  for (const auto& id : SystemRegistry::global().ids()) {
    const System& sys = system_by_id(id);
    for (std::size_t i = 0; i < per_system; ++i) out.push_back({&sys, sys.random_point(rng), sys.random_point(rng)});
  }
  for (const auto& id : FactorMapRegistry::global().ids()) {
    const auto m = FactorMapRegistry::global().get(id);
    for (const PointPair& p : m->sampler().sample_pairs(rng, per_system / 2 + 1)) {
      out.push_back({&m->source(), p.x, p.y});
    }
  }
  return out;
}

std::string describe(const SampledPair& p) {
  return p.system->id() + " (" + p.system->format_point(p.x) + ", " + p.system->format_point(p.y) + ")";
}

const std::vector<FolnerSchedule>& schedules() {
  static const std::vector<FolnerSchedule> s{default_schedule(8), default_schedule(7, WindowFamily::one_sided)};
  return s;
}

}  // namespace

SuiteResult estimator_symmetry(std::uint64_t seed) {
  SuiteResult r{"estimator symmetry", 0, {}};
  Rng rng(seed);
  for (const SampledPair& p : sample_pairs(rng, 8)) {
    for (const FolnerSchedule& s : schedules()) {
      const PairEstimates a = estimate_pair(*p.system, p.x, p.y, s);
      const PairEstimates b = estimate_pair(*p.system, p.y, p.x, s);
      const bool same = a.check.value == b.check.value && a.hat.value == b.hat.value &&
                        a.besicovitch.value == b.besicovitch.value && a.weyl.value == b.weyl.value;
      const double da = banach_density_estimate(*p.system, p.x, p.y, 0.1, s).value;
      const double db = banach_density_estimate(*p.system, p.y, p.x, 0.1, s).value;
      record(r, same && da == db, describe(p));
    }
  }
  return r;
}

SuiteResult window_lattice(std::uint64_t seed) {
  SuiteResult r{"window min <= average <= max", 0, {}};
  Rng rng(seed);
  for (const SampledPair& p : sample_pairs(rng, 8)) {
    for (const FolnerSchedule& s : schedules()) {
      const DistanceSeries series = DistanceSeries::for_schedule(*p.system, p.x, p.y, s);
      for (const FolnerWindow& w : s.windows()) {
        for (std::int64_t t : {std::int64_t{0}, w.size() / 2, -w.size() / 3}) {
          const FolnerWindow f = w.translated(t);
          const double avg = series.window_average(f);
          record(r, series.window_min(f) <= avg && avg <= series.window_max(f), describe(p));
        }
      }
    }
  }
  return r;
}

SuiteResult weyl_dominates_besicovitch(std::uint64_t seed) {
  SuiteResult r{"weyl >= besicovitch", 0, {}};
  Rng rng(seed);
  for (const SampledPair& p : sample_pairs(rng, 8)) {
    for (const FolnerSchedule& s : schedules()) {
      const PairEstimates e = estimate_pair(*p.system, p.x, p.y, s);
      bool ok = e.weyl.value >= e.besicovitch.value;
      for (std::size_t n = 0; n < s.size(); ++n) ok = ok && e.weyl.per_window[n].value >= e.besicovitch.per_window[n].value;
      record(r, ok, describe(p));
    }
  }
  return r;
}

SuiteResult window_triangle_inequality(std::uint64_t seed) {
  SuiteResult r{"fixed-window triangle inequality", 0, {}};
  Rng rng(seed);
  for (const auto& id : SystemRegistry::global().ids()) {
    const System& sys = system_by_id(id);
    // Floating systems round each Euclidean distance; allow 1e-12 per summand.
    const double per_point = sys.exact() ? 0.0 : 1e-12;
    for (int i = 0; i < 12; ++i) {
      const Point x = sys.random_point(rng);
      const Point y = sys.random_point(rng);
      const Point z = i % 3 == 0 ? x : sys.random_point(rng);
      for (const FolnerSchedule& s : schedules()) {
        const FolnerWindow range = s.hull(false);
        const auto xy = DistanceSeries::compute(sys, x, y, range);
        const auto yz = DistanceSeries::compute(sys, y, z, range);
        const auto xz = DistanceSeries::compute(sys, x, z, range);
        for (const FolnerWindow& w : s.windows()) {
          ExactSum bound = xy.window_sum(w) + yz.window_sum(w);
          bound.add(per_point * static_cast<double>(w.size()));
          record(r, xz.window_sum(w) <= bound, id + " window " + std::to_string(w.size()));
        }
        // The tail-max aggregate follows window by window at the maximiser.
        const auto exz = besicovitch_from(xz, s);
        const auto exy = besicovitch_from(xy, s);
        const auto eyz = besicovitch_from(yz, s);
        const std::size_t n = exz.achieving_window;
        record(r, exy.value >= exy.per_window[n].value && eyz.value >= eyz.per_window[n].value &&
                      exz.value == exz.per_window[n].value,
               id + " tail aggregate");
      }
    }
  }
  return r;
}

SuiteResult translation_consistency(std::uint64_t seed) {
  SuiteResult r{"translation consistency", 0, {}};
  Rng rng(seed);
  std::uniform_int_distribution<std::int64_t> shift(-300, 300);
  for (const SampledPair& p : sample_pairs(rng, 8)) {
    for (std::int64_t len : {1, 17, 200}) {
      const std::int64_t g = shift(rng);
      const FolnerWindow f(-len / 2, len - len / 2 - 1);
      const Point gx = p.system->act(p.x, {g});
      const Point gy = p.system->act(p.y, {g});
      const double moved = DistanceSeries::compute(*p.system, gx, gy, f).window_average(f);
      const FolnerWindow fg = f.translated(g);
      const double shifted = DistanceSeries::compute(*p.system, p.x, p.y, fg).window_average(fg);
      record(r, moved == shifted, describe(p) + " g=" + std::to_string(g));
    }
  }
  return r;
}

SuiteResult domination_slack(std::uint64_t seed, std::size_t inputs) {
  SuiteResult r{"domination slack >= 0", 0, {}};
  Rng rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const System& rot = system_by_id(ids::kRotation);
  const System& shells = system_by_id(ids::kShells);
  for (std::size_t i = 0; i < inputs; ++i) {
    const bool on_circle = i % 2 == 0;
    const System& sys = on_circle ? rot : shells;
    auto coordinate = [on_circle](const Point& p) {
      return on_circle ? state_of<GoldenPhase>(p).value() : shell_angle(state_of<ShellState>(p)) / (2 * std::numbers::pi);
    };
    const int M = 1 + static_cast<int>(rng() % 5);
    FunctionFamily f;
    FunctionFamily h;
    f.system = h.system = sys.id();
    for (int m = 0; m < M; ++m) {
      const double amp = std::fabs(u(rng));
      const double phase = u(rng) * std::numbers::pi;
      const double freq = 1.0 + static_cast<double>(rng() % 4);
      const double eps = 0.3 * u(rng);
      f.functions.push_back([=](const Point& p) { return amp * std::cos(2 * std::numbers::pi * freq * coordinate(p) + phase); });
      h.functions.push_back([=](const Point& p) {
        return std::clamp(amp * std::cos(2 * std::numbers::pi * freq * coordinate(p) + phase) + eps * std::sin(coordinate(p)), -1.0, 1.0);
      });
    }
    const std::int64_t lo = static_cast<std::int64_t>(rng() % 200) - 100;
    const FolnerWindow w(lo, lo + static_cast<std::int64_t>(rng() % 64));
    const DominationResult d = domination_check(sys, sys.random_point(rng), sys.random_point(rng), f, h, w, M);
    record(r, d.exact_slack.sign() >= 0 && d.slack >= 0.0 && d.lhs <= d.rhs, sys.id() + " input " + std::to_string(i));
  }
  return r;
}

SuiteResult lifted_monotonicity(std::uint64_t seed, std::size_t pairs) {
  SuiteResult r{"lifted-metric downstream monotonicity", 0, {}};
  Rng rng(seed);
  const auto ids_list = FactorMapRegistry::global().ids();
  const FolnerSchedule s = default_schedule(7);
  for (std::size_t i = 0; i < pairs; ++i) {
    const auto pi = FactorMapRegistry::global().get(ids_list[i % ids_list.size()]);
    const auto lifted = lift_metric(pi);
    Point x = pi->source().random_point(rng);
    Point y = pi->source().random_point(rng);
    if (i % 3 == 0) {
      const auto fibre = pi->sampler().sample_pairs(rng, 1);
      if (!fibre.empty()) {
        x = fibre.front().x;
        y = fibre.front().y;
      }
    }
    const auto up = weyl_estimate(*lifted, x, y, s);
    const auto down = weyl_estimate(pi->target(), pi->apply(x), pi->apply(y), s);
    bool ok = down.value <= up.value;
    for (std::size_t n = 0; n < s.size(); ++n) ok = ok && down.per_window[n].value <= up.per_window[n].value;
    record(r, ok, pi->id() + " pair " + std::to_string(i));
  }
  return r;
}

SuiteResult verdict_lattice(std::uint64_t seed) {
  SuiteResult r{"verdict lattice implications", 0, {}};
  Rng rng(seed);
  const Tolerances tol;
  const FolnerSchedule s = default_schedule(8);
  for (const auto& id : FactorMapRegistry::global().ids()) {
    const auto pi = FactorMapRegistry::global().get(id);
    auto pairs = pi->sampler().sample_pairs(rng, 6);
    for (int i = 0; i < 3; ++i) {
      const Point x = pi->source().random_point(rng);
      pairs.push_back({x, i == 0 ? x : pi->source().random_point(rng), "random"});
    }
    for (const PointPair& p : pairs) {
      const PairVerdict with_map = classify_pair(pi->source(), p.x, p.y, pi.get(), tol, s);
      const PairVerdict bare = classify_pair(pi->source(), p.x, p.y, nullptr, tol, s);
      const bool diag_ok = !(p.x == p.y) || with_map.has(PairClass::diagonal);
      record(r, with_map.respects_lattice() && bare.respects_lattice() && diag_ok, id + " " + p.label);
    }
  }
  return r;
}

std::vector<std::function<SuiteResult(std::uint64_t)>> all_suites() {
  return {estimator_symmetry,
          window_lattice,
          weyl_dominates_besicovitch,
          window_triangle_inequality,
          translation_consistency,
          [](std::uint64_t seed) { return domination_slack(seed); },
          [](std::uint64_t seed) { return lifted_monotonicity(seed); },
          verdict_lattice};
}

}  // namespace meqlab::testing
