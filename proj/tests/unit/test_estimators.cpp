#include <gtest/gtest.h>

#include <cmath>

#include "meqlab/chains.hpp"
#include "meqlab/errors.hpp"
#include "meqlab/estimators.hpp"
#include "meqlab/registry.hpp"
#include "meqlab/systems.hpp"

namespace meqlab {
namespace {

Point tm_point(const std::string& literal) { return system_by_id(ids::kThueMorse).parse_point(literal); }

Point negation(const Point& x) {
  return Point{ids::kThueMorse, thue_morse_negation(state_of<ThueMorseState>(x))};
}

TEST(Besicovitch, ZeroOnDiagonal) {
  Rng rng(1);
  for (const auto& id : SystemRegistry::global().ids()) {
    const System& sys = system_by_id(id);
    const Point x = sys.random_point(rng);
    const auto e = besicovitch_estimate(sys, x, x, default_schedule(6));
    EXPECT_EQ(e.value, 0.0) << id;
    for (const auto& w : e.per_window) EXPECT_EQ(w.value, 0.0);
  }
}

TEST(Besicovitch, ThueMorseNegationIsOneAtEveryWindow) {
  const Point x = tm_point("-17:primed@1");
  const auto e = besicovitch_estimate(x, negation(x), default_schedule(10));
  EXPECT_EQ(e.value, 1.0);
  for (const auto& w : e.per_window) EXPECT_EQ(w.value, 1.0);
}

TEST(Besicovitch, RotationPairIsConstant) {
  const System& rot = system_by_id(ids::kRotation);
  const auto e = besicovitch_estimate(rot, rot.parse_point("0/1"), rot.parse_point("1/10"), default_schedule(8));
  for (const auto& w : e.per_window) EXPECT_DOUBLE_EQ(w.value, 0.1);
  EXPECT_DOUBLE_EQ(e.value, 0.1);
}

TEST(Besicovitch, ValueIsTailMaximum) {
  const System& sys = system_by_id(ids::kInterval);
  const FolnerSchedule s = default_schedule(8);
  const auto e = besicovitch_estimate(sys, sys.parse_point("0.3:hat"), sys.parse_point("0.3:check"), s);
  double m = 0.0;
  for (std::size_t i = s.tail_begin(); i < s.size(); ++i) m = std::max(m, e.per_window[i].value);
  EXPECT_EQ(e.value, m);
  EXPECT_EQ(e.schedule_label, s.label());
}

TEST(Weyl, DominatesBesicovitch) {
  Rng rng(2);
  for (const auto& id : SystemRegistry::global().ids()) {
    const System& sys = system_by_id(id);
    for (int i = 0; i < 5; ++i) {
      const Point x = sys.random_point(rng);
      const Point y = sys.random_point(rng);
      const FolnerSchedule s = default_schedule(7);
      const auto w = weyl_estimate(sys, x, y, s);
      const auto b = besicovitch_estimate(sys, x, y, s);
      EXPECT_GE(w.value, b.value) << id;
      for (std::size_t n = 0; n < s.size(); ++n) EXPECT_GE(w.per_window[n].value, b.per_window[n].value);
      ASSERT_TRUE(w.achieving_translate.has_value());
      EXPECT_LE(std::llabs(w.achieving_translate->value), s.radius(w.achieving_window));
    }
  }
}

TEST(Weyl, Example61PointThree) {
  const System& sys = system_by_id(ids::kInterval);
  const auto e = weyl_estimate(sys, sys.parse_point("0.3:hat"), sys.parse_point("0.3:check"),
                               default_schedule(14, WindowFamily::one_sided));
  EXPECT_NEAR(e.value, 2.0 / 3.0, 0.05 * 2.0 / 3.0);
}

TEST(Weyl, Example62ShellOne) {
  const System& sys = system_by_id(ids::kShells);
  const auto e = weyl_estimate(sys, sys.parse_point("1:1.0"), sys.parse_point("1:4.0"), default_schedule(16));
  EXPECT_LT(e.value, 0.05);
}

TEST(Weyl, LimitCircleEqualsDistance) {
  const System& sys = system_by_id(ids::kShells);
  const Point a = sys.parse_point("inf:0.5");
  const Point b = sys.parse_point("inf:2.0");
  EXPECT_EQ(weyl_estimate(sys, a, b, default_schedule(8)).value, sys.dist(a, b));
}

TEST(Weyl, BoundaryDiagnostic) {
  // Increasing distances put the sup on the edge of the translate range.
  const FolnerSchedule s = default_schedule(2);
  const FolnerWindow range = s.hull(true);
  std::vector<double> values;
  for (std::int64_t g = range.lo(); g <= range.hi(); ++g) values.push_back(static_cast<double>(g - range.lo()) / 16.0);
  const auto e = weyl_from(DistanceSeries(range, values), s);
  EXPECT_TRUE(e.boundary_hit);
  ASSERT_TRUE(e.achieving_translate.has_value());
  EXPECT_EQ(e.achieving_translate->value, s.radius(e.achieving_window));

  const DistanceSeries flat(range, std::vector<double>(values.size(), 0.25));
  EXPECT_FALSE(weyl_from(flat, s).boundary_hit);
}

TEST(HatCheck, Example61HatIsTwoThirds) {
  const System& sys = system_by_id(ids::kInterval);
  const auto e = hat_estimate(sys, sys.parse_point("0.3:hat"), sys.parse_point("0.3:check"),
                              default_schedule(14, WindowFamily::one_sided));
  EXPECT_NEAR(e.value, 2.0 / 3.0, 1e-3);
  EXPECT_LE(e.value, 2.0 / 3.0);
  EXPECT_TRUE(e.one_sided_bound);
}

TEST(HatCheck, ThueMorsePiFibreCheckShrinksWithWindow) {
  // alpha.beta versus alpha.beta-bar over address 0 agree left of 1 and
  // differ right of it, so shifting by -K leaves distance 2^-(K+1).
  const auto fibre = thue_morse_fibre(0, 0);
  const Point& x = fibre[0];
  const Point& y = fibre[2];
  ASSERT_TRUE(FactorMapRegistry::global().get("tm.pi")->same_fibre(x, y, 1e-2));
  for (std::int64_t K : {1, 4, 32, 512}) {
    const FolnerSchedule s({FolnerWindow(-K, 0)}, {0});
    const double v = check_estimate(system_by_id(ids::kThueMorse), x, y, s).value;
    EXPECT_LE(v, std::ldexp(1.0, -static_cast<int>(K))) << K;
    EXPECT_EQ(v, std::ldexp(1.0, -static_cast<int>(K) - 1)) << K;
  }
  EXPECT_EQ(check_estimate(x, x, default_schedule(3)).value, 0.0);
}

TEST(HatCheck, CheckIsMinAndHatIsMaxOverUnion) {
  const System& sys = system_by_id(ids::kShells);
  const Point a = sys.parse_point("2:1.0");
  const Point b = sys.parse_point("2:3.0");
  const FolnerSchedule s = default_schedule(6);
  const auto d = sys.orbit_distances(a, b, -64, 64);
  EXPECT_EQ(check_estimate(sys, a, b, s).value, *std::min_element(d.begin(), d.end()));
  EXPECT_EQ(hat_estimate(sys, a, b, s).value, *std::max_element(d.begin(), d.end()));
}

TEST(BanachDensity, Examples) {
  const Point x = tm_point("3@1");
  EXPECT_EQ(banach_density_estimate(x, x, 0.01, default_schedule(6)).value, 1.0);
  EXPECT_EQ(banach_density_estimate(x, negation(x), 0.5, default_schedule(6)).value, 0.0);
  EXPECT_THROW((void)banach_density_estimate(x, x, 0.0, default_schedule(3)), PreconditionError);
  EXPECT_THROW((void)banach_density_estimate(x, x, -1.0, default_schedule(3)), PreconditionError);
}

TEST(BanachDensity, SturmianFibrePair) {
  const System& sys = system_by_id(ids::kSturmian);
  const auto e = banach_density_estimate(sys, sys.parse_point("0/1+5a"), sys.parse_point("0/1+5a:upper"), 0.1,
                                         default_schedule(16));
  EXPECT_GE(e.value, 0.95);
  EXPECT_LE(e.value, 1.0);
}

TEST(Estimators, CrossSystemPairThrows) {
  const Point x = tm_point("0@0");
  const Point z = system_by_id(ids::kOdometer).parse_point("0");
  EXPECT_THROW((void)weyl_estimate(x, z, default_schedule(3)), CrossSystemError);
  EXPECT_THROW((void)check_estimate(x, z, default_schedule(3)), CrossSystemError);
}

TEST(Estimators, ValuesWithinDiameter) {
  Rng rng(6);
  for (const auto& id : SystemRegistry::global().ids()) {
    const System& sys = system_by_id(id);
    for (int i = 0; i < 4; ++i) {
      const Point x = sys.random_point(rng);
      const Point y = sys.random_point(rng);
      const auto e = estimate_pair(sys, x, y, default_schedule(6));
      for (const auto* est : {&e.check, &e.hat, &e.besicovitch, &e.weyl}) {
        EXPECT_GE(est->value, 0.0);
        EXPECT_LE(est->value, sys.diameter()) << id << " " << to_string(est->kind);
      }
      EXPECT_LE(e.check.value, e.besicovitch.value);
    }
  }
}

TEST(DistanceSeries, RejectsWindowsOutsideRange) {
  const DistanceSeries s(FolnerWindow(-2, 2), {0.0, 1.0, 0.5, 1.0, 0.0});
  EXPECT_EQ(s.at(-1), 1.0);
  EXPECT_EQ(s.window_average(FolnerWindow(-2, 2)), 0.5);
  EXPECT_EQ(s.window_min(FolnerWindow(-1, 1)), 0.5);
  EXPECT_THROW((void)s.window_average(FolnerWindow(-3, 0)), PreconditionError);
  EXPECT_THROW(DistanceSeries(FolnerWindow(0, 3), {1.0}), PreconditionError);
}

}  // namespace
}  // namespace meqlab
