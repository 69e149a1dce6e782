#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "meqlab/chains.hpp"
#include "meqlab/errors.hpp"
#include "meqlab/registry.hpp"
#include "meqlab/relations.hpp"
#include "meqlab/systems.hpp"

namespace meqlab {
namespace {

const FactorMap& map(const std::string& id) { return *FactorMapRegistry::global().get(id); }

// Long windows only, so the shell passage is a vanishing fraction.
FolnerSchedule shell_schedule() { return dyadic_schedule(10, 16); }

TEST(Tolerances, Ordering) {
  EXPECT_NO_THROW(Tolerances{}.validate());
  EXPECT_THROW((Tolerances{0.2, 0.1}.validate()), PreconditionError);
  EXPECT_THROW((Tolerances{0.0, 0.1}.validate()), PreconditionError);
  EXPECT_THROW((Tolerances{0.1, 0.1}.validate()), PreconditionError);
}

TEST(ClassifyPair, ThueMorseNegationUnderPhiIsDistal) {
  const System& sys = system_by_id(ids::kThueMorse);
  const Point x = sys.parse_point("9:primed@0");
  const Point xb{ids::kThueMorse, thue_morse_negation(state_of<ThueMorseState>(x))};
  const PairVerdict v = classify_pair(x, xb, &map("tm.phi"), Tolerances{}, default_schedule(10));
  EXPECT_TRUE(v.in_R_pi);
  EXPECT_TRUE(v.has(PairClass::distal));
  EXPECT_EQ(v.check_val, 1.0);
  EXPECT_FALSE(v.has(PairClass::proximal));
  EXPECT_TRUE(v.respects_lattice());
}

TEST(ClassifyPair, ThueMorsePiFibreIsProximalNotBanachProximal) {
  const auto fibre = thue_morse_fibre(3, 1);
  const PairVerdict v = classify_pair(fibre[0], fibre[2], &map("tm.pi"), Tolerances{}, default_schedule(10));
  EXPECT_TRUE(v.in_R_pi);
  EXPECT_TRUE(v.has(PairClass::proximal));
  EXPECT_FALSE(v.has(PairClass::banach_proximal));
  // The pair agrees only left of the split near the address, so the best
  // translate of the largest window loses at most a few coordinates.
  EXPECT_GE(v.weyl_val, 1.0 - 8.0 / 2049.0);
  EXPECT_TRUE(v.respects_lattice());
}

TEST(ClassifyPair, DiagonalIsBanachProximal) {
  const Point x = system_by_id(ids::kSturmian).parse_point("2/7+3a");
  const PairVerdict v = classify_pair(x, x, nullptr, Tolerances{}, default_schedule(5));
  EXPECT_TRUE(v.has(PairClass::diagonal));
  EXPECT_TRUE(v.has(PairClass::banach_proximal));
  EXPECT_TRUE(v.has(PairClass::proximal));
  EXPECT_TRUE(v.respects_lattice());
}

TEST(ClassifyPair, SymmetricAndOutsideFibre) {
  const System& sys = system_by_id(ids::kThueMorse);
  const Point x = sys.parse_point("1@0");
  const Point y = sys.parse_point("2@1");
  const PairVerdict a = classify_pair(x, y, &map("tm.pi"), Tolerances{}, default_schedule(6));
  const PairVerdict b = classify_pair(y, x, &map("tm.pi"), Tolerances{}, default_schedule(6));
  EXPECT_FALSE(a.in_R_pi);
  EXPECT_EQ(a.weyl_val, b.weyl_val);
  EXPECT_EQ(a.check_val, b.check_val);
  EXPECT_EQ(a.classes, b.classes);
  EXPECT_THROW((void)classify_pair(x, y, nullptr, Tolerances{0.5, 0.1}, default_schedule(3)), PreconditionError);
}

TEST(ClassifyPair, InconclusiveBetweenTolerances) {
  PairEstimates e;
  e.check.value = 0.05;
  e.weyl.value = 0.5;
  const PairVerdict v = verdict_from(e, false, true, Tolerances{});
  EXPECT_EQ(v.classes, std::vector<PairClass>{PairClass::inconclusive});
}

TEST(Asymptotic, ConstantDiagonalSequence) {
  const Point x = system_by_id(ids::kShells).parse_point("3:1.0");
  PairSequence seq;
  seq.pairs.assign(6, PointPair{x, x, "diag"});
  const AsymptoticResult r = is_asymptotically_banach_proximal(system_by_id(ids::kShells), seq, Tolerances{},
                                                               default_schedule(6));
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.weyl_series.size(), 6u);
  EXPECT_EQ(r.tail_begin, 3u);
}

PairSequence shell_sequence(double t1, double t2) {
  const System& sys = system_by_id(ids::kShells);
  PairSequence seq;
  for (int k = 1; k <= 8; ++k) {
    seq.pairs.push_back({sys.parse_point(std::to_string(k) + ":" + std::to_string(t1)),
                         sys.parse_point(std::to_string(k) + ":" + std::to_string(t2)), "k=" + std::to_string(k)});
  }
  seq.limit = PointPair{sys.parse_point("inf:" + std::to_string(t1)), sys.parse_point("inf:" + std::to_string(t2)),
                        "limit"};
  return seq;
}

TEST(Asymptotic, ShellSequenceIsAsymptoticallyBanachProximal) {
  const System& sys = system_by_id(ids::kShells);
  const PairSequence seq = shell_sequence(1.0, 4.0);
  const AsymptoticResult r = is_asymptotically_banach_proximal(sys, seq, Tolerances{}, shell_schedule());
  EXPECT_TRUE(r.holds);
  for (double w : r.weyl_series) EXPECT_LT(w, 0.05);
  const PairVerdict limit = classify_pair(seq.limit->x, seq.limit->y, &map("ex62.pi"), Tolerances{}, shell_schedule());
  EXPECT_FALSE(limit.has(PairClass::banach_proximal));
  EXPECT_EQ(limit.weyl_val, sys.dist(seq.limit->x, seq.limit->y));
}

TEST(PropertyM, HoldsForExample62) {
  const PropertyMReport r = test_property_M(map("ex62.pi"), Tolerances{}, shell_schedule(), 21);
  EXPECT_TRUE(r.holds) << r.note;
  EXPECT_EQ(r.note, "no violation found at tolerances");
  EXPECT_GT(r.pairs_tested, 0u);
  EXPECT_EQ(r.samples.size(), r.pairs_tested);
}

TEST(PropertyM, HoldsForThueMorsePhi) {
  const PropertyMReport r = test_property_M(map("tm.phi"), Tolerances{}, default_schedule(10), 4);
  EXPECT_TRUE(r.holds);
}

FactorMap broken_map() {
  FibreSampler s;
  s.pairs = [](Rng&, std::size_t) {
    const System& sys = system_by_id(ids::kThueMorse);
    return std::vector<PointPair>{{sys.parse_point("0@0"), sys.parse_point("5@0"), "not a fibre pair"}};
  };
  return FactorMap("broken", SystemRegistry::global().get(ids::kThueMorse),
                   SystemRegistry::global().get(ids::kOdometer),
                   [](const Point& x) { return map("tm.pi").apply(x); }, true, s);
}

TEST(PropertyM, BrokenSamplerIsRejected) {
  EXPECT_THROW((void)test_property_M(broken_map(), Tolerances{}, default_schedule(4), 1), PreconditionError);
}

TEST(PropertyM, DeterministicForFixedSeed) {
  const auto a = test_property_M(map("tm.psi"), Tolerances{}, default_schedule(8), 99, 6);
  const auto b = test_property_M(map("tm.psi"), Tolerances{}, default_schedule(8), 99, 6);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].estimate, b.samples[i].estimate);
    EXPECT_EQ(a.samples[i].pair.label, b.samples[i].pair.label);
  }
}

TEST(MeanEquicontinuity, Example62FailsWithShellWitness) {
  const auto r = test_mean_equicontinuity(map("ex62.pi"), Tolerances{}, shell_schedule(), 5);
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.direction_failed.has_value());
  EXPECT_EQ(*r.direction_failed, MeqDirection::sequence_abp_but_limit_not_bp);
  ASSERT_FALSE(r.witnesses.empty());
  EXPECT_TRUE(r.witnesses.front().sequence.holds);
  EXPECT_FALSE(r.witnesses.front().limit_bp);
}

TEST(MeanEquicontinuity, ThueMorsePiFails) {
  const auto r = test_mean_equicontinuity(map("tm.pi"), Tolerances{}, default_schedule(12), 5);
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.direction_failed.has_value());
  EXPECT_EQ(*r.direction_failed, MeqDirection::limit_bp_but_sequence_not_abp);
}

TEST(MeanEquicontinuity, SturmianToRotationHolds) {
  const auto r = test_mean_equicontinuity(map("sturm.phi"), Tolerances{}, default_schedule(16), 5);
  EXPECT_TRUE(r.holds);
  EXPECT_FALSE(r.direction_failed.has_value());
}

TEST(MeanEquicontinuity, SequencesNeedLimits) {
  FibreSampler s;
  s.sequences = [](Rng&, std::size_t) {
    const Point x = system_by_id(ids::kThueMorse).parse_point("0@0");
    PairSequence seq;
    seq.pairs = {{x, x, "diag"}};
    seq.label = "no limit";
    return std::vector<PairSequence>{seq};
  };
  const FactorMap m("limitless", SystemRegistry::global().get(ids::kThueMorse),
                    SystemRegistry::global().get(ids::kThueMorse), [](const Point& x) { return x; }, true, s);
  EXPECT_THROW((void)test_mean_equicontinuity(m, Tolerances{}, default_schedule(3), 1), PreconditionError);
}

TEST(RegionalWitness, LimitCirclePairFindsShellWitness) {
  const System& sys = system_by_id(ids::kShells);
  const Point x = sys.parse_point("inf:1.0");
  const Point y = sys.parse_point("inf:4.0");
  const auto r = regional_witness_search(x, y, map("ex62.pi"), 0.25, Tolerances{}, shell_schedule(), 3);
  ASSERT_TRUE(r.witness.has_value()) << r.note;
  EXPECT_EQ(r.witness->kind, RelationWitnessKind::regionally_banach_proximal);
  EXPECT_LE(r.witness->pair_distance, 0.25);
  EXPECT_NE(state_of<ShellState>(r.witness->pair.x).level, kLimitLevel);
}

TEST(RegionalWitness, DiagonalIsItsOwnWitness) {
  const Point x = system_by_id(ids::kThueMorse).parse_point("4@1");
  const auto r = regional_witness_search(x, x, map("tm.phi"), 0.1, Tolerances{}, default_schedule(4), 1);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->pair.x, x);
  EXPECT_EQ(r.witness->pair_distance, 0.0);
}

TEST(RegionalWitness, ThueMorseNegationHasNoWitness) {
  const Point x = system_by_id(ids::kThueMorse).parse_point("4@1");
  const Point xb{ids::kThueMorse, thue_morse_negation(state_of<ThueMorseState>(x))};
  const auto r = regional_witness_search(x, xb, map("tm.phi"), 0.25, Tolerances{}, default_schedule(8), 1);
  EXPECT_FALSE(r.witness.has_value());
  EXPECT_FALSE(r.note.empty());
  EXPECT_THROW((void)regional_witness_search(x, xb, map("tm.phi"), 0.0, Tolerances{}, default_schedule(3), 1),
               PreconditionError);
}

TEST(EmpiricalMeasure, ConstantFunction) {
  const System& sys = system_by_id(ids::kSturmian);
  const auto v = empirical_measure(sys, sys.parse_point("1/3"), FolnerWindow(-100, 100),
                                   {[](const Point&) { return 1.0; }});
  EXPECT_EQ(v, std::vector<double>{1.0});
}

TEST(EmpiricalMeasure, GoldenRotationArc) {
  const System& rot = system_by_id(ids::kRotation);
  // Indicator of [0.25, 0.5) with linear ramps of width 0.01; integral 0.25.
  auto arc = [](const Point& p) {
    const double t = state_of<GoldenPhase>(p).value();
    auto ramp = [](double s) { return std::clamp(s / 0.01 + 0.5, 0.0, 1.0); };
    return std::min(ramp(t - 0.25), ramp(0.5 - t));
  };
  const std::int64_t L = std::int64_t{1} << 16;
  const auto v = empirical_measure(rot, rot.parse_point("1/7"), FolnerWindow(-L, L), {arc});
  EXPECT_NEAR(v[0], 0.25, 0.02);
}

TEST(EmpiricalMeasure, FixedPointOfShells) {
  const System& sys = system_by_id(ids::kShells);
  auto f = [](const Point& p) { return std::cos(shell_angle(state_of<ShellState>(p))) * 0.5; };
  const auto v = empirical_measure(sys, sys.parse_point("3:0"), FolnerWindow(-500, 500), {f});
  EXPECT_EQ(v[0], 0.5);
}

}  // namespace
}  // namespace meqlab
