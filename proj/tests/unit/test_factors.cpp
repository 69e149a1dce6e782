#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "meqlab/chains.hpp"
#include "meqlab/classification.hpp"
#include "meqlab/errors.hpp"
#include "meqlab/registry.hpp"
#include "meqlab/systems.hpp"

namespace meqlab {
namespace {

std::shared_ptr<const FactorMap> map(const std::string& id) { return FactorMapRegistry::global().get(id); }

FunctionFamily circle_family() {
  FunctionFamily fam;
  fam.system = ids::kRotation;
  fam.functions = {
      [](const Point& p) { return std::cos(2 * std::numbers::pi * state_of<GoldenPhase>(p).value()); },
      [](const Point& p) { return std::sin(2 * std::numbers::pi * state_of<GoldenPhase>(p).value()); }};
  fam.names = {"cos", "sin"};
  fam.separating = true;
  return fam;
}

TEST(Chains, RegisteredIds) {
  for (const char* id : {"tm.phi", "tm.psi", "tm.pi", "sturm.phi"}) {
    EXPECT_TRUE(FactorMapRegistry::global().contains(id)) << id;
  }
  EXPECT_THROW((void)FactorMapRegistry::global().get("tm.chi"), UnknownFactorMapError);
  const auto ids_list = FactorMapRegistry::global().ids();
  EXPECT_TRUE(std::is_sorted(ids_list.begin(), ids_list.end()));
}

TEST(Chains, NegationSharesPhiFibre) {
  const auto phi = map("tm.phi");
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const Point x = phi->source().random_point(rng);
    const Point xb{ids::kThueMorse, thue_morse_negation(state_of<ThueMorseState>(x))};
    EXPECT_EQ(phi->apply(x), phi->apply(xb));
  }
}

TEST(Chains, PsiEquivariance) {
  const auto psi = map("tm.psi");
  Rng rng(32);
  for (int i = 0; i < 100; ++i) {
    const Point y = psi->source().random_point(rng);
    EXPECT_EQ(psi->apply(psi->source().act(y, {1})), psi->target().act(psi->apply(y), {1}));
  }
}

TEST(Chains, EveryMapIsEquivariant) {
  Rng rng(33);
  for (const auto& id : FactorMapRegistry::global().ids()) {
    const auto m = map(id);
    for (int i = 0; i < 30; ++i) {
      const Point x = m->source().random_point(rng);
      const GroupElement g{static_cast<std::int64_t>(rng() % 200) - 100};
      const Point a = m->apply(m->source().act(x, g));
      const Point b = m->target().act(m->apply(x), g);
      if (m->exact()) {
        EXPECT_EQ(a, b) << id;
      } else {
        EXPECT_LT(m->target().dist(a, b), 1e-9) << id;
      }
    }
  }
}

TEST(Chains, PiFibreOverZeroHasFourPoints) {
  const auto fibre = thue_morse_fibre(0);
  ASSERT_EQ(fibre.size(), 4u);
  const auto pi = map("tm.pi");
  for (const Point& p : fibre) EXPECT_EQ(pi->apply(p), pi->apply(fibre[0]));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) EXPECT_NE(fibre[i], fibre[j]);
  }
  EXPECT_TRUE(state_of<DyadicInteger>(pi->apply(fibre[0])).is_zero());
}

TEST(Chains, SturmianPhiEquivariance) {
  const auto phi = map("sturm.phi");
  const Point x = phi->source().parse_point("3/11+4a");
  EXPECT_EQ(state_of<GoldenPhase>(phi->apply(phi->source().act(x, {1}))), GoldenPhase::make(3, 11, 5));
}

TEST(Compose, AssociativeAndChecked) {
  const auto phi = map("tm.phi");
  const auto psi = map("tm.psi");
  const auto id_tm = map("tm.id");
  const auto left = compose(compose(psi, phi), id_tm);
  const auto right = compose(psi, compose(phi, id_tm));
  Rng rng(34);
  for (int i = 0; i < 50; ++i) {
    const Point x = phi->source().random_point(rng);
    EXPECT_EQ(left->apply(x), right->apply(x));
    EXPECT_EQ(left->apply(x), map("tm.pi")->apply(x));
  }
  EXPECT_THROW((void)compose(phi, psi), CompositionMismatchError);
}

TEST(DFamily, Examples) {
  const FunctionFamily fam = circle_family();
  const System& rot = system_by_id(ids::kRotation);
  const Point a = rot.parse_point("0/1");
  const Point b = rot.parse_point("1/2");
  EXPECT_EQ(d_family(fam, a, a, 2).value, 0.0);
  const FamilyDistance d = d_family(fam, a, b, 2);
  EXPECT_NEAR(d.value, 1.0, 1e-15);
  EXPECT_EQ(d.truncation_bound, 0.0);
  EXPECT_EQ(d_family(fam, a, b, 1).truncation_bound, 1.0);
  EXPECT_THROW((void)d_family(fam, a, b, 0), PreconditionError);
}

TEST(LiftMetric, FibrePairsKeepTheirDistance) {
  const auto phi = map("tm.phi");
  const auto lifted = lift_metric(phi);
  const Point x = phi->source().parse_point("6@0");
  const Point xb{ids::kThueMorse, thue_morse_negation(state_of<ThueMorseState>(x))};
  EXPECT_EQ(lifted->dist(x, xb), phi->source().dist(x, xb));
  EXPECT_EQ(weyl_estimate(*lifted, x, xb, default_schedule(8)).value, 1.0);
  Rng rng(35);
  for (int i = 0; i < 100; ++i) {
    const Point p = phi->source().random_point(rng);
    const Point q = phi->source().random_point(rng);
    EXPECT_GE(lifted->dist(p, q), phi->source().dist(p, q));
  }
}

TEST(Domination, IdenticalFamiliesGiveEquality) {
  const System& rot = system_by_id(ids::kRotation);
  const FunctionFamily fam = circle_family();
  const auto r = domination_check(rot, rot.parse_point("1/5"), rot.parse_point("2/3"), fam, fam,
                                  FolnerWindow(-50, 50), 2);
  EXPECT_EQ(r.lhs, r.rhs);
  EXPECT_TRUE(r.exact_slack.is_zero());
}

TEST(Domination, CosAgainstSin) {
  const System& rot = system_by_id(ids::kRotation);
  FunctionFamily f = circle_family();
  FunctionFamily h = circle_family();
  f.functions.pop_back();
  h.functions.erase(h.functions.begin());
  Rng rng(36);
  const auto r = domination_check(rot, rot.random_point(rng), rot.random_point(rng), f, h, FolnerWindow(-200, 200), 1);
  EXPECT_GE(r.slack, 0.0);
  EXPECT_GE(r.exact_slack.sign(), 0);
}

TEST(Domination, Preconditions) {
  const System& rot = system_by_id(ids::kRotation);
  const FunctionFamily fam = circle_family();
  const Point a = rot.parse_point("0/1");
  EXPECT_THROW((void)domination_check(rot, a, a, fam, fam, FolnerWindow(0, 3), 3), PreconditionError);
  FunctionFamily other = fam;
  other.system = ids::kSturmian;
  EXPECT_THROW((void)domination_check(rot, a, a, fam, other, FolnerWindow(0, 3), 2), PreconditionError);
}

TEST(FunctionFamily, SupNormBound) {
  Rng rng(37);
  EXPECT_LE(sampled_sup_norm(circle_family(), system_by_id(ids::kRotation), rng, 200), 1.0);
}

class ChainClassification : public ::testing::Test {
 protected:
  static FactorMapReport classify(const std::string& id) {
    return classify_factor_map(*map(id), Tolerances{}, default_schedule(16), 7);
  }
};

TEST_F(ChainClassification, PhiIsEquicontinuousAndDistal) {
  const auto r = classify("tm.phi");
  EXPECT_TRUE(r.equicontinuous);
  EXPECT_TRUE(r.distal);
  EXPECT_TRUE(r.banach_distal);
  EXPECT_TRUE(r.mean_equicontinuous);
  EXPECT_TRUE(r.consistent);
}

TEST_F(ChainClassification, PsiIsTopoIsomorphic) {
  const auto r = classify("tm.psi");
  EXPECT_TRUE(r.banach_proximal);
  EXPECT_TRUE(r.proximal);
  EXPECT_TRUE(r.mean_equicontinuous);
  EXPECT_TRUE(r.consistent);
  EXPECT_FALSE(r.criterion.empty());
}

TEST_F(ChainClassification, PiIsBanachDistalButNotDistal) {
  const auto r = classify("tm.pi");
  EXPECT_TRUE(r.banach_distal);
  EXPECT_FALSE(r.distal);
  EXPECT_FALSE(r.mean_equicontinuous);
  EXPECT_FALSE(r.witnesses.empty());
  EXPECT_TRUE(r.consistent);
  for (const PairVerdict& v : r.verdicts) EXPECT_TRUE(v.respects_lattice());
}

// Toeplitz psi-fibres over addresses in the hundreds only drop below zero_tol
// at L = 2^16, so coarser schedules report tm.psi inconsistent.
TEST(Classification, ImplicationsOnEveryRegisteredMap) {
  for (const auto& id : FactorMapRegistry::global().ids()) {
    const FolnerSchedule s = id == "ex62.pi" ? dyadic_schedule(10, 16)
                             : id == "ex61.pi" ? default_schedule(14, WindowFamily::one_sided)
                                               : default_schedule(16);
    const auto r = classify_factor_map(*map(id), Tolerances{}, s, 11, 8);
    if (r.equicontinuous) {
      EXPECT_TRUE(r.mean_equicontinuous) << id;
      EXPECT_TRUE(r.distal) << id;
    }
    if (r.banach_proximal) {
      EXPECT_TRUE(r.proximal) << id;
      EXPECT_TRUE(r.mean_equicontinuous) << id;
    }
    EXPECT_TRUE(r.consistent) << id;
  }
}

TEST(Decomposition, SturmianChainVerifies) {
  const auto r = verify_decomposition(*map("sturm.pi"), *map("sturm.phi"), *map("rot.pt"), Tolerances{},
                                      default_schedule(16), 3, 8);
  EXPECT_TRUE(r.verified);
  EXPECT_TRUE(r.phi.banach_proximal);
  EXPECT_TRUE(r.psi.equicontinuous);
  EXPECT_GT(r.points_checked, 0u);
}

TEST(Decomposition, ThueMorseIdentityThenPiFails) {
  const auto r = verify_decomposition(*map("tm.pi"), *map("tm.id"), *map("tm.pi"), Tolerances{},
                                      default_schedule(12), 3, 8);
  EXPECT_FALSE(r.verified);
  EXPECT_TRUE(r.phi_banach_proximal);
  EXPECT_FALSE(r.psi_equicontinuous);
}

TEST(Decomposition, PiThenIdentityFailsBanachProximality) {
  const auto phi = map("tm.phi");
  const auto id_y = identity_map(phi->target_ptr(), "toeplitz.id");
  const auto r = verify_decomposition(*phi, *phi, *id_y, Tolerances{}, default_schedule(10), 3, 6);
  EXPECT_FALSE(r.verified);
  EXPECT_FALSE(r.phi_banach_proximal);
}

TEST(Decomposition, CompositionMismatch) {
  EXPECT_THROW((void)verify_decomposition(*map("tm.pi"), *map("tm.phi"), *map("rot.pt"), Tolerances{},
                                          default_schedule(4), 1, 2),
               CompositionMismatchError);
}

TEST(Classification, EmptySamplerIsRejected) {
  const FactorMap m("mute", SystemRegistry::global().get(ids::kOdometer), SystemRegistry::global().get(ids::kOdometer),
                    [](const Point& x) { return x; }, true, FibreSampler{});
  EXPECT_THROW((void)classify_factor_map(m, Tolerances{}, default_schedule(3), 1), PreconditionError);
}

}  // namespace
}  // namespace meqlab
