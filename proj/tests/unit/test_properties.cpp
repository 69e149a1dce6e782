#include <gtest/gtest.h>

#include "../support/property_suites.hpp"

namespace meqlab::testing {
namespace {

void expect_clean(const SuiteResult& r) {
  EXPECT_GT(r.checks, 0u) << r.name;
  for (const std::string& f : r.failures) ADD_FAILURE() << r.name << ": " << f;
}

TEST(Properties, EstimatorSymmetry) { expect_clean(estimator_symmetry(1)); }
TEST(Properties, WindowLattice) { expect_clean(window_lattice(2)); }
TEST(Properties, WeylDominatesBesicovitch) { expect_clean(weyl_dominates_besicovitch(3)); }
TEST(Properties, WindowTriangleInequality) { expect_clean(window_triangle_inequality(4)); }
TEST(Properties, TranslationConsistency) { expect_clean(translation_consistency(5)); }
TEST(Properties, DominationSlack) {
  const SuiteResult r = domination_slack(6);
  EXPECT_EQ(r.checks, 200u);
  expect_clean(r);
}
TEST(Properties, LiftedMonotonicity) {
  const SuiteResult r = lifted_monotonicity(7);
  EXPECT_EQ(r.checks, 200u);
  expect_clean(r);
}
TEST(Properties, VerdictLattice) { expect_clean(verdict_lattice(8)); }

}  // namespace
}  // namespace meqlab::testing
