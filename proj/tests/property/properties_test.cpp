// Seeded randomized properties of the classifier and the explicit scheme.

#include <random>

#include <gtest/gtest.h>

#include "../support/property_checks.hpp"
#include "pfront/model.hpp"
#include "pfront/pde.hpp"

namespace pfront {
namespace {

using pfront::testing::PropertyOutcome;

constexpr std::uint64_t kSeed = 20240611;

TEST(ClassifyProperty, PartitionIsExhaustiveAndExclusive) {
  const PropertyOutcome out = pfront::testing::classify_partition(kSeed, 10000);
  EXPECT_TRUE(out.pass) << out.detail;
}

TEST(ClassifyProperty, SubcaseFlipsAtCriticalConstant) {
  std::mt19937_64 rng(kSeed + 1);
  for (int k = 0; k < 200; ++k) {
    ProblemParams pr;
    pr.p = std::uniform_real_distribution<double>(2.2, 5.0)(rng);
    pr.beta = std::uniform_real_distribution<double>(0.05, 0.95)(rng);
    pr.b = std::uniform_real_distribution<double>(0.1, 4.0)(rng);
    pr.alpha = borderline_alpha(pr.p, pr.beta);
    const double cs = critical_constant(pr);
    pr.C = cs * (1 - 1e-9);
    EXPECT_EQ(classify(pr).subcase, Subcase::R2_below_critical);
    pr.C = cs * (1 + 1e-9);
    EXPECT_EQ(classify(pr).subcase, Subcase::R2_above_critical);
    pr.C = cs;
    EXPECT_EQ(classify(pr).subcase, Subcase::R2_at_critical);
  }
}

TEST(SchemeProperty, ComparisonOfOrderedPairs) {
  const PropertyOutcome out = pfront::testing::comparison_pairs(kSeed + 2, 100, 200);
  EXPECT_TRUE(out.pass) << out.detail;
}

TEST(SchemeProperty, NonNegativity) {
  const PropertyOutcome out = pfront::testing::non_negativity(kSeed + 3, 100, 200);
  EXPECT_TRUE(out.pass) << out.detail;
}

TEST(SchemeProperty, MassConservationWithoutAbsorption) {
  const PropertyOutcome out = pfront::testing::mass_conservation(kSeed + 4, 20, 0.1, 1e-8);
  EXPECT_TRUE(out.pass) << out.detail;
}

TEST(SchemeProperty, SupportGrowsAtMostOneCellPerStep) {
  std::mt19937_64 rng(kSeed + 5);
  const Grid1D g = make_grid(-1, 1, 100);
  auto edge = [](const Field& f) {
    std::size_t last = 0;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      if (f.values[i] > 0.0) last = i;
    }
    return last;
  };
  for (int k = 0; k < 20; ++k) {
    const ProblemParams pr{std::uniform_real_distribution<double>(2.2, 4.0)(rng), 0.0, 1.0, 1.0, 1.0};
    Field f = pfront::testing::random_bump(rng, g, 1.0);
    for (int s = 0; s < 100; ++s) {
      const std::size_t before = edge(f);
      f = step(f, pr, stable_dt(f, pr), 0.0);
      ASSERT_LE(edge(f), before + 1);
    }
  }
}

}  // namespace
}  // namespace pfront
