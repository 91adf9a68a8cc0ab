#include <cmath>

#include <gtest/gtest.h>

#include "pfront/error.hpp"
#include "pfront/model.hpp"

namespace pfront {
namespace {

ErrorCode code_of(const ProblemParams& pr) {
  try {
    validate(pr);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::OutOfDomain;
}

TEST(Validate, AcceptsAdmissibleTuple) { EXPECT_NO_THROW(validate({3, 1, 0.5, 1, 1})); }

TEST(Validate, RejectsPEqualTwo) { EXPECT_EQ(code_of({2, 1, 0.5, 1, 1}), ErrorCode::RejectedP2); }

TEST(Validate, RejectsNonPositiveBWithSublinearAbsorption) {
  EXPECT_EQ(code_of({3, -1, 0.5, 1, 1}), ErrorCode::RejectedSignB);
  EXPECT_EQ(code_of({3, 0, 0.5, 1, 1}), ErrorCode::RejectedSignB);
}

TEST(Validate, RejectsNonPositiveRanges) {
  EXPECT_EQ(code_of({1.5, 1, 1, 1, 1}), ErrorCode::RejectedRange);
  EXPECT_EQ(code_of({3, 1, 0, 1, 1}), ErrorCode::RejectedRange);
  EXPECT_EQ(code_of({3, 1, 1, -1, 1}), ErrorCode::RejectedRange);
  EXPECT_EQ(code_of({3, 1, 1, 1, 0}), ErrorCode::RejectedRange);
}

TEST(Classify, RegionOneExpands) {
  const Regime r = classify({3, 1, 0.5, 1, 1});
  EXPECT_EQ(r.region, Region::R1_Expanding);
  EXPECT_DOUBLE_EQ(*r.interface_exponent, 0.5);
}

TEST(Classify, RegionThreeShrinks) {
  const Regime r = classify({3, 1, 0.5, 4, 1});
  EXPECT_EQ(r.region, Region::R3_Shrinking);
  EXPECT_DOUBLE_EQ(*r.interface_exponent, 0.5);
  EXPECT_NEAR(*r.interface_coefficient, -std::sqrt(0.5), 1e-15);
}

TEST(Classify, NegativeBAtBetaEqualPMinusOneIsFourD) {
  const Regime r = classify({3, -1, 2, 5, 1});
  EXPECT_EQ(r.region, Region::R4_Waiting);
  EXPECT_EQ(r.subcase, Subcase::W4d);
}

TEST(Classify, PureDiffusionWaiting) {
  EXPECT_EQ(classify({3, 0, 1, 3, 1.0 / 36}).region, Region::B0_Waiting);
  EXPECT_EQ(classify({3, 0, 1, 4, 1}).region, Region::B0_Stationary);
  EXPECT_EQ(classify({3, 0, 1, 1, 1}).region, Region::B0_Expanding);
}

TEST(Classify, WaitingSubcases) {
  EXPECT_EQ(classify({3, 1, 1, 3, 1}).subcase, Subcase::W4a);
  EXPECT_EQ(classify({3, 1, 1, 4, 1}).subcase, Subcase::W4b);
  EXPECT_EQ(classify({3, 1, 1.5, 6, 1}).subcase, Subcase::W4c);
  EXPECT_EQ(classify({3, 1, 1.5, 4, 1}).subcase, Subcase::W4d);
}

TEST(Classify, BorderlineTiesAreInclusive) {
  // alpha = p/(p-1-beta) = 2.4 for beta = 0.75.
  const Regime r = classify({3, 1, 0.75, 2.4, 1});
  EXPECT_EQ(r.region, Region::R2_Borderline);
  EXPECT_NEAR(*r.interface_exponent, 1.25 / 0.75, 1e-12);
}

TEST(Classify, BorderlineExplicitCoefficient) {
  const Regime r = classify({3, 1, 0.5, 2, 0.5});
  EXPECT_EQ(r.subcase, Subcase::R2_above_critical);
  EXPECT_NEAR(*r.interface_coefficient, 1.2928932188134525, 1e-12);
}

TEST(CriticalConstant, KnownValues) {
  EXPECT_NEAR(critical_constant({3, 1, 0.5, 2, 1}), 0.25, 1e-15);
  EXPECT_NEAR(critical_constant({3, 8, 0.5, 2, 1}), 1.0, 1e-15);
}

TEST(CriticalConstant, HomogeneousInB) {
  const double lambda = 3.7;
  const double ratio = critical_constant({3, lambda, 0.5, 2, 1}) / critical_constant({3, 1, 0.5, 2, 1});
  EXPECT_NEAR(ratio, std::pow(lambda, 1.0 / 1.5), 1e-13);
}

TEST(BarConstant, KnownValues) {
  EXPECT_NEAR(bar_constant(3), 1.0 / 36, 1e-17);
  EXPECT_NEAR(bar_constant(4), std::sqrt(16.0 / 384.0), 1e-15);
  double prev = bar_constant(2.05);
  for (double p = 2.1; p <= 10.0; p += 0.05) {
    const double c = bar_constant(p);
    EXPECT_TRUE(std::isfinite(c));
    EXPECT_LT(std::abs(c - prev), 0.1);
    prev = c;
  }
}

TEST(EllStar, KnownValues) {
  EXPECT_NEAR(ell_star({3, 1, 0.5, 4, 1}), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(ell_star({3, 1, 0.5, 4, 16}), std::sqrt(0.5) / 2, 1e-15);
  EXPECT_GT(ell_star({3, 1, 0.5, 1e6, 1}), 0.9999);
}

TEST(XiBracket, DegenerateAtTravelingWaveAlpha) {
  const XiBracket b = xi_bracket(3, 2);
  EXPECT_DOUBLE_EQ(b.xi1, 1.0);
  EXPECT_DOUBLE_EQ(b.xi2, 1.0);
}

TEST(XiBracket, BelowTravelingWaveAlpha) {
  // (p-1)^{1/p} (alpha(p-2))^{-1/p} at p = 3, alpha = 1.
  const XiBracket b = xi_bracket(3, 1);
  EXPECT_DOUBLE_EQ(b.xi1, 1.0);
  EXPECT_NEAR(b.xi2, std::cbrt(2.0), 1e-15);
}

TEST(XiBracket, AboveTravelingWaveAlpha) {
  const XiBracket b = xi_bracket(3, 2.5);
  EXPECT_NEAR(b.xi1, std::cbrt(2.0 / 2.5), 1e-15);
  EXPECT_DOUBLE_EQ(b.xi2, 1.0);
}

TEST(NuAlpha, OneAtTravelingWaveAlpha) { EXPECT_DOUBLE_EQ(nu_alpha(3, 2), 1.0); }

TEST(AppendixConstants, ProfileProductMatchesA1) {
  const double a1 = 0.8357864376269049;
  const auto dc = appendix_constants({3, 1, 0.5, 2, 0.5}, a1);
  const auto& ap = dc.appendix;
  EXPECT_NEAR(ap.at("C2") * std::pow(ap.at("zeta2"), 2.0), a1, 1e-12);
  EXPECT_NEAR(ap.at("C1") * std::pow(ap.at("zeta1"), ap.at("mu")), a1, 1e-12);
  EXPECT_LE(ap.at("zeta1"), ap.at("zeta2") * (1 + 1e-12));
}

TEST(AppendixConstants, GammaBelowCritical) {
  const auto dc = appendix_constants({3, 1, 0.5, 2, 0.125}, std::nullopt);
  EXPECT_NEAR(dc.appendix.at("Gamma"), 1.0 - std::sqrt(0.5), 1e-12);
}

TEST(AppendixConstants, EllStarAgrees) {
  const ProblemParams pr{3, 1, 0.5, 2, 1};
  EXPECT_NEAR(*derived_constants(pr).ell_star, ell_star(pr), 1e-15);
}

TEST(Homogeneity, CoefficientScalesWithC) {
  const double c1 = *classify({3, 0, 1, 2, 1}).interface_coefficient;
  const double c2 = *classify({3, 0, 1, 2, 2}).interface_coefficient;
  EXPECT_NEAR(c2 / c1, std::pow(2.0, 1.0 / (3 - 2 * 1.0)), 1e-13);
}

}  // namespace
}  // namespace pfront
