#include <gtest/gtest.h>

#include "mochain/jacobi_pineiro.hpp"
#include "mochain/model.hpp"
#include "oracle_values.hpp"

using namespace mochain;

TEST(JacobiPineiro, ClosedTypeIIValuesMatchOracle) {
  for (const auto& set : {oracle::recurrent(), oracle::transient()}) {
    const auto p = set.params();
    for (std::size_t m = 0; m < set.B_at_1.size(); ++m)
      EXPECT_NEAR(b_at_1_closed(p, m).to_double(), set.B_at_1[m], 1e-14) << m;
    // Both indexings describe the same step line.
    EXPECT_EQ(b_at_1_closed(p, 2, 3), b_at_1_closed(p, 5));
    EXPECT_EQ(b_at_1_closed(p, 3, 3), b_at_1_closed(p, 6));
  }
}

TEST(JacobiPineiro, LambdaLadderLength) {
  const auto p = oracle::recurrent().params();
  const auto ladder = lambda_ladder(p, 6, LambdaConvention::as_printed);
  EXPECT_EQ(ladder.values.size(), 3u * 6 + 7);
  const auto bands = assemble_abc(ladder);
  EXPECT_EQ(bands.c.size(), 7u);
  EXPECT_EQ(bands.a[0], Rational(0));
}

TEST(JacobiPineiro, CalibrationSelectsSwappedConventionOnCZero) {
  for (const auto& set : {oracle::recurrent(), oracle::transient()}) {
    const auto model = build_model(WeightSystem(set.params()), ModelOptions{.size = 10});
    const auto report = calibrate_conventions(set.params(), *model.exact_H, model.exact_family->B_at_1, 8);
    ASSERT_EQ(report.c0_conventions.size(), 1u);
    EXPECT_EQ(report.c0_conventions.front(), LambdaConvention::alpha_swapped);
    EXPECT_EQ(report.candidates[report.selected].convention, LambdaConvention::alpha_swapped);
    EXPECT_TRUE(report.candidates[report.selected].c0_matches);
    // The closed form for B_n(1) agrees everywhere it is compared.
    EXPECT_EQ(report.closed_b_at_1.matches, report.closed_b_at_1.compared);
    EXPECT_GT(report.closed_b_at_1.compared, 0u);
    // Residual disagreements of the band formulas are reported, never hidden.
    EXPECT_EQ(report.known_discrepancies.size(), report.candidates[report.selected].mismatch_count);
  }
}

TEST(JacobiPineiro, LimitsOfTheBandsAndRatios) {
  const JacobiPineiroLimits lim;
  EXPECT_EQ(lim.a, pow(lim.kappa, 3));
  EXPECT_EQ(lim.b, Rational(3) * pow(lim.kappa, 2));
  EXPECT_EQ(lim.c, Rational(3) * lim.kappa);
  EXPECT_EQ(lim.typeII_ratio * lim.typeI_ratio, Rational(1));
}

TEST(JacobiPineiro, PoincareDiagnosticOnExactBands) {
  const auto model = build_model(WeightSystem(oracle::recurrent().params()), ModelOptions{.size = 24});
  const auto d = poincare_diagnostic(*model.exact_H, model.exact_family->B_at_1, model.exact_family->q_at_1, model.rho);
  EXPECT_TRUE(d.characteristic_ok);
  EXPECT_EQ(d.max_cd_residual, 0.0);
  // Ratios head toward 27/8 and 8/27 along the truncation.
  EXPECT_NEAR(d.q_ratio.back(), 27.0 / 8.0, 0.2);
  EXPECT_NEAR(d.B_ratio.back(), 8.0 / 27.0, 0.02);
}
