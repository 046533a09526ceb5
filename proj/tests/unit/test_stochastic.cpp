#include <gtest/gtest.h>

#include <cmath>

#include "mochain/error.hpp"
#include "mochain/karlin_mcgregor.hpp"
#include "mochain/stochastic.hpp"
#include "oracle_values.hpp"

using namespace mochain;

TEST(Stochastic, PairMatchesPrintedMatrices) {
  for (const auto& set : {oracle::recurrent(), oracle::transient()}) {
    const auto model = build_model(WeightSystem(set.params()), ModelOptions{.size = 8});
    const auto pair = numeric_pair(model, 8);
    for (std::size_t i = 0; i < set.hat.size(); ++i)
      for (std::size_t j = 0; j < 8; ++j) {
        EXPECT_NEAR(pair.hatH(i, j).to_double(), set.hat[i][j], 1e-7) << i << "," << j;
        EXPECT_NEAR(pair.checkH(i, j).to_double(), set.check[i][j], 1e-7) << i << "," << j;
      }
  }
}

TEST(Stochastic, ExactRowsSumToOneAndDualityIsExact) {
  const auto model = build_model(WeightSystem(oracle::recurrent().params()), ModelOptions{.size = 8});
  const auto pair = exact_pair(model, 8);
  for (std::size_t i = 0; i < pair.size(); ++i) {
    if (pair.hat_rows[i] == RowStatus::complete) EXPECT_EQ(pair.hat_row_sums[i], Rational(1)) << i;
    if (pair.check_rows[i] == RowStatus::complete) EXPECT_EQ(pair.check_row_sums[i], UnitRatio(Rational(1))) << i;
  }
  EXPECT_EQ(pair.hat_rows.back(), RowStatus::truncation_edge);
  const auto duality = verify_duality(pair);
  EXPECT_TRUE(duality.exact);
  EXPECT_GT(duality.checked, 0u);
}

TEST(Stochastic, ToeplitzNormalizationReportsBoundaryDeficits) {
  const auto model = build_model(WeightSystem(HypergeometricParams::uniform_tuple()), ModelOptions{.size = 8});
  EXPECT_EQ(model.normalization, Normalization::toeplitz);
  const auto pair = exact_pair(model, 8);
  EXPECT_EQ(pair.hat_rows[0], RowStatus::boundary_deficient);
  EXPECT_EQ(pair.hat_row_sums[0], Rational(20, 27));
  EXPECT_EQ(pair.hat_row_sums[1], Rational(26, 27));
  EXPECT_EQ(pair.check_row_sums[0], UnitRatio(Rational(19, 27)));
  for (std::size_t i = 2; i + 1 < pair.size(); ++i) EXPECT_EQ(pair.hat_row_sums[i], Rational(1)) << i;
  // Interior rows of the hat chain: (1, 12, 6, 8)/27 pattern from kappa = 4/27.
  EXPECT_EQ(pair.hatH(4, 2), Rational(1, 27));
  EXPECT_EQ(pair.hatH(4, 3), Rational(6, 27));
  EXPECT_EQ(pair.hatH(4, 4), Rational(12, 27));
  EXPECT_EQ(pair.hatH(4, 5), Rational(8, 27));
}

TEST(Stochastic, NegativeEntryRaisesPositivityError) {
  BandedHessenberg<Rational> H;
  H.a = {Rational(0), Rational(0), Rational(1, 10)};
  H.b = {Rational(0), Rational(-1, 10), Rational(1, 10)};
  H.c = {Rational(1, 2), Rational(1, 2), Rational(1, 2)};
  std::vector<Rational> sII{Rational(1), Rational(1, 2), Rational(1, 4)};
  std::vector<UnitPoly> sI{UnitPoly(Rational(1)), UnitPoly(Rational(2)), UnitPoly(Rational(4))};
  EXPECT_THROW(make_stochastic_pair(H, sII, sI, SymbolicUnit{}, 3), PositivityError);
}

TEST(Stochastic, OperatorNorms) {
  // Symmetric walk: norm 1.
  EXPECT_NEAR(estimate_norm(BandedOperator::tridiagonal(0.5, 0.0, 0.5), 1e-6).value, 1.0, 1e-3);
  // Uniform tuple: the bands become Toeplitz with symbol (1 + kappa)^3 at 1.
  const auto model = build_model(WeightSystem(HypergeometricParams::uniform_tuple()), ModelOptions{.size = 8});
  const auto est = estimate_norm(BandedOperator::from_hessenberg(model.H, true), 1e-6);
  EXPECT_NEAR(est.value, std::pow(31.0 / 27.0, 3), 1e-3);
  const auto rescaled = rescale_to_unit_norm(model.H, {}, true);
  EXPECT_NEAR(rescaled.norm, est.value, 1e-6);
  EXPECT_NE(rescaled.scaled_norm, 1.0);
}
