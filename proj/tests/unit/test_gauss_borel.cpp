#include <gtest/gtest.h>

#include "mochain/gauss_borel.hpp"
#include "mochain/model.hpp"
#include "oracle_values.hpp"

using namespace mochain;

namespace {

void expect_bands(const BandedHessenberg<Real>& H, const oracle::JpSet& set) {
  for (std::size_t n = 0; n < set.c.size(); ++n) {
    EXPECT_NEAR(H.c[n].to_double(), set.c[n], 1e-13) << "c" << n;
    EXPECT_NEAR(H.b[n].to_double(), set.b[n], 1e-13) << "b" << n;
    EXPECT_NEAR(H.a[n].to_double(), set.a[n], 1e-13) << "a" << n;
  }
}

}  // namespace

TEST(GaussBorel, FactorizationReproducesMomentMatrix) {
  const auto g = build_jp_moments(oracle::recurrent().params(), 6);
  const auto f = factorize(g);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      Rational s(0);
      for (std::size_t k = 0; k < 6; ++k) s += f.L(i, k) * f.U(k, j);
      EXPECT_EQ(s, g.entries(i, j));
    }
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(f.L(i, i), Rational(1));
}

TEST(GaussBorel, ExactBandsMatchIndependentOracle) {
  for (const auto& set : {oracle::recurrent(), oracle::transient()}) {
    const auto model = build_model(WeightSystem(set.params()), ModelOptions{.size = 8});
    ASSERT_TRUE(model.exact_H);
    expect_bands(model.H, set);
    EXPECT_EQ(model.exact_H->a[0], Rational(0));
    EXPECT_EQ(model.exact_H->b[0], Rational(0));
    for (std::size_t n = 0; n < set.B_at_1.size(); ++n) {
      EXPECT_NEAR(model.family.B_at_1[n].to_double(), set.B_at_1[n], 1e-13) << n;
      EXPECT_NEAR(model.family.q_at_1[n].to_double() / set.q[n], 1.0, 1e-12) << n;
    }
    EXPECT_TRUE(model.all_checks_passed());
  }
}

TEST(GaussBorel, NumericModeAgreesWithExact) {
  const auto set = oracle::transient();
  const auto model = build_model(WeightSystem(set.params()), ModelOptions{.mode = Mode::numeric, .size = 8, .digits = 30});
  EXPECT_FALSE(model.exact_H);
  expect_bands(model.H, set);
  EXPECT_GE(model.achieved_digits, 30.0);
}

TEST(GaussBorel, UniformTupleBandsAreEventuallyConstant) {
  const auto model = build_model(WeightSystem(HypergeometricParams::uniform_tuple()), ModelOptions{.size = 8});
  const auto& H = *model.exact_H;
  EXPECT_EQ(H.c[0], Rational(4, 9));
  EXPECT_EQ(H.b[1], Rational(16, 243));
  for (std::size_t n = 2; n < H.size(); ++n) {
    EXPECT_EQ(H.a[n], Rational(64, 19683));
    EXPECT_EQ(H.b[n], Rational(16, 243));
    EXPECT_EQ(H.c[n], Rational(4, 9));
  }
  const auto& B = model.exact_family->B_at_1;
  EXPECT_EQ(B[1], Rational(5, 9));
  EXPECT_EQ(B[3], Rational(1871, 19683));
  EXPECT_EQ(B[6], Rational(1657009, 387420489));
}

TEST(GaussBorel, RecurrenceResidualsVanishExactly) {
  const auto model = build_model(WeightSystem(oracle::recurrent().params()), ModelOptions{.size = 10});
  for (const auto& r : eigen_relation_residuals(*model.exact_H, model.exact_family->B_at_1)) EXPECT_EQ(r, Rational(0));
  for (const auto& r : left_relation_residuals(*model.exact_H, model.exact_family->q_at_1)) EXPECT_TRUE(r.is_zero());
}

TEST(GaussBorel, CrossWeightUnitCancelsFromBands) {
  const auto g = build_jp_moments(oracle::recurrent().params(), 8);
  EXPECT_TRUE(verify_unit_cancellation(g, 8, {Rational(1), Rational(3, 7), Rational(11, 2)}));
}

TEST(GaussBorel, TypeIIPolynomialsAreMonic) {
  const auto model = build_model(WeightSystem(oracle::recurrent().params()), ModelOptions{.size = 6});
  const auto& fam = *model.exact_family;
  for (std::size_t n = 0; n < fam.coefficient_rows(); ++n) {
    EXPECT_EQ(fam.typeII(n, n), Rational(1));
    EXPECT_EQ(typeII_at(fam, n, Rational(1)), fam.B_at_1[n]);
  }
}
