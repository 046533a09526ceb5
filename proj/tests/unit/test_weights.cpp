#include <gtest/gtest.h>

#include <cmath>

#include "mochain/error.hpp"
#include "mochain/weights.hpp"

using namespace mochain;

namespace {

WeightSystem jp(long a1n, long a1d, long a2n, long a2d, long a0n, long a0d) {
  return WeightSystem(JacobiPineiroParams::make(Rational(a1n, a1d), Rational(a2n, a2d), Rational(a0n, a0d)));
}

}  // namespace

TEST(Weights, ParameterValidation) {
  EXPECT_THROW(JacobiPineiroParams::make(Rational(-1), Rational(0), Rational(0)), DomainError);
  EXPECT_THROW(JacobiPineiroParams::make(Rational(1, 2), Rational(-1, 2), Rational(0)), DomainError);
  EXPECT_NO_THROW(JacobiPineiroParams::make(Rational(-1, 4), Rational(-1, 2), Rational(-1, 2)));
  EXPECT_TRUE(JacobiPineiroParams::make(Rational(0), Rational(1, 2), Rational(0)).positivity());
  EXPECT_FALSE(JacobiPineiroParams::make(Rational(0), Rational(3, 2), Rational(0)).positivity());
}

TEST(Weights, JacobiPineiroWeight) {
  const auto p = JacobiPineiroParams::make(Rational(-1, 4), Rational(-1, 2), Rational(-1, 2));
  const Real x(0.25, 30);
  EXPECT_NEAR(jp_weight(p, 1, x).to_double(), std::pow(0.25, -0.25) * std::pow(0.75, -0.5), 1e-15);
  EXPECT_NEAR(jp_weight(p, 2, x).to_double(), std::pow(0.25, -0.5) * std::pow(0.75, -0.5), 1e-15);
  EXPECT_THROW(jp_weight(p, 1, Real(1L, 30)), DomainError);
  EXPECT_THROW(jp_weight(p, 3, x), DomainError);
}

TEST(Weights, UniformTupleSeriesMatchesClosedForm) {
  const auto u = HypergeometricParams::uniform_tuple();
  EXPECT_TRUE(u.is_uniform_tuple());
  EXPECT_EQ(u.delta, Rational(3, 2));
  for (double xv : {0.05, 0.3, 0.7, 0.95}) {
    const Real x(xv, 30);
    EXPECT_NEAR(ll_weight_series(u, false, x).to_double(), ll_weight_closed(1, x).to_double(), 1e-20) << xv;
    EXPECT_NEAR(ll_weight_series(u, true, x).to_double(), ll_weight_closed(2, x).to_double(), 1e-20) << xv;
  }
  // Independent values (mpmath evaluation of the cube-root forms).
  EXPECT_NEAR(ll_weight_closed(1, Real(0.3, 30)).to_double(), 1.266828438318035570619668, 1e-15);
  EXPECT_NEAR(ll_weight_closed(2, Real(0.3, 30)).to_double(), 1.210740395951637536571637, 1e-15);
}

TEST(Weights, Classification) {
  EXPECT_EQ(classify_chain(jp(-1, 4, -1, 2, -1, 2)).verdict, ChainClass::recurrent);
  EXPECT_EQ(classify_chain(jp(-1, 4, -1, 2, 1, 2)).verdict, ChainClass::transient);
  const auto flagged = classify_chain(jp(-1, 4, -1, 2, 0, 1));
  EXPECT_EQ(flagged.verdict, ChainClass::boundary_flagged);
  EXPECT_EQ(flagged.readings.size(), 2u);
  EXPECT_EQ(classify_chain(WeightSystem(HypergeometricParams::uniform_tuple())).verdict, ChainClass::transient);
}

TEST(Weights, DivergenceProbeAgreesWithVerdicts) {
  EXPECT_TRUE(divergence_probe(jp(-1, 4, -1, 2, -1, 2), 30).growing);
  EXPECT_FALSE(divergence_probe(jp(-1, 4, -1, 2, 1, 2), 30).growing);
}
