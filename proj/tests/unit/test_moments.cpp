#include <gtest/gtest.h>

#include "mochain/error.hpp"
#include "mochain/moments.hpp"
#include "mochain/special.hpp"

using namespace mochain;

TEST(Moments, JacobiPineiroInterleavedLayout) {
  const auto p = JacobiPineiroParams::make(Rational(-1, 4), Rational(-1, 2), Rational(-1, 2));
  const auto g = build_jp_moments(p, 6);
  ASSERT_EQ(g.size(), 6u);
  for (std::size_t j = 0; j < 6; ++j)
    for (std::size_t k = 0; k < 6; ++k) {
      const Rational& alpha = k % 2 == 0 ? p.alpha1 : p.alpha2;
      EXPECT_EQ(g.entries(j, k), beta_ratio(j + k / 2, alpha, p.alpha0)) << j << "," << k;
    }
  ASSERT_TRUE(g.odd_unit.has_value());
  EXPECT_FALSE(g.odd_unit->exact.has_value());  // B(1/2,1/2)/B(3/4,1/2) is irrational
  EXPECT_THROW(build_jp_moments(p, 1), DomainError);
}

TEST(Moments, HypergeometricExactMomentsArePochhammerRatios) {
  const auto u = HypergeometricParams::uniform_tuple();
  const auto g = build_ll_moments_exact(u, 4);
  // First weight: (4/3)_k (5/3)_k / ((2)_k (5/2)_k); second: b and c shifted by one.
  EXPECT_EQ(g.entries(0, 0), Rational(1));
  EXPECT_EQ(g.entries(1, 0), Rational(4, 9));
  EXPECT_EQ(g.entries(2, 0), Rational(64, 243));
  EXPECT_EQ(g.entries(1, 1), Rational(64, 135));
  EXPECT_EQ(g.entries(0, 2), Rational(4, 9));
}

TEST(Moments, HypergeometricNumericMatchesExact) {
  const auto u = HypergeometricParams::uniform_tuple();
  const auto exact = build_ll_moments_exact(u, 24);
  const auto numeric = build_ll_moments(u, 24, 40);
  for (std::size_t j = 0; j < 24; ++j)
    for (std::size_t k = 0; k < 24; ++k) {
      const Real want(exact.entries(j, k), 40);
      EXPECT_LT((abs(numeric.entries(j, k) - want) / want).to_double(), 1e-38) << j << "," << k;
    }
  // Single moments agree with the batched sweep.
  EXPECT_EQ(ll_moment_numeric(u, 5, 40).to_double(), numeric.entries(5, 0).to_double());
}

TEST(Moments, ChebyshevHankelMoments) {
  // Arcsine law on [-1, 1]: m_{2k} = C(2k, k) / 4^k, odd moments vanish.
  const auto m = classical_moments(ClassicalMeasure::chebyshev(), 7);
  EXPECT_EQ(m[0], Rational(1));
  EXPECT_EQ(m[1], Rational(0));
  EXPECT_EQ(m[2], Rational(1, 2));
  EXPECT_EQ(m[4], Rational(3, 8));
  EXPECT_EQ(m[6], Rational(5, 16));
  const auto g = build_classical_moments(ClassicalMeasure::chebyshev(), 4);
  EXPECT_FALSE(g.layout.interleaved);
  EXPECT_EQ(g.entries(1, 3), m[4]);
}
