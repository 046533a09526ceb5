#include <gtest/gtest.h>

#include <cmath>

#include "mochain/classical.hpp"
#include "mochain/error.hpp"

using namespace mochain;

TEST(Classical, ChebyshevChainIsReflectingWalk) {
  const auto chain = chebyshev_chain(16);
  EXPECT_EQ(chain.entry(0, 1), Rational(1));
  EXPECT_EQ(chain.entry(3, 2), Rational(1, 2));
  EXPECT_EQ(chain.entry(3, 4), Rational(1, 2));
  EXPECT_EQ(chain.entry(3, 3), Rational(0));
  // P_n(cos t) = cos(n t).
  const double t = 0.7;
  const auto P = op_sequence(chain, 8, Real(std::cos(t), 30));
  for (std::size_t n = 0; n < 8; ++n) EXPECT_NEAR(P[n].to_double(), std::cos(n * t), 1e-14) << n;
}

TEST(Classical, ReturnProbabilitiesAreCentralBinomials) {
  const auto w = return_probabilities(chebyshev_chain(32), 8);
  const Rational expected[] = {Rational(1), Rational(0), Rational(1, 2), Rational(0),
                               Rational(3, 8), Rational(0), Rational(5, 16), Rational(0)};
  for (std::size_t n = 0; n < 8; ++n) EXPECT_EQ(w[n], expected[n]) << n;
}

TEST(Classical, StieltjesSeriesAtTwo) {
  const auto s = stieltjes_series(chebyshev_chain(256), Real(2L, 40), 100);
  EXPECT_NEAR(s.value.to_double(), 0.57735026918962576451, s.remainder_bound.to_double() + 1e-15);
  EXPECT_LT(s.remainder_bound.to_double(), 1e-29);
  EXPECT_THROW(stieltjes_series(chebyshev_chain(8), Real(0.5, 30), 10), DomainError);
}

TEST(Classical, MarkovStieltjesRatioConverges) {
  const auto chain = chebyshev_chain(64);
  const Real z(2L, 40);
  const double limit = 1.0 / std::sqrt(3.0);
  double previous = 1.0;
  for (std::size_t n : {2u, 4u, 8u, 16u}) {
    const double err = std::abs(markov_stieltjes_ratio(chain, z, n).to_double() - limit);
    EXPECT_LT(err, previous);
    previous = err;
  }
  EXPECT_LT(previous, 1e-8);
  // The recurrence numerator agrees with its integral definition.
  const auto P = op_sequence(chain, 6, z);
  EXPECT_NEAR((markov_stieltjes_ratio(chain, z, 5) * P[5]).to_double(),
              numerator_by_quadrature(chain, z, 5, 30).to_double(), 1e-20);
}

TEST(Classical, JacobiChainOrthogonality) {
  const auto chain = jacobi_chain(Rational(1, 2), Rational(-1, 2), 32);
  for (std::size_t n = 0; n < 8; ++n) {
    EXPECT_EQ(chain.p[n] + chain.q[n] + chain.r[n], Rational(1)) << n;
    EXPECT_GE(chain.p[n], Rational(0));
  }
  const auto gram = gram_check(chain, 8, 30);
  EXPECT_LT(gram.max_off_diagonal, 1e-25);
  EXPECT_GT(gram.min_diagonal, 0.0);
  const auto rule = chain_quadrature(chain, 10, 30);
  EXPECT_NEAR(rule.apply([](const Real& x) { return like(x, 1); }).to_double(), 1.0, 1e-25);
  EXPECT_THROW(jacobi_chain(Rational(-1), Rational(0)), DomainError);
}
