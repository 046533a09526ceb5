#include <gtest/gtest.h>

#include "mochain/classical.hpp"
#include "mochain/error.hpp"
#include "mochain/karlin_mcgregor.hpp"
#include "oracle_values.hpp"

using namespace mochain;

TEST(KarlinMcGregor, IntegralAndMatrixPowerMatchOracle) {
  for (const auto& set : {oracle::recurrent(), oracle::transient()}) {
    const auto model = build_model(WeightSystem(set.params()), ModelOptions{.size = 16});
    for (const auto& t : set.transitions) {
      EvolutionQuery q{t.from, t.to, t.steps, t.hat ? ChainSide::hat : ChainSide::check};
      const auto result = evolve(q, model);
      ASSERT_TRUE(result.integral && result.matrix_power);
      EXPECT_NEAR(result.integral->to_double(), t.probability, 1e-13);
      EXPECT_NEAR(result.matrix_power->to_double(), t.probability, 1e-13);
      EXPECT_LT(result.discrepancy, 1e-30);
      EXPECT_TRUE(result.exact);
    }
  }
}

TEST(KarlinMcGregor, ZeroStepsIsTheIdentity) {
  const auto model = build_model(WeightSystem(oracle::transient().params()), ModelOptions{.size = 10});
  for (std::size_t n = 0; n < 4; ++n)
    for (std::size_t m = 0; m < 4; ++m)
      for (auto side : {ChainSide::hat, ChainSide::check}) {
        const auto p = kmg_probability(EvolutionQuery{n, m, 0, side}, model).to_double();
        EXPECT_NEAR(p, n == m ? 1.0 : 0.0, 1e-25);
      }
}

TEST(KarlinMcGregor, UniformTupleTwoStepReturn) {
  const auto model = build_model(WeightSystem(HypergeometricParams::uniform_tuple()), ModelOptions{.size = 10});
  const auto r = evolve(EvolutionQuery{0, 0, 2, ChainSide::hat}, model);
  // Row 0 is (4/9, 8/27) and hatH(1, 0) = 2/9, so the return is 16/81 + 16/243.
  EXPECT_NEAR(r.matrix_power->to_double(), 192.0 / 729.0, 1e-15);
  EXPECT_NEAR(r.integral->to_double(), 192.0 / 729.0, 1e-15);
}

TEST(KarlinMcGregor, SizingAndMethodErrors) {
  const auto model = build_model(WeightSystem(oracle::recurrent().params()), ModelOptions{.size = 6});
  const auto pair = exact_pair(model, 6);
  EXPECT_THROW(matrix_power_probability(EvolutionQuery{0, 0, 5, ChainSide::hat}, pair), SizingError);
  EXPECT_THROW(parse_chain_side("sideways"), ParseError);
  EXPECT_EQ(parse_evolution_method("matrix_power"), EvolutionMethod::matrix_power);
}

TEST(KarlinMcGregor, ClassicalChainsAgreeWithMatrixPowers) {
  const auto cheb = chebyshev_chain(32);
  for (std::size_t k = 0; k <= 6; ++k)
    for (std::size_t n = 0; n <= 3; ++n)
      for (std::size_t m = 0; m <= 3; ++m)
        EXPECT_NEAR(classical_evolution(cheb, n, m, k, 30).to_double(),
                    classical_matrix_power(cheb, n, m, k).to_double(), 1e-20)
            << n << "," << m << "," << k;
  const auto jac = jacobi_chain(Rational(1, 2), Rational(-1, 2), 32);
  EXPECT_NEAR(classical_evolution(jac, 1, 2, 3, 30).to_double(), classical_matrix_power(jac, 1, 2, 3).to_double(), 1e-20);
}
