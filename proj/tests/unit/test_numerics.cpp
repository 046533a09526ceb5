#include <gtest/gtest.h>

#include <cmath>

#include "mochain/error.hpp"
#include "mochain/parse.hpp"
#include "mochain/quadrature.hpp"
#include "mochain/rational.hpp"
#include "mochain/real.hpp"
#include "mochain/special.hpp"

using namespace mochain;

TEST(Rational, ParsesFractionsIntegersAndDecimals) {
  EXPECT_EQ(Rational::parse("-1/4"), Rational(-1, 4));
  EXPECT_EQ(Rational::parse(" 6/8 "), Rational(3, 4));
  EXPECT_EQ(Rational::parse("12"), Rational(12));
  EXPECT_EQ(Rational::parse("-0.125"), Rational(-1, 8));
  EXPECT_EQ(Rational::parse("0.1"), Rational(1, 10));
  EXPECT_THROW(Rational::parse("1/0"), ParseError);
  EXPECT_THROW(Rational::parse("abc"), ParseError);
  EXPECT_THROW(Rational::parse(""), ParseError);
  EXPECT_THROW(Rational::parse("1e-3"), ParseError);
}

TEST(Rational, ListParsing) {
  const auto v = parse_rational_list("4/3,5/3, 2,5/2");
  ASSERT_EQ(v.size(), 4u);
  EXPECT_EQ(v[0], Rational(4, 3));
  EXPECT_EQ(v[3], Rational(5, 2));
  EXPECT_THROW(parse_rational_list("1,,2"), ParseError);
}

TEST(Rational, ArithmeticStaysCanonical) {
  const Rational a(2, 6), b(1, 6);
  EXPECT_EQ(a + b, Rational(1, 2));
  EXPECT_EQ((a * b).to_string(), "1/18");
  EXPECT_EQ(pow(Rational(2, 3), -2), Rational(9, 4));
  EXPECT_THROW(a / Rational(0), DomainError);
  EXPECT_LT(Rational(-1, 3), Rational(-1, 4));
}

TEST(Real, BinaryOperationsTakeTheSmallerPrecision) {
  const Real a(Rational(1, 3), 50), b(Rational(1, 7), 20);
  EXPECT_EQ((a + b).digits(), 20);
  EXPECT_THROW(Real(1L, 8), DomainError);
  EXPECT_THROW(sqrt(Real(-1L, 20)), DomainError);
  EXPECT_THROW(Real(1L, 20) / Real(0L, 20), DomainError);
}

TEST(Real, ParseAcceptsDecimalsAndFractions) {
  EXPECT_NEAR(Real::parse("2.5", 20).to_double(), 2.5, 0.0);
  EXPECT_NEAR(Real::parse("1/3", 30).to_double(), 1.0 / 3.0, 1e-16);
}

TEST(Special, PochhammerExactAndNumeric) {
  EXPECT_EQ(pochhammer(Rational(1, 2), 3), Rational(15, 8));
  EXPECT_EQ(pochhammer(Rational(-2), 3), Rational(0));
  EXPECT_EQ(pochhammer(Rational(5), 0), Rational(1));
  EXPECT_NEAR(pochhammer(Real(Rational(1, 2), 30), 3).to_double(), 1.875, 1e-15);
}

TEST(Special, BetaRatioMatchesMomentsOfTheJacobiWeight) {
  // Moments of x^(-1/2) on [0,1] normalized: (1/2)_k / (1)_k ... with b = 0: (k + 1/2) / (k + 3/2) products.
  EXPECT_EQ(beta_ratio(1, Rational(-1, 2), Rational(0)), Rational(1, 3));
  EXPECT_EQ(beta_ratio(2, Rational(-1, 2), Rational(0)), Rational(1, 5));
  EXPECT_EQ(beta_ratio(0, Rational(3), Rational(4)), Rational(1));
  // x (1-x): mean 1/2.
  EXPECT_EQ(beta_ratio(1, Rational(1), Rational(1)), Rational(1, 2));
}

TEST(Special, LogGammaAgainstReference) {
  // mpmath.loggamma at 30 digits.
  EXPECT_NEAR(log_gamma(Real(7.5, 40)).to_double(), 7.53436423675873295515836763244, 1e-14);
  EXPECT_NEAR(log_gamma(Real(0.25, 40)).to_double(), 1.28802252469807745737061044022, 1e-14);
}

TEST(Special, Hyp2f1SeriesConnectionAndGaussSum) {
  const int d = 40;
  const Real a(Rational(1, 3), d), b(Rational(2, 3), d), c(Rational(3, 2), d);
  // mpmath.hyp2f1 reference values.
  const auto r1 = hyp2f1(a, b, c, Real(0.3, d));
  EXPECT_NEAR(r1.value.to_double(), 1.05170035754830510053175304004, 1e-15);
  EXPECT_LT(r1.error_bound.to_double(), 1e-30);
  const auto r2 = hyp2f1(a, b, c, Real(0.8, d));
  EXPECT_NEAR(r2.value.to_double(), 1.20992238254433808045651834921, 1e-15);
  const auto r3 = hyp2f1(a, b, Real(Rational(5, 2), d), Real(1L, d));
  EXPECT_TRUE(r3.closed_form);
  EXPECT_NEAR(r3.value.to_double(), 1.15714285714285714285714285714, 1e-15);
  EXPECT_THROW(hyp2f1(a, b, Real(1L, d), Real(1L, d)), DomainError);
}

TEST(Quadrature, GaussJacobiIntegratesPolynomialsExactly) {
  const Rational p(-1, 2), q(-1, 4);
  const auto rule = gauss_jacobi(6, p, q, 40);
  ASSERT_EQ(rule.size(), 6u);
  const Real mass = rule.apply([](const Real& x) { return like(x, 1); });
  for (unsigned k = 0; k <= 11; ++k) {
    const Real m = rule.apply([k](const Real& x) { return pow(x, static_cast<long>(k)); }) / mass;
    EXPECT_LT(abs(m - Real(beta_ratio(k, q, p), 40)).to_double(), 1e-30) << "k=" << k;
  }
  for (std::size_t i = 0; i + 1 < rule.size(); ++i) EXPECT_LT(rule.nodes[i], rule.nodes[i + 1]);
}

TEST(Quadrature, TanhSinhHandlesEndpointSingularities) {
  const int d = 30;
  // int_0^1 x^(-1/2) (1-x)^(-1/2) dx = pi.
  const auto r = tanh_sinh([](const Real& x, const Real& omx) { return like(x, 1) / sqrt(x * omx); },
                           Real(1e-25, d), d);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value.to_double(), M_PI, 1e-14);
}
