#pragma once

#include "mochain/rational.hpp"
#include "mochain/real.hpp"

namespace mochain {

/// Rising factorial x (x+1) ... (x+k-1); 1 for k = 0.
Rational pochhammer(const Rational& x, unsigned long k);
Real pochhammer(const Real& x, unsigned long k);

/// ln Gamma(x) for x > 0.
Real log_gamma(const Real& x);

/// Euler Beta B(a, b) for a, b > 0.
Real beta(const Real& a, const Real& b);

/// B(k+a+1, b+1) / B(a+1, b+1) = prod_{j<k} (j+a+1)/(j+a+b+2), exactly.
/// These are the normalized moments of x^a (1-x)^b on [0,1].
Rational beta_ratio(unsigned long k, const Rational& a, const Rational& b);

struct Hyp2f1Result {
  Real value;
  Real error_bound;    // rigorous bound on the truncation error of the partial sums
  long terms = 0;      // series terms summed (over all branches)
  bool closed_form = false;
};

/// Gauss hypergeometric 2F1(a1, a2; b1; z) for real 0 <= z <= 1.
///
/// z <= 1/2 sums the series directly with a ratio-bound tail estimate,
/// 1/2 < z < 1 uses the z -> 1-z connection formula, and z = 1 uses Gauss's
/// summation theorem. Throws DomainError at z = 1 when b1 - a1 - a2 <= 0 and
/// NumericError when the term cap is hit before the tolerance.
Hyp2f1Result hyp2f1(const Real& a1, const Real& a2, const Real& b1, const Real& z);

}  // namespace mochain
