#pragma once

#include <functional>
#include <vector>

#include "mochain/rational.hpp"
#include "mochain/real.hpp"

namespace mochain {

/// Gauss rule on [0,1] for the weight x^q (1-x)^p.
struct QuadratureRule {
  std::vector<Real> nodes;
  std::vector<Real> weights;
  Rational p;  // exponent of (1-x)
  Rational q;  // exponent of x
  int degree_exact = 0;

  std::size_t size() const noexcept { return nodes.size(); }
  /// Sum of weights times f(node).
  Real apply(const std::function<Real(const Real&)>& f) const;
};

/// Monic recurrence t P_n = P_{n+1} + alpha_n P_n + beta_n P_{n-1} for the
/// Jacobi weight (1-t)^a (1+t)^b on [-1,1]; beta_0 is left at zero.
struct RecurrenceCoefficients {
  std::vector<Real> alpha;
  std::vector<Real> beta;
};
RecurrenceCoefficients jacobi_recurrence(std::size_t n, const Real& a, const Real& b);

/// n-point Gauss-Jacobi rule on [0,1] (Golub-Welsch).
QuadratureRule gauss_jacobi(std::size_t n, const Rational& p, const Rational& q, int digits);

/// Eigenvalues and squared first eigenvector components of the symmetric
/// tridiagonal matrix with the given diagonal and off-diagonal (size n-1).
/// Eigenvalues are returned in increasing order.
struct TridiagonalEigen {
  std::vector<Real> values;
  std::vector<Real> first_components_squared;
};
TridiagonalEigen symmetric_tridiagonal_eigen(std::vector<Real> diag, std::vector<Real> offdiag);

struct IntegrationResult {
  Real value;
  Real error_estimate;
  int levels = 0;
  bool converged = false;
};

/// Double-exponential (tanh-sinh) integration over [0,1].
///
/// The integrand receives both x and 1-x, each computed without
/// cancellation, so endpoint singularities like (1-x)^(-1/2) stay accurate.
IntegrationResult tanh_sinh(const std::function<Real(const Real& x, const Real& one_minus_x)>& f,
                            const Real& tolerance, int digits, int max_levels = 12);

}  // namespace mochain
