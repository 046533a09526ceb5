#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mochain/moments.hpp"
#include "mochain/quadrature.hpp"
#include "mochain/rational.hpp"
#include "mochain/real.hpp"

namespace mochain {

/// Birth-death chain on {0, 1, ...}: down p_n, stay q_n, up r_n, with
/// x P_n = r_n P_{n+1} + q_n P_n + p_n P_{n-1} and P_n(1) = 1.
/// The orthogonality measure lives on [-1, 1].
struct TridiagonalChain {
  std::string name;
  std::vector<Rational> p, q, r;  // p[0] = 0
  ClassicalMeasure measure;       // jacobi(a, b) here means (1-x)^a (1+x)^b on [-1, 1]

  std::size_t size() const { return q.size(); }
  /// Transition probability (i, j); zero off the three bands.
  Rational entry(std::size_t i, std::size_t j) const;
};

/// q_0 = 0, r_0 = 1; p_n = r_n = 1/2 and q_n = 0 for n >= 1.
TridiagonalChain chebyshev_chain(std::size_t size = 128);

/// Jacobi weight (1-x)^a (1+x)^b on [-1, 1], polynomials normalized at 1.
TridiagonalChain jacobi_chain(const Rational& a, const Rational& b, std::size_t size = 128);

/// P_0(x) .. P_{count-1}(x) by the forward recurrence.
std::vector<Real> op_sequence(const TridiagonalChain& chain, std::size_t count, const Real& x);

/// Gauss rule for the chain's normalized measure on [-1, 1] (mass 1), exact to degree 2 nodes - 1.
QuadratureRule chain_quadrature(const TridiagonalChain& chain, std::size_t nodes, int digits);

/// Return probabilities w_n = (P^n)_{0,0}, exact, from banded truncated powers.
std::vector<Rational> return_probabilities(const TridiagonalChain& chain, std::size_t count);

struct SpectralSeries {
  std::vector<Rational> coefficients;  // w_0 .. w_{terms-1}
  Real value;                          // sum_{n < terms} w_n / z^{n+1}
  Real remainder_bound;                // |z|^{-terms} / (|z| - 1), since 0 <= w_n <= 1
};

/// Partial sum of S(z) = l0^T (z - P)^{-1} l0 for real |z| > 1.
SpectralSeries stieltjes_series(const TridiagonalChain& chain, const Real& z, std::size_t terms);

/// N_n(z) / P_n(z) with the numerator polynomials N_0 = 0, N_1 = 1/r_0 obeying the
/// same recurrence; N_n(z) = integral of (P_n(z) - P_n(x)) / (z - x).
Real markov_stieltjes_ratio(const TridiagonalChain& chain, const Real& z, std::size_t n);

/// N_n(z) evaluated from its defining integral by quadrature (spot check of the recurrence).
Real numerator_by_quadrature(const TridiagonalChain& chain, const Real& z, std::size_t n, int digits);

/// Largest |integral P_n P_m| (n != m) and smallest integral P_n^2 for n, m <= upto.
struct GramReport {
  double max_off_diagonal = 0.0;
  double min_diagonal = 0.0;
};
GramReport gram_check(const TridiagonalChain& chain, std::size_t upto, int digits);

}  // namespace mochain
