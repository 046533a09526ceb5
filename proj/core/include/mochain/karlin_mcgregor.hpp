#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "mochain/classical.hpp"
#include "mochain/model.hpp"
#include "mochain/stochastic.hpp"

namespace mochain {

enum class ChainSide { hat, check };
enum class EvolutionMethod { integral, matrix_power, both };
const char* to_string(ChainSide c);
const char* to_string(EvolutionMethod m);
ChainSide parse_chain_side(const std::string& s);
EvolutionMethod parse_evolution_method(const std::string& s);

struct EvolutionQuery {
  std::size_t n = 0;  // start state
  std::size_t m = 0;  // end state
  std::size_t r = 0;  // steps
  ChainSide chain = ChainSide::hat;
  EvolutionMethod method = EvolutionMethod::both;

  /// Largest upward jump: one state for hatH, two for checkH.
  std::size_t jump_reach() const { return chain == ChainSide::hat ? 1 : 2; }
  /// Truncation at which the r-step entry equals the infinite chain's.
  std::size_t required_truncation() const { return std::max(n, m) + jump_reach() * r + 3; }
};

/// Integral representation: hat (sII_m / sII_n) int x^r B_n Q_m,
/// check (sI_m / sI_n) int x^r B_m Q_n, split over the two weight channels.
Real kmg_probability(const EvolutionQuery& q, const PolynomialFamily<Real>& family, const std::vector<Real>& sigma_II,
                     const std::vector<Real>& sigma_I, const WeightSystem& system, int digits);
Real kmg_probability(const EvolutionQuery& q, const ChainModel& model);

/// Entry (n, m) of the r-th power of the truncation. Throws SizingError when
/// the truncation is below q.required_truncation(). Exact check-chain powers
/// are formed as (sI_m / sI_n) (H^r)(m, n) to stay in rational arithmetic.
template <class T>
CheckScalar<T> matrix_power_probability(const EvolutionQuery& q, const StochasticPair<T>& pair);

/// Stochastic pair of a model at truncation n (at most model.H.size()).
/// Boundary deficits are allowed under the Toeplitz normalization.
StochasticPair<Rational> exact_pair(const ChainModel& model, std::size_t n);
StochasticPair<Real> numeric_pair(const ChainModel& model, std::size_t n);

struct EvolutionResult {
  EvolutionQuery query;
  std::optional<Real> integral;
  std::optional<Real> matrix_power;
  std::optional<std::string> exact;  // exact matrix-power value (exact models)
  double discrepancy = 0.0;          // |integral - matrix_power| when both ran
  std::size_t truncation = 0;
};

/// Runs the requested methods against a model whose Hessenberg rows cover the
/// required truncation.
EvolutionResult evolve(const EvolutionQuery& q, const ChainModel& model);

/// int x^k P_n P_m dmu / int P_m^2 dmu by Gauss quadrature on the chain's measure.
Real classical_evolution(const TridiagonalChain& chain, std::size_t n, std::size_t m, std::size_t k, int digits);
/// (P^k)(n, m) for the tridiagonal chain, exact.
Rational classical_matrix_power(const TridiagonalChain& chain, std::size_t n, std::size_t m, std::size_t k);

}  // namespace mochain
