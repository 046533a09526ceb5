#include "mochain/karlin_mcgregor.hpp"

#include <algorithm>
#include <cmath>

#include "mochain/error.hpp"

namespace mochain {

const char* to_string(ChainSide c) { return c == ChainSide::hat ? "hat" : "check"; }

const char* to_string(EvolutionMethod m) {
  switch (m) {
    case EvolutionMethod::integral: return "integral";
    case EvolutionMethod::matrix_power: return "matrix_power";
    case EvolutionMethod::both: return "both";
  }
  return "unknown";
}

ChainSide parse_chain_side(const std::string& s) {
  if (s == "hat") return ChainSide::hat;
  if (s == "check") return ChainSide::check;
  throw ParseError("unknown chain '" + s + "' (expected hat or check)");
}

EvolutionMethod parse_evolution_method(const std::string& s) {
  if (s == "integral") return EvolutionMethod::integral;
  if (s == "matrix_power" || s == "matrix-power") return EvolutionMethod::matrix_power;
  if (s == "both") return EvolutionMethod::both;
  throw ParseError("unknown method '" + s + "' (expected integral, matrix_power or both)");
}

Real kmg_probability(const EvolutionQuery& q, const PolynomialFamily<Real>& family, const std::vector<Real>& sigma_II,
                     const std::vector<Real>& sigma_I, const WeightSystem& system, int digits) {
  const std::size_t top = std::max(q.n, q.m);
  if (top >= family.coefficient_rows())
    throw SizingError("polynomial family covers degrees below " + std::to_string(family.coefficient_rows()) +
                      ", query needs " + std::to_string(top));
  const bool hat = q.chain == ChainSide::hat;
  const std::size_t b_index = hat ? q.n : q.m;  // B index
  const std::size_t a_index = hat ? q.m : q.n;  // Q index
  std::vector<Real> xb(q.r, Real(0L, digits));
  for (std::size_t k = 0; k <= b_index; ++k) xb.push_back(family.typeII(b_index, k));
  const ChannelFunctional fn(system, q.r + q.n + q.m + 1, digits);
  Real value = fn.integrate(1, poly_multiply(xb, family.typeI[0][a_index]));
  if (!family.typeI[1].empty()) value += fn.integrate(2, poly_multiply(xb, family.typeI[1][a_index]));
  const auto& sigma = hat ? sigma_II : sigma_I;
  return value * sigma[q.m] / sigma[q.n];
}

Real kmg_probability(const EvolutionQuery& q, const ChainModel& model) {
  return kmg_probability(q, model.family, model.sigma_II, model.sigma_I, model.system, model.digits);
}

namespace {

// Entry (from, to) of M^steps by propagating a row vector through the band.
template <class S, class Entry>
S power_entry(std::size_t size, int lower, int upper, Entry entry, std::size_t from, std::size_t to,
              std::size_t steps, const S& zero, const S& one) {
  std::vector<S> dist(size, zero), next(size, zero);
  dist[from] = one;
  for (std::size_t s = 0; s < steps; ++s) {
    std::fill(next.begin(), next.end(), zero);
    for (std::size_t i = 0; i < size; ++i) {
      if (is_zero(dist[i])) continue;
      const std::size_t j0 = i >= static_cast<std::size_t>(lower) ? i - static_cast<std::size_t>(lower) : 0;
      for (std::size_t j = j0; j <= i + static_cast<std::size_t>(upper) && j < size; ++j)
        next[j].add_mul(dist[i], entry(i, j));
    }
    std::swap(dist, next);
  }
  return dist[to];
}

}  // namespace

template <class T>
CheckScalar<T> matrix_power_probability(const EvolutionQuery& q, const StochasticPair<T>& pair) {
  const std::size_t n = pair.size();
  if (n < q.required_truncation())
    throw SizingError("truncation " + std::to_string(n) + " is below the required " +
                      std::to_string(q.required_truncation()) + " for this query");
  const T zero = like(pair.source.c.front(), 0), one = like(zero, 1);
  if (q.chain == ChainSide::hat)
    return CheckScalar<T>(power_entry<T>(n, 2, 1, [&](std::size_t i, std::size_t j) -> const T& { return pair.hatH(i, j); },
                                         q.n, q.m, q.r, zero, one));
  if constexpr (std::is_same_v<T, Rational>) {
    const Rational h = power_entry<Rational>(
        n, 2, 1, [&](std::size_t i, std::size_t j) { return pair.source.entry(i, j); }, q.m, q.n, q.r, zero, one);
    return UnitRatio(pair.sigma_I[q.m] * h, pair.sigma_I[q.n]);
  } else {
    return power_entry<Real>(n, 1, 2, [&](std::size_t i, std::size_t j) -> const Real& { return pair.checkH(i, j); },
                             q.n, q.m, q.r, zero, one);
  }
}

template UnitRatio matrix_power_probability(const EvolutionQuery&, const StochasticPair<Rational>&);
template Real matrix_power_probability(const EvolutionQuery&, const StochasticPair<Real>&);

StochasticPair<Rational> exact_pair(const ChainModel& model, std::size_t n) {
  if (!model.exact_H) throw UnsupportedError("exact stochastic pair requested from a numeric model");
  const StochasticOptions opts{model.normalization == Normalization::toeplitz};
  return make_stochastic_pair(*model.exact_H, model.exact_sigma_II, model.exact_sigma_I, model.rho, n, opts);
}

StochasticPair<Real> numeric_pair(const ChainModel& model, std::size_t n) {
  const StochasticOptions opts{model.normalization == Normalization::toeplitz};
  return make_stochastic_pair(model.H, model.sigma_II, model.sigma_I, model.rho, n, opts);
}

EvolutionResult evolve(const EvolutionQuery& q, const ChainModel& model) {
  EvolutionResult res;
  res.query = q;
  res.truncation = q.required_truncation();
  if (q.method != EvolutionMethod::integral) {
    if (res.truncation > model.H.size())
      throw SizingError("query needs a truncation of " + std::to_string(res.truncation) +
                        " states; rebuild with size >= " + std::to_string(res.truncation));
    if (model.exact_H) {
      const auto pair = exact_pair(model, res.truncation);
      const UnitRatio v = matrix_power_probability(q, pair);
      res.exact = v.to_string();
      res.matrix_power = v.evaluate(model.rho.value.with_digits(model.digits)).with_digits(model.digits);
      if (auto r = v.as_rational()) res.matrix_power = Real(*r, model.digits);
    } else {
      const auto pair = numeric_pair(model, res.truncation);
      res.matrix_power = matrix_power_probability(q, pair);
    }
  }
  if (q.method != EvolutionMethod::matrix_power) res.integral = kmg_probability(q, model);
  if (res.integral && res.matrix_power) res.discrepancy = std::fabs((*res.integral - *res.matrix_power).to_double());
  return res;
}

Real classical_evolution(const TridiagonalChain& chain, std::size_t n, std::size_t m, std::size_t k, int digits) {
  const std::size_t top = std::max(n, m);
  const QuadratureRule rule = chain_quadrature(chain, std::max(n + m + k, 2 * m) / 2 + 2, digits);
  Real num(0L, digits), den(0L, digits);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const std::vector<Real> P = op_sequence(chain, top + 1, rule.nodes[i]);
    num.add_mul(rule.weights[i], pow(rule.nodes[i], static_cast<long>(k)) * P[n] * P[m]);
    den.add_mul(rule.weights[i], P[m] * P[m]);
  }
  if (std::fabs(den.to_double()) < 1e-300) throw DomainError("degenerate query: the norm integral vanishes");
  return num / den;
}

Rational classical_matrix_power(const TridiagonalChain& chain, std::size_t n, std::size_t m, std::size_t k) {
  const std::size_t need = std::max(n, m) + k + 2;
  if (chain.size() < need) throw SizingError("chain too short for the requested power");
  return power_entry<Rational>(
      need, 1, 1, [&](std::size_t i, std::size_t j) { return chain.entry(i, j); }, n, m, k, Rational(0), Rational(1));
}

}  // namespace mochain
