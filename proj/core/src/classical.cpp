#include "mochain/classical.hpp"

#include <algorithm>
#include <cmath>

#include "mochain/error.hpp"

namespace mochain {

Rational TridiagonalChain::entry(std::size_t i, std::size_t j) const {
  if (i >= size()) throw IndexError("state " + std::to_string(i) + " is outside the chain of size " + std::to_string(size()));
  if (j == i) return q[i];
  if (j == i + 1) return r[i];
  if (j + 1 == i) return p[i];
  return Rational(0);
}

TridiagonalChain chebyshev_chain(std::size_t size) {
  if (size < 2) throw DomainError("chain needs at least two states");
  TridiagonalChain c;
  c.name = "chebyshev";
  c.measure = ClassicalMeasure::chebyshev();
  c.p.assign(size, Rational(1, 2));
  c.q.assign(size, Rational(0));
  c.r.assign(size, Rational(1, 2));
  c.p[0] = Rational(0);
  c.r[0] = Rational(1);
  return c;
}

TridiagonalChain jacobi_chain(const Rational& a, const Rational& b, std::size_t size) {
  if (a <= Rational(-1) || b <= Rational(-1)) throw DomainError("Jacobi exponents must exceed -1");
  if (size < 2) throw DomainError("chain needs at least two states");
  const Rational s = a + b;
  // Monic recurrence x pi_n = pi_{n+1} + alpha_n pi_n + beta_n pi_{n-1}.
  const auto alpha = [&](std::size_t n) {
    const Rational k(static_cast<long>(2 * n));
    if (n == 0) return (b - a) / (s + 2);
    const Rational den = (k + s) * (k + s + 2);
    if (den.is_zero()) throw DomainError("degenerate Jacobi parameters");
    return (b * b - a * a) / den;
  };
  const auto beta = [&](std::size_t n) {
    const Rational nn(static_cast<long>(n));
    if (n == 1) return 4 * (1 + a) * (1 + b) / ((2 + s) * (2 + s) * (3 + s));
    const Rational k = 2 * nn + s;
    return 4 * nn * (nn + a) * (nn + b) * (nn + s) / (k * k * (k + 1) * (k - 1));
  };
  TridiagonalChain c;
  c.name = "jacobi(" + a.to_string() + "," + b.to_string() + ")";
  c.measure = ClassicalMeasure::jacobi(a, b);
  Rational prev(0), cur(1);  // pi_{n-1}(1), pi_n(1)
  for (std::size_t n = 0; n < size; ++n) {
    const Rational al = alpha(n);
    const Rational be = n == 0 ? Rational(0) : beta(n);
    const Rational next = (1 - al) * cur - be * prev;
    c.r.push_back(next / cur);
    c.q.push_back(al);
    c.p.push_back(n == 0 ? Rational(0) : be * prev / cur);
    prev = cur;
    cur = next;
  }
  return c;
}

std::vector<Real> op_sequence(const TridiagonalChain& chain, std::size_t count, const Real& x) {
  if (count == 0) throw DomainError("need at least one polynomial");
  if (count > chain.size() + 1) throw SizingError("chain too short for the requested polynomials");
  const int d = x.digits();
  std::vector<Real> P{Real(1L, d)};
  Real prev(0L, d);
  for (std::size_t n = 0; n + 1 < count; ++n) {
    Real next = (x - Real(chain.q[n], d)) * P[n];
    next.sub_mul(Real(chain.p[n], d), prev);
    next = next / Real(chain.r[n], d);
    prev = P[n];
    P.push_back(std::move(next));
  }
  return P;
}

QuadratureRule chain_quadrature(const TridiagonalChain& chain, std::size_t nodes, int digits) {
  QuadratureRule rule;
  if (chain.measure.kind == ClassicalMeasure::Kind::chebyshev) {
    // Gauss-Chebyshev: x_j = cos((2j+1) pi / (2K)), equal weights.
    const Real pi = Real::pi(digits + 10);
    for (std::size_t j = 0; j < nodes; ++j) {
      Real t = pi * Real(static_cast<long>(2 * j + 1), digits + 10) / Real(static_cast<long>(2 * nodes), digits + 10);
      Real cx(digits + 10);
      mpfr_cos(cx.raw(), t.raw(), MPFR_RNDN);
      rule.nodes.push_back(cx.with_digits(digits));
      rule.weights.push_back(Real(1L, digits) / Real(static_cast<long>(nodes), digits));
    }
    rule.p = Rational(-1, 2);
    rule.q = Rational(-1, 2);
    rule.degree_exact = 2 * nodes - 1;
    return rule;
  }
  rule = gauss_jacobi(nodes, chain.measure.p, chain.measure.q, digits);
  Real mass(0L, digits);
  for (const auto& w : rule.weights) mass += w;
  for (auto& x : rule.nodes) x = Real(2L, digits) * x - Real(1L, digits);
  for (auto& w : rule.weights) w = w / mass;
  return rule;
}

std::vector<Rational> return_probabilities(const TridiagonalChain& chain, std::size_t count) {
  // State reach after n steps is n; returning to 0 needs height <= n/2.
  if (count / 2 + 2 > chain.size()) throw SizingError("chain too short for the requested return probabilities");
  const std::size_t width = std::min(chain.size(), count / 2 + 2);
  std::vector<Rational> dist(width, Rational(0)), next(width);
  dist[0] = Rational(1);
  std::vector<Rational> w;
  for (std::size_t n = 0; n < count; ++n) {
    w.push_back(dist[0]);
    std::fill(next.begin(), next.end(), Rational(0));
    for (std::size_t i = 0; i < width; ++i) {
      if (dist[i].is_zero()) continue;
      for (std::size_t j = i == 0 ? 0 : i - 1; j <= i + 1 && j < width; ++j) next[j].add_mul(dist[i], chain.entry(i, j));
    }
    std::swap(dist, next);
  }
  return w;
}

SpectralSeries stieltjes_series(const TridiagonalChain& chain, const Real& z, std::size_t terms) {
  if (terms < 1) throw DomainError("need at least one term");
  const Real az = abs(z);
  const int d = z.digits();
  if (az <= Real(1L, d)) throw DomainError("the resolvent series needs |z| > 1");
  SpectralSeries s{return_probabilities(chain, terms), Real(0L, d), Real(0L, d)};
  Real zpow = z;  // z^{n+1}
  for (const auto& w : s.coefficients) {
    s.value += Real(w, d) / zpow;
    zpow = zpow * z;
  }
  s.remainder_bound = pow(az, -static_cast<long>(terms)) / (az - Real(1L, d));
  return s;
}

Real markov_stieltjes_ratio(const TridiagonalChain& chain, const Real& z, std::size_t n) {
  const int d = z.digits();
  if (abs(z) <= Real(1L, d)) throw DomainError("the ratio converges only for |z| > 1");
  if (n < 1) throw DomainError("n must be at least 1");
  const std::vector<Real> P = op_sequence(chain, n + 1, z);
  Real prev(0L, d), cur = Real(1L, d) / Real(chain.r[0], d);  // N_0, N_1
  for (std::size_t k = 1; k < n; ++k) {
    Real next = (z - Real(chain.q[k], d)) * cur;
    next.sub_mul(Real(chain.p[k], d), prev);
    next = next / Real(chain.r[k], d);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur / P[n];
}

Real numerator_by_quadrature(const TridiagonalChain& chain, const Real& z, std::size_t n, int digits) {
  // (P_n(z) - P_n(x)) / (z - x) has degree n - 1.
  const QuadratureRule rule = chain_quadrature(chain, n / 2 + 2, digits);
  const Real pz = op_sequence(chain, n + 1, z.with_digits(digits))[n];
  Real acc(0L, digits);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const Real px = op_sequence(chain, n + 1, rule.nodes[i])[n];
    acc.add_mul(rule.weights[i], (pz - px) / (z.with_digits(digits) - rule.nodes[i]));
  }
  return acc;
}

GramReport gram_check(const TridiagonalChain& chain, std::size_t upto, int digits) {
  const QuadratureRule rule = chain_quadrature(chain, upto + 2, digits);
  std::vector<std::vector<Real>> values;
  for (const auto& x : rule.nodes) values.push_back(op_sequence(chain, upto + 1, x));
  GramReport g;
  g.min_diagonal = INFINITY;
  for (std::size_t n = 0; n <= upto; ++n)
    for (std::size_t m = 0; m <= n; ++m) {
      Real acc(0L, digits);
      for (std::size_t i = 0; i < rule.size(); ++i) acc.add_mul(rule.weights[i], values[i][n] * values[i][m]);
      const double v = acc.to_double();
      if (n == m)
        g.min_diagonal = std::min(g.min_diagonal, v);
      else
        g.max_off_diagonal = std::max(g.max_off_diagonal, std::fabs(v));
    }
  return g;
}

}  // namespace mochain
