#include "mochain/quadrature.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "mochain/error.hpp"
#include "mochain/special.hpp"

namespace mochain {

Real QuadratureRule::apply(const std::function<Real(const Real&)>& f) const {
  Real acc = like(weights.front(), 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) acc.add_mul(weights[i], f(nodes[i]));
  return acc;
}

RecurrenceCoefficients jacobi_recurrence(std::size_t n, const Real& a, const Real& b) {
  RecurrenceCoefficients rc;
  const Real one = like(a, 1), two = like(a, 2), four = like(a, 4);
  const Real ab = a + b;
  for (std::size_t k = 0; k < n; ++k) {
    const Real kk = like(a, static_cast<long>(k));
    if (k == 0) {
      rc.alpha.push_back((b - a) / (ab + two));
      rc.beta.push_back(like(a, 0));
      continue;
    }
    const Real s = two * kk + ab;
    rc.alpha.push_back((b * b - a * a) / (s * (s + two)));
    if (k == 1) {
      // Closed form with the removable 0/0 at a+b = -1 cancelled.
      const Real t = ab + two;
      rc.beta.push_back(four * (one + a) * (one + b) / (t * t * (ab + like(a, 3))));
    } else {
      rc.beta.push_back(four * kk * (kk + a) * (kk + b) * (kk + ab) / (s * s * (s + one) * (s - one)));
    }
  }
  return rc;
}

TridiagonalEigen symmetric_tridiagonal_eigen(std::vector<Real> d, std::vector<Real> e) {
  const std::size_t n = d.size();
  if (n == 0) return {};
  const int digits = d.front().digits();
  const Real zero = like(d.front(), 0), one = like(d.front(), 1), two = like(d.front(), 2);
  const Real eps = pow(like(d.front(), 10), -static_cast<long>(digits));
  e.resize(n, zero);
  e[n - 1] = zero;
  // z holds the first row of the accumulated eigenvector matrix.
  std::vector<Real> z(n, zero);
  z[0] = one;

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    for (;;) {
      std::size_t m = l;
      for (; m + 1 < n; ++m) {
        const Real dd = abs(d[m]) + abs(d[m + 1]);
        if (abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (++iter > 80) throw NumericError("tridiagonal eigensolver did not converge");
      // Implicit QL step with Wilkinson shift.
      Real g = (d[l + 1] - d[l]) / (two * e[l]);
      Real r = sqrt(g * g + one);
      g = d[m] - d[l] + e[l] / (g + (g.sign() >= 0 ? abs(r) : -abs(r)));
      Real s = one, c = one, p = zero;
      bool deflated = false;
      for (std::size_t i = m; i-- > l;) {
        Real f = s * e[i];
        const Real b = c * e[i];
        r = sqrt(f * f + g * g);
        e[i + 1] = r;
        if (r.is_zero()) {
          d[i + 1] -= p;
          e[m] = zero;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + two * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        f = z[i + 1];
        z[i + 1] = s * z[i] + c * f;
        z[i] = c * z[i] - s * f;
      }
      if (deflated) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = zero;
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return d[i] < d[j]; });
  TridiagonalEigen out;
  for (std::size_t i : order) {
    out.values.push_back(d[i]);
    out.first_components_squared.push_back(z[i] * z[i]);
  }
  return out;
}

QuadratureRule gauss_jacobi(std::size_t n, const Rational& p, const Rational& q, int digits) {
  if (n == 0) throw DomainError("gauss_jacobi needs at least one node");
  if (p <= Rational(-1) || q <= Rational(-1))
    throw DomainError("gauss_jacobi needs exponents > -1 (got p=" + p.to_string() + ", q=" + q.to_string() + ")");
  const int work = digits + 10;
  const Real a(p, work), b(q, work);
  const RecurrenceCoefficients rc = jacobi_recurrence(n, a, b);
  const Real one = like(a, 1), half(Rational(1, 2), work), quarter(Rational(1, 4), work);

  // Map t in [-1,1] to x = (1+t)/2.
  std::vector<Real> diag, off;
  for (std::size_t k = 0; k < n; ++k) diag.push_back((one + rc.alpha[k]) * half);
  for (std::size_t k = 1; k < n; ++k) off.push_back(sqrt(rc.beta[k] * quarter));
  TridiagonalEigen eig = symmetric_tridiagonal_eigen(std::move(diag), std::move(off));

  const Real mass = beta(b + one, a + one);
  QuadratureRule rule;
  rule.p = p;
  rule.q = q;
  rule.degree_exact = static_cast<int>(2 * n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    rule.nodes.push_back(eig.values[k].with_digits(digits));
    rule.weights.push_back((mass * eig.first_components_squared[k]).with_digits(digits));
  }
  return rule;
}

IntegrationResult tanh_sinh(const std::function<Real(const Real&, const Real&)>& f, const Real& tolerance,
                            int digits, int max_levels) {
  const Real zero(0L, digits), one(1L, digits), two(2L, digits);
  const Real half_pi = Real::pi(digits) / two;
  const Real tiny = pow(like(one, 10), -static_cast<long>(digits));

  // Contribution of abscissa t: weight * (f(x) + f(1-x)) pairs at +-t.
  auto point = [&](const Real& t, bool mirror) {
    const Real s = half_pi * (exp(t) - exp(-t));  // pi/2 * 2 sinh t
    const Real es = exp(s);
    const Real x = one / (one + es);              // tends to 0 as t grows
    const Real xm = es / (one + es);              // 1 - x
    const Real cosh_t = (exp(t) + exp(-t)) / two;
    const Real w = half_pi * two * cosh_t * x * xm;
    if (x.is_zero() || xm.is_zero() || w < tiny * tiny) return zero;
    Real v = w * f(x, xm);
    if (mirror) v += w * f(xm, x);
    return v;
  };

  Real h = one;
  // Range of t where weights are above underflow: |t| <= t_max.
  const Real t_max = log(like(one, 4) * log(like(one, 10)) * like(one, digits) / Real::pi(digits) * two) + one;
  Real sum = point(zero, false);
  for (Real t = h; t <= t_max; t += h) sum += point(t, true);
  Real estimate = sum * h;
  IntegrationResult res{estimate, like(one, 0), 0, false};
  for (int level = 1; level <= max_levels; ++level) {
    h = h / two;
    // New abscissae are the odd multiples of h.
    for (Real t = h; t <= t_max; t += two * h) sum += point(t, true);
    const Real next = sum * h;
    res.error_estimate = abs(next - estimate);
    res.levels = level;
    estimate = next;
    res.value = next;
    if (level >= 3 && res.error_estimate <= tolerance * max(abs(next), one)) {
      res.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace mochain
