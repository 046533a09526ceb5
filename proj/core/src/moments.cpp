#include "mochain/moments.hpp"

#include <algorithm>
#include <vector>

#include "mochain/error.hpp"
#include "mochain/special.hpp"

namespace mochain {

const char* to_string(Mode m) { return m == Mode::exact ? "exact" : "numeric"; }

SymbolicUnit jp_mass_ratio(const JacobiPineiroParams& params, int digits) {
  SymbolicUnit u;
  u.name = "u";
  u.description = "B(alpha2+1, alpha0+1) / B(alpha1+1, alpha0+1)";
  const Real one(1L, digits + 10);
  const Real a0 = like(one, params.alpha0) + one;
  u.value = (beta(like(one, params.alpha2) + one, a0) / beta(like(one, params.alpha1) + one, a0)).with_digits(digits);
  if (params.alpha0.is_integer() && params.alpha0.sign() >= 0) {
    // B(x, m+1) = m! / (x)_{m+1}, so the ratio is a Pochhammer quotient.
    const unsigned long m1 = params.alpha0.num().get_ui() + 1;
    u.exact = pochhammer(params.alpha1 + Rational(1), m1) / pochhammer(params.alpha2 + Rational(1), m1);
  }
  return u;
}

SymbolicUnit right_endpoint_ratio(const WeightSystem& system, int digits) {
  switch (system.kind()) {
    case WeightKind::jacobi_pineiro: {
      // p2/p1 -> (1/B2) / (1/B1) = 1/u at x = 1.
      const SymbolicUnit u = jp_mass_ratio(system.jp(), digits);
      SymbolicUnit v;
      v.name = "v";
      v.description = "B(alpha1+1, alpha0+1) / B(alpha2+1, alpha0+1)";
      v.value = Real(1L, digits) / u.value;
      if (u.exact) v.exact = u.exact->reciprocal();
      return v;
    }
    case WeightKind::hypergeometric: {
      // Both omegas behave like K (1-x)^(delta-1) at 1 with K2/K1 = c/b.
      const auto& p = system.hypergeometric();
      SymbolicUnit v;
      v.name = "v";
      v.description = "c / b";
      v.exact = p.c / p.b;
      v.value = Real(*v.exact, digits);
      return v;
    }
    case WeightKind::classical_jacobi: break;
  }
  throw UnsupportedError("single-weight systems have no second weight");
}

MomentMatrix<Rational> build_jp_moments(const JacobiPineiroParams& params, std::size_t n) {
  if (n < 2) throw DomainError("moment matrix size must be at least 2");
  MomentMatrix<Rational> g;
  g.layout = {n, true};
  g.mode = Mode::exact;
  g.entries = Matrix<Rational>(n, n);
  g.normalization = "column family i divided by B(alpha_i+1, alpha0+1)";
  g.odd_unit = jp_mass_ratio(params);
  // Column recursion: each step multiplies by (p+alpha+1)/(p+alpha+alpha0+2).
  const std::size_t max_power = n - 1 + (n - 1) / 2;
  std::vector<Rational> m1(max_power + 1), m2(max_power + 1);
  m1[0] = m2[0] = Rational(1);
  for (std::size_t p = 0; p < max_power; ++p) {
    const Rational pp(static_cast<long>(p));
    m1[p + 1] = m1[p] * (pp + params.alpha1 + Rational(1)) / (pp + params.alpha1 + params.alpha0 + Rational(2));
    m2[p + 1] = m2[p] * (pp + params.alpha2 + Rational(1)) / (pp + params.alpha2 + params.alpha0 + Rational(2));
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t p = j + g.layout.power(k);
      g.entries(j, k) = g.layout.weight_index(k) == 1 ? m1[p] : m2[p];
    }
  return g;
}

MomentMatrix<Rational> build_ll_moments_exact(const HypergeometricParams& params, std::size_t n) {
  if (n < 2) throw DomainError("moment matrix size must be at least 2");
  MomentMatrix<Rational> g;
  g.layout = {n, true};
  g.mode = Mode::exact;
  g.entries = Matrix<Rational>(n, n);
  g.normalization = "none (each omega is a probability density)";
  const HypergeometricParams s = params.shifted();
  const std::size_t max_power = n - 1 + (n - 1) / 2;
  std::vector<Rational> m1(max_power + 1), m2(max_power + 1);
  m1[0] = m2[0] = Rational(1);
  for (std::size_t p = 0; p < max_power; ++p) {
    const Rational pp(static_cast<long>(p));
    m1[p + 1] = m1[p] * (params.a + pp) * (params.b + pp) / ((params.c + pp) * (params.d + pp));
    m2[p + 1] = m2[p] * (s.a + pp) * (s.b + pp) / ((s.c + pp) * (s.d + pp));
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t p = j + g.layout.power(k);
      g.entries(j, k) = g.layout.weight_index(k) == 1 ? m1[p] : m2[p];
    }
  return g;
}

namespace {

// Taylor coefficients of a series given by its term ratio.
template <class Ratio>
std::vector<Real> ratio_series(Ratio ratio, std::size_t terms, const Real& proto) {
  std::vector<Real> t{like(proto, 1)};
  t.reserve(terms);
  for (std::size_t n = 1; n < terms; ++n) t.push_back(t.back() * ratio(static_cast<long>(n - 1)));
  return t;
}

std::vector<Real> convolve(const std::vector<Real>& f, const std::vector<Real>& e) {
  std::vector<Real> c(f.size(), like(f.front(), 0));
  for (std::size_t n = 0; n < f.size(); ++n)
    for (std::size_t i = 0; i <= n; ++i) c[n].add_mul(f[i], e[n - i]);
  return c;
}

// Sum_n c_n h^(s+n) / (s+n); stops once terms stay below eps relative.
Real power_integral(const std::vector<Real>& c, const Real& s, const Real& h, const Real& eps) {
  Real sum = like(s, 0);
  Real hp = pow(h, s);
  int small = 0;
  for (std::size_t n = 0; n < c.size(); ++n) {
    const Real term = c[n] * hp / (s + like(s, static_cast<long>(n)));
    sum += term;
    if (abs(term) <= eps * abs(sum)) {
      if (++small >= 4) return sum;
    } else {
      small = 0;
    }
    hp *= h;
  }
  throw NumericError("moment series did not converge");
}

}  // namespace

std::vector<Real> ll_moments_numeric(const HypergeometricParams& params, std::size_t count, int digits) {
  if ((params.b - params.a).is_integer())
    throw UnsupportedError("numeric hypergeometric moments need b - a non-integer (connection formula)");
  if (count == 0) return {};
  // Consecutive powers come from repeated differencing, which costs up to
  // log10(2) digits per power.
  const int work = digits + 15 + static_cast<int>(count / 2);
  const Real one(1L, work), half(Rational(1, 2), work);
  const Real eps = pow(Real(10L, work), -static_cast<long>(digits + 5));
  const Real a(params.a, work), b(params.b, work), c(params.c, work), d(params.d, work);
  const Real delta(params.delta, work);
  const Real al = c - b, be = d - b;  // 2F1(al, be; delta; 1-x)
  const Real ba = b - a;
  // Terms decay like 2^-n times a polynomial, and differencing adds 2^k.
  const auto terms = static_cast<std::size_t>(3.33 * (work + 10)) + count + 64;

  // Right half, y = 1-x in [0, 1/2]: y^(delta-1) (1-y)^(k+a-1) F(y). The
  // factor for k+1 is (1-y) times the one for k.
  std::vector<Real> right = convolve(
      ratio_series([&](long m) { const Real mm(m, work); return (al + mm) * (be + mm) / ((delta + mm) * (mm + one)); },
                   terms, one),
      ratio_series([&](long j) { const Real jj(j, work); return (jj + one - a) / (jj + one); }, terms, one));

  // Left half via the connection formula, x in [0, 1/2]; coefficients do
  // not depend on the power.
  const auto e_left =
      ratio_series([&](long j) { const Real jj(j, work); return (jj + one - delta) / (jj + one); }, terms, one);
  const auto left1 = convolve(
      ratio_series([&](long m) { const Real mm(m, work); return (al + mm) * (be + mm) / ((one - ba + mm) * (mm + one)); },
                   terms, one),
      e_left);
  const auto left2 = convolve(
      ratio_series([&](long m) { const Real mm(m, work); return (d - a + mm) * (c - a + mm) / ((one + ba + mm) * (mm + one)); },
                   terms, one),
      e_left);
  const Real g1 = gamma(delta) * gamma(ba) / (gamma(d - a) * gamma(c - a));
  const Real g2 = gamma(delta) * gamma(-ba) / (gamma(al) * gamma(be));
  const Real norm = exp(log_gamma(c) + log_gamma(d) - log_gamma(a) - log_gamma(b) - log_gamma(delta));

  std::vector<Real> moments;
  moments.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    if (k > 0)
      for (std::size_t n = right.size() - 1; n > 0; --n) right[n] -= right[n - 1];
    const Real kk(static_cast<long>(k), work);
    const Real value = g1 * power_integral(left1, kk + a, half, eps) + g2 * power_integral(left2, kk + b, half, eps) +
                       power_integral(right, delta, half, eps);
    moments.push_back((norm * value).with_digits(digits));
  }
  return moments;
}

Real ll_moment_numeric(const HypergeometricParams& params, unsigned long k, int digits) {
  return ll_moments_numeric(params, k + 1, digits).back();
}

MomentMatrix<Real> build_ll_moments(const HypergeometricParams& params, std::size_t n, int digits) {
  if (n < 2) throw DomainError("moment matrix size must be at least 2");
  MomentMatrix<Real> g;
  g.layout = {n, true};
  g.mode = Mode::numeric;
  g.digits = digits;
  g.normalization = "none (each omega is a probability density)";
  const std::size_t max_power = n - 1 + (n - 1) / 2;
  const auto m1 = ll_moments_numeric(params, max_power + 1, digits);
  const auto m2 = ll_moments_numeric(params.shifted(), max_power + 1, digits);
  g.entries = Matrix<Real>(n, n, Real(digits));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t p = j + g.layout.power(k);
      g.entries(j, k) = g.layout.weight_index(k) == 1 ? m1[p] : m2[p];
    }
  return g;
}

std::vector<Rational> classical_moments(const ClassicalMeasure& measure, std::size_t count) {
  std::vector<Rational> m;
  m.reserve(count);
  if (measure.kind == ClassicalMeasure::Kind::chebyshev) {
    // Arcsine measure on [-1,1]: m_{2j} = C(2j, j) / 4^j, odd moments vanish.
    Rational even(1);
    for (std::size_t k = 0; k < count; ++k) {
      if (k % 2 == 1) {
        m.push_back(Rational(0));
        continue;
      }
      if (k > 0) {
        const long j = static_cast<long>(k / 2);
        even *= Rational(2 * j - 1, 2 * j);  // C(2j,j)/4^j ratio
      }
      m.push_back(even);
    }
    return m;
  }
  for (std::size_t k = 0; k < count; ++k) m.push_back(beta_ratio(k, measure.q, measure.p));
  return m;
}

MomentMatrix<Rational> build_classical_moments(const ClassicalMeasure& measure, std::size_t n) {
  if (n < 2) throw DomainError("moment matrix size must be at least 2");
  MomentMatrix<Rational> g;
  g.layout = {n, false};
  g.mode = Mode::exact;
  const std::vector<Rational> m = classical_moments(measure, 2 * n - 1);
  g.entries = Matrix<Rational>(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) g.entries(j, k) = m[j + k];
  if (measure.kind == ClassicalMeasure::Kind::chebyshev) {
    g.normalization = "arcsine probability measure 1/(pi sqrt(1-x^2))";
    g.support_lo = Rational(-1);
    g.affine_map = "x' = 2x - 1 maps [0,1] onto the reported support [-1,1]";
  } else {
    g.normalization = "divided by B(q+1, p+1)";
    g.affine_map = "identity";
  }
  return g;
}

MomentMatrix<Real> to_numeric(const MomentMatrix<Rational>& g, int digits) {
  MomentMatrix<Real> out;
  out.layout = g.layout;
  out.mode = Mode::numeric;
  out.digits = digits;
  out.normalization = g.normalization;
  out.odd_unit = g.odd_unit;
  out.support_lo = g.support_lo;
  out.support_hi = g.support_hi;
  out.affine_map = g.affine_map;
  const std::size_t n = g.size();
  out.entries = Matrix<Real>(n, n, Real(digits));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) out.entries(j, k) = Real(g.entries(j, k), digits);
  return out;
}

}  // namespace mochain
