#include "mochain/special.hpp"

#include <algorithm>
#include <cmath>

#include "mochain/error.hpp"

namespace mochain {

Rational pochhammer(const Rational& x, unsigned long k) {
  Rational r(1);
  Rational f = x;
  for (unsigned long j = 0; j < k; ++j) {
    r *= f;
    f += Rational(1);
  }
  return r;
}

Real pochhammer(const Real& x, unsigned long k) {
  Real r = like(x, 1);
  Real f = x;
  const Real one = like(x, 1);
  for (unsigned long j = 0; j < k; ++j) {
    r *= f;
    f += one;
  }
  return r;
}

Real log_gamma(const Real& x) {
  if (x.sign() <= 0) throw DomainError("log_gamma needs a positive argument, got " + x.to_string(12));
  Real r(x.digits());
  mpfr_lngamma(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real beta(const Real& a, const Real& b) {
  if (a.sign() <= 0 || b.sign() <= 0) throw DomainError("beta needs positive arguments");
  return exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

Rational beta_ratio(unsigned long k, const Rational& a, const Rational& b) {
  if (a <= Rational(-1) || b <= Rational(-1))
    throw DomainError("beta_ratio needs a, b > -1 (got a=" + a.to_string() + ", b=" + b.to_string() + ")");
  Rational r(1);
  for (unsigned long j = 0; j < k; ++j) {
    const Rational jj(static_cast<long>(j));
    r *= (jj + a + Rational(1)) / (jj + a + b + Rational(2));
  }
  return r;
}

namespace {

constexpr long kTermCap = 200000;
constexpr int kGuardDigits = 12;

bool is_nonpositive_integer(const Real& x) {
  return x.sign() <= 0 && mpfr_integer_p(x.raw());
}

// Parameters reach here rounded from rationals, so c - a - b = 0 may carry
// a few ulps of noise; treat anything that close to an integer as one.
bool is_integer(const Real& x) {
  if (mpfr_integer_p(x.raw())) return true;
  const Real gap = abs(x - round(x));
  return gap < pow(like(x, 10), -static_cast<long>(x.digits() - 4));
}

// Direct summation for 0 <= z <= 1/2 or terminating series.
Hyp2f1Result series(const Real& a, const Real& b, const Real& c, const Real& z, int out_digits) {
  const Real eps = pow(like(a, 10), -static_cast<long>(out_digits + 2));
  const Real one = like(a, 1);
  Real term = one;
  Real sum = one;
  Hyp2f1Result res{one, like(a, 0), 1, false};
  if (z.is_zero()) return res;
  for (long k = 0; k < kTermCap; ++k) {
    const Real kk = like(a, k);
    term = term * (a + kk) * (b + kk) / ((c + kk) * (kk + one)) * z;
    sum += term;
    res.terms = k + 2;
    if (term.is_zero()) {  // terminating series
      res.value = sum;
      res.error_bound = like(a, 0);
      return res;
    }
    const long m = k + 1;  // index of the next term
    const Real mm = like(a, m);
    // Ratio bound valid once every factor is positive from index m onwards.
    if ((a + mm).sign() > 0 && (b + mm).sign() > 0 && (c + mm).sign() > 0) {
      const Real ratio = z * (one + abs(a - c) / (c + mm)) * (one + abs(b - one) / (mm + one));
      if (ratio < one) {
        const Real next = abs(term * (a + mm) * (b + mm) / ((c + mm) * (mm + one)) * z);
        const Real tail = next / (one - ratio);
        if (tail <= eps * abs(sum) || tail.is_zero()) {
          res.value = sum;
          res.error_bound = tail;
          return res;
        }
      }
    }
  }
  throw NumericError("2F1 series did not reach the requested precision within the term cap (partial value " +
                         sum.to_string(15) + ")",
                     0.0);
}

Real gauss_sum(const Real& a, const Real& b, const Real& c) {
  return gamma(c) * gamma(c - a - b) / (gamma(c - a) * gamma(c - b));
}

}  // namespace

Hyp2f1Result hyp2f1(const Real& a1, const Real& a2, const Real& b1, const Real& z) {
  const int out = std::min({a1.digits(), a2.digits(), b1.digits(), z.digits()});
  const int work = out + kGuardDigits;
  const Real a = a1.with_digits(work), b = a2.with_digits(work), c = b1.with_digits(work);
  const Real x = z.with_digits(work);
  const Real one = like(a, 1);

  if (is_nonpositive_integer(c)) throw DomainError("2F1 lower parameter is a nonpositive integer");
  if (x.sign() < 0 || x > one) throw DomainError("2F1 argument outside [0,1]");

  auto finish = [out](Hyp2f1Result r) {
    r.value = r.value.with_digits(out);
    r.error_bound = r.error_bound.with_digits(out);
    return r;
  };

  const bool terminating = is_nonpositive_integer(a) || is_nonpositive_integer(b);
  if (x == one) {
    if (terminating) return finish(series(a, b, c, x, out));
    const Real s = (c - a - b).with_digits(out);
    if (s.sign() <= 0 || (is_integer(s) && round(s).sign() == 0))
      throw DomainError("2F1 diverges at z = 1: Gauss condition b1 - a1 - a2 > 0 fails");
    return finish(Hyp2f1Result{gauss_sum(a, b, c), like(a, 0), 0, true});
  }
  const Real half(Rational(1, 2), work);
  if (x <= half || terminating) return finish(series(a, b, c, x, out));

  const Real s = c - a - b;
  if (is_integer(s.with_digits(out))) {
    // Degenerate connection case: fall back to the slowly converging series.
    return finish(series(a, b, c, x, out));
  }
  const Real y = one - x;
  Hyp2f1Result f1 = series(a, b, one - s, y, out);
  Hyp2f1Result f2 = series(c - a, c - b, one + s, y, out);
  const Real k1 = gauss_sum(a, b, c);
  const Real k2 = gamma(c) * gamma(-s) / (gamma(a) * gamma(b));
  const Real ys = pow(y, s);
  Hyp2f1Result r;
  r.value = k1 * f1.value + k2 * ys * f2.value;
  r.error_bound = abs(k1) * f1.error_bound + abs(k2 * ys) * f2.error_bound;
  r.terms = f1.terms + f2.terms;
  return finish(std::move(r));
}

}  // namespace mochain
