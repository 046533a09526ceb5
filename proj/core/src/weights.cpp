#include "mochain/weights.hpp"

#include <cmath>

#include "mochain/error.hpp"
#include "mochain/quadrature.hpp"
#include "mochain/special.hpp"

namespace mochain {

namespace {

bool in_nonpositive_integers(const Rational& x) { return x.is_integer() && x.sign() <= 0; }

}  // namespace

JacobiPineiroParams JacobiPineiroParams::make(Rational alpha1, Rational alpha2, Rational alpha0) {
  const Rational m1(-1);
  if (alpha0 <= m1 || alpha1 <= m1 || alpha2 <= m1)
    throw DomainError("Jacobi-Pineiro exponents must exceed -1");
  if ((alpha1 - alpha2).is_integer())
    throw DomainError("alpha1 - alpha2 must not be an integer (got " + (alpha1 - alpha2).to_string() + ")");
  return {std::move(alpha1), std::move(alpha2), std::move(alpha0)};
}

std::string JacobiPineiroParams::to_string() const {
  return "JP(alpha1=" + alpha1.to_string() + ", alpha2=" + alpha2.to_string() + ", alpha0=" + alpha0.to_string() + ")";
}

HypergeometricParams HypergeometricParams::make(Rational a, Rational b, Rational c, Rational d) {
  const Rational delta = c + d - a - b;
  if (a.sign() <= 0 || b.sign() <= 0 || delta.sign() <= 0)
    throw DomainError("hypergeometric weights need a, b, delta > 0 (delta = " + delta.to_string() + ")");
  if (in_nonpositive_integers(d - a) || in_nonpositive_integers(d - b) ||
      in_nonpositive_integers(c + Rational(1) - a) || in_nonpositive_integers(c - b))
    throw DomainError("d-a, d-b, c+1-a and c-b must avoid the nonpositive integers");
  return {std::move(a), std::move(b), std::move(c), std::move(d), delta};
}

HypergeometricParams HypergeometricParams::uniform_tuple() {
  return make(Rational(4, 3), Rational(5, 3), Rational(2), Rational(5, 2));
}

bool HypergeometricParams::is_uniform_tuple() const {
  return a == Rational(4, 3) && b == Rational(5, 3) && c == Rational(2) && d == Rational(5, 2);
}

std::string HypergeometricParams::to_string() const {
  return "LL(a=" + a.to_string() + ", b=" + b.to_string() + ", c=" + c.to_string() + ", d=" + d.to_string() +
         ", delta=" + delta.to_string() + ")";
}

const char* to_string(WeightKind kind) {
  switch (kind) {
    case WeightKind::jacobi_pineiro: return "jacobi_pineiro";
    case WeightKind::hypergeometric: return "hypergeometric";
    case WeightKind::classical_jacobi: return "classical_jacobi";
  }
  return "unknown";
}

const JacobiPineiroParams& WeightSystem::jp() const {
  if (auto* p = std::get_if<JacobiPineiroParams>(&params_)) return *p;
  throw UnsupportedError("weight system is not Jacobi-Pineiro");
}

const HypergeometricParams& WeightSystem::hypergeometric() const {
  if (auto* p = std::get_if<HypergeometricParams>(&params_)) return *p;
  throw UnsupportedError("weight system is not hypergeometric");
}

const ClassicalJacobiParams& WeightSystem::classical() const {
  if (auto* p = std::get_if<ClassicalJacobiParams>(&params_)) return *p;
  throw UnsupportedError("weight system is not a classical Jacobi weight");
}

std::string WeightSystem::describe() const {
  switch (kind()) {
    case WeightKind::jacobi_pineiro: return jp().to_string();
    case WeightKind::hypergeometric: return hypergeometric().to_string();
    case WeightKind::classical_jacobi:
      return "Jacobi(p=" + classical().p.to_string() + ", q=" + classical().q.to_string() + ")";
  }
  return {};
}

Real jp_weight(const JacobiPineiroParams& params, int which, const Real& x) {
  if (which != 1 && which != 2) throw DomainError("weight index must be 1 or 2");
  const Rational& ax = which == 1 ? params.alpha1 : params.alpha2;
  const Real one = like(x, 1);
  if (x.sign() < 0 || x > one) throw DomainError("jp_weight: x outside [0,1]");
  if ((x.is_zero() && ax.sign() < 0) || (x == one && params.alpha0.sign() < 0))
    throw DomainError("jp_weight: weight is unbounded at this endpoint");
  return pow(x, like(x, ax)) * pow(one - x, like(x, params.alpha0));
}

Real ll_weight_series(const HypergeometricParams& params, bool shifted, const Real& x) {
  const HypergeometricParams p = shifted ? params.shifted() : params;
  const Real one = like(x, 1);
  if (x.sign() <= 0 || x > one) throw DomainError("ll_weight_series: x outside (0,1]");
  const Real a = like(x, p.a), b = like(x, p.b), c = like(x, p.c), d = like(x, p.d);
  const Real delta = like(x, p.delta);
  if (x == one) {
    if (p.delta > Rational(1)) return like(x, 0);
    if (p.delta == Rational(1)) {
      const Real f = hyp2f1(c - b, d - b, delta, like(x, 0)).value;
      return exp(log_gamma(c) + log_gamma(d) - log_gamma(a) - log_gamma(b) - log_gamma(delta)) * f;
    }
    throw DomainError("ll_weight_series: weight is unbounded at x = 1");
  }
  const Real y = one - x;
  // hyp2f1 diverges at y = 1 only in the limit x -> 0, excluded above.
  const Real f = hyp2f1(c - b, d - b, delta, y).value;
  const Real log_norm = log_gamma(c) + log_gamma(d) - log_gamma(a) - log_gamma(b) - log_gamma(delta);
  return exp(log_norm) * pow(x, a - one) * pow(y, delta - one) * f;
}

Real ll_weight_closed(int which, const Real& x) {
  if (which != 1 && which != 2) throw DomainError("weight index must be 1 or 2");
  const Real one = like(x, 1);
  if (x.sign() < 0 || x > one) throw DomainError("ll_weight_closed: x outside [0,1]");
  const Real s = sqrt(one - x);
  const Real u = cbrt(one + s), v = cbrt(one - s);
  const Real root3 = sqrt(like(x, 3)), pi = Real::pi(x.digits());
  if (which == 1) return like(x, 81) * root3 / (like(x, 16) * pi) * cbrt(x) * (u - v);
  return like(x, 243) * root3 / (like(x, 160) * pi) * cbrt(x) * (pow(u, 4) - pow(v, 4));
}

const char* to_string(ChainClass c) {
  switch (c) {
    case ChainClass::recurrent: return "recurrent";
    case ChainClass::transient: return "transient";
    case ChainClass::boundary_flagged: return "boundary_flagged";
  }
  return "unknown";
}

Classification classify_chain(const WeightSystem& system) {
  switch (system.kind()) {
    case WeightKind::jacobi_pineiro: {
      const Rational& a0 = system.jp().alpha0;
      if (a0.sign() < 0) return {ChainClass::recurrent, "alpha0 < 0: integral of w1/(1-x) diverges", {}};
      if (a0.sign() > 0) return {ChainClass::transient, "alpha0 > 0: integral of w1/(1-x) converges", {}};
      return {ChainClass::boundary_flagged,
              "alpha0 = 0: criteria disagree",
              {"integral test: w1/(1-x) ~ 1/(1-x) diverges logarithmically, so recurrent",
               "closed-form rule: transient for alpha0 >= 0"}};
    }
    case WeightKind::hypergeometric: {
      const Rational& delta = system.hypergeometric().delta;
      if (delta <= Rational(1))
        return {ChainClass::recurrent, "0 < delta <= 1 (delta = " + delta.to_string() + ")", {}};
      return {ChainClass::transient, "delta > 1 (delta = " + delta.to_string() + ")", {}};
    }
    case WeightKind::classical_jacobi: break;
  }
  throw UnsupportedError("classify_chain applies to Jacobi-Pineiro and hypergeometric systems only");
}

DivergenceProbe divergence_probe(const WeightSystem& system, int digits) {
  // Integrate w1(1-y)/y over y in [eps, 1/2] with y = exp(s), so the
  // integrand becomes w1(1 - e^s) on a finite s-interval.
  auto w1 = [&](const Real& x) -> Real {
    switch (system.kind()) {
      case WeightKind::jacobi_pineiro: return jp_weight(system.jp(), 1, x);
      case WeightKind::hypergeometric: return ll_weight_series(system.hypergeometric(), false, x);
      case WeightKind::classical_jacobi: break;
    }
    throw UnsupportedError("divergence probe applies to Jacobi-Pineiro and hypergeometric systems only");
  };
  DivergenceProbe probe;
  const Real one(1L, digits);
  const Real upper = log(Real(Rational(1, 2), digits));
  for (int e : {2, 4, 8, 16}) {
    const Real lower = log(pow(Real(10L, digits), -static_cast<long>(e)));
    const Real span = upper - lower;
    auto f = [&](const Real& t, const Real&) { return w1(one - exp(lower + span * t)) * span; };
    const IntegrationResult r = tanh_sinh(f, pow(Real(10L, digits), -8L), digits, 8);
    probe.eps.push_back(std::pow(10.0, -e));
    probe.partial_integrals.push_back(r.value);
  }
  const auto& v = probe.partial_integrals;
  // Convergent tails shrink geometrically; log or power divergence does not.
  const Real d1 = v[2] - v[1], d2 = v[3] - v[2];
  probe.growing = d2 > d1 * Real(0.5, digits);
  return probe;
}

}  // namespace mochain
