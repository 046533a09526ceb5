#include "mochain/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "mochain/error.hpp"
#include "mochain/special.hpp"

namespace mochain {

const char* to_string(Normalization n) {
  switch (n) {
    case Normalization::automatic: return "auto";
    case Normalization::oracle: return "oracle";
    case Normalization::toeplitz: return "toeplitz";
  }
  return "unknown";
}

Normalization parse_normalization(const std::string& s) {
  if (s == "auto") return Normalization::automatic;
  if (s == "oracle") return Normalization::oracle;
  if (s == "toeplitz") return Normalization::toeplitz;
  throw ParseError("unknown normalization '" + s + "' (expected auto, oracle or toeplitz)");
}

bool ChainModel::all_checks_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.passed; });
}

namespace {

// Explicit polynomial coefficients are cubic to form; long truncations keep
// a leading block, which is all the orthogonality and evolution checks read.
std::size_t coefficient_rows_for(std::size_t m) { return m <= 160 ? m : 64; }

struct NumericRun {
  BandedHessenberg<Real> H;
  PolynomialFamily<Real> family;
  double off_band_max = 0.0;
};

NumericRun numeric_run(const WeightSystem& system, std::size_t m, int digits) {
  MomentMatrix<Real> g;
  if (system.kind() == WeightKind::jacobi_pineiro)
    g = to_numeric(build_jp_moments(system.jp(), m), digits);
  else
    g = build_ll_moments(system.hypergeometric(), m, digits);
  const GaussBorelFactorization<Real> f = factorize(g, coefficient_rows_for(m));
  NumericRun run;
  run.H = extract_hessenberg(f, run.off_band_max);
  // q_n cancels heavily against the unit, so it is evaluated at run precision.
  run.family = polynomial_family(f, right_endpoint_ratio(system, digits));
  return run;
}

double max_relative_gap(const std::vector<Real>& x, const std::vector<Real>& y, std::size_t count) {
  double worst = 0.0;
  count = std::min({count, x.size(), y.size()});
  for (std::size_t i = 0; i < count; ++i) {
    const int d = std::min(x[i].digits(), y[i].digits());
    const Real floor = pow(Real(10L, d), -static_cast<long>(2 * d));
    const Real gap = relative_difference(x[i], y[i].with_digits(x[i].digits()), floor);
    worst = std::max(worst, gap.to_double());
  }
  return worst;
}

double run_gap(const NumericRun& lo, const NumericRun& hi, std::size_t rows) {
  double gap = 0.0;
  gap = std::max(gap, max_relative_gap(lo.H.a, hi.H.a, rows));
  gap = std::max(gap, max_relative_gap(lo.H.b, hi.H.b, rows));
  gap = std::max(gap, max_relative_gap(lo.H.c, hi.H.c, rows));
  gap = std::max(gap, max_relative_gap(lo.family.B_at_1, hi.family.B_at_1, rows + 1));
  gap = std::max(gap, max_relative_gap(lo.family.q_at_1, hi.family.q_at_1, rows + 1));
  return gap;
}

template <class T>
std::optional<T> toeplitz_kappa(const BandedHessenberg<T>& H, const T& tolerance) {
  const T three = like(H.c.front(), 3);
  const T kappa = H.c.front() / three;
  for (std::size_t n = 0; n < H.size(); ++n) {
    if (abs(H.c[n] - three * kappa) > tolerance) return std::nullopt;
    if (n >= 1 && abs(H.b[n] - three * kappa * kappa) > tolerance) return std::nullopt;
    if (n >= 2 && abs(H.a[n] - kappa * kappa * kappa) > tolerance) return std::nullopt;
  }
  return kappa;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

void add_check(ChainModel& m, std::string name, bool ok, std::string detail = {}) {
  m.checks.push_back({std::move(name), ok, std::move(detail)});
}

}  // namespace

ChainModel build_model(const WeightSystem& system, const ModelOptions& options) {
  if (system.kind() == WeightKind::classical_jacobi)
    throw UnsupportedError("single-weight systems are handled by the classical module");
  if (options.size < 2) throw DomainError("truncation size must be at least 2");
  if (options.digits < Real::kMinDigits) throw DomainError("digits must be at least 16");

  ChainModel model{.system = system, .options = options};
  model.size = options.size;
  const std::size_t m = options.size + 3;  // moment size: Hessenberg rows 0..N+1 exact
  model.rho = right_endpoint_ratio(system, std::max(64, options.digits + 20));

  if (options.mode == Mode::exact) {
    const MomentMatrix<Rational> g = system.kind() == WeightKind::jacobi_pineiro
                                         ? build_jp_moments(system.jp(), m)
                                         : build_ll_moments_exact(system.hypergeometric(), m);
    model.exact_factorization = factorize(g, coefficient_rows_for(m));
    model.exact_H = extract_hessenberg(*model.exact_factorization);
    model.exact_family = polynomial_family(*model.exact_factorization, model.rho);
    model.digits = options.digits;
    model.achieved_digits = std::numeric_limits<double>::infinity();
    model.H = to_numeric(*model.exact_H, model.digits);
    model.family = to_numeric(*model.exact_family, model.rho, model.digits);

    const auto er = eigen_relation_residuals(*model.exact_H, model.exact_family->B_at_1);
    add_check(model, "eigen_relation_at_1",
              std::all_of(er.begin(), er.end(), [](const Rational& r) { return r.is_zero(); }),
              "a_n B_{n-2}(1) + b_n B_{n-1}(1) + c_n B_n(1) + B_{n+1}(1) = B_n(1), exact");
    const auto lr = left_relation_residuals<Rational>(*model.exact_H, model.exact_family->q_at_1);
    add_check(model, "left_relation_at_1",
              std::all_of(lr.begin(), lr.end(), [](const UnitPoly& r) { return r.is_zero(); }),
              "q_{n-1} + c_n q_n + b_{n+1} q_{n+1} + a_{n+2} q_{n+2} = q_n, exact in Q[v]");
    if (system.kind() == WeightKind::jacobi_pineiro) {
      const bool ok = verify_unit_cancellation(g, std::min<std::size_t>(m, 8), {Rational(2), Rational(7, 3)});
      add_check(model, "unit_cancellation", ok, "Hessenberg bands identical under two odd-column unit probes");
      if (!ok) throw ConsistencyError("cross-weight unit leaked into the Hessenberg coefficients");
    }
  } else {
    // Moment matrices lose roughly two digits per moment; escalate until two
    // successive precisions agree. A failure at the lower level (spurious
    // sign, vanishing pivot) is read as precision loss and also escalates.
    int d = options.digits + static_cast<int>(2 * m);
    std::optional<NumericRun> lo;
    const double target = std::pow(10.0, -options.digits);
    for (;;) {
      if (d > options.max_digits)
        throw NumericError("precision escalation exceeded the digit budget of " +
                               std::to_string(options.max_digits) + " digits",
                           model.achieved_digits);
      model.escalation_digits.push_back(d);
      std::optional<NumericRun> hi;
      try {
        hi = numeric_run(system, m, d);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::domain || e.kind() == ErrorKind::unsupported) throw;
        lo.reset();
        d *= 2;
        continue;
      }
      if (lo) {
        const double gap = run_gap(*lo, *hi, m - 1);
        model.achieved_digits = gap > 0.0 ? std::min(-std::log10(gap), static_cast<double>(d)) : d;
        if (gap <= target) {
          lo = std::move(hi);
          break;
        }
      }
      lo = std::move(hi);
      d *= 2;
    }
    NumericRun& run = *lo;
    model.digits = d;
    model.H = std::move(run.H);
    model.family = std::move(run.family);
    model.off_band_max = run.off_band_max;
    const auto er = eigen_relation_residuals(model.H, model.family.B_at_1);
    double worst = 0.0;
    for (const auto& r : er) worst = std::max(worst, std::fabs(r.to_double()));
    add_check(model, "eigen_relation_at_1", worst <= 1e-12, "max residual " + format_double(worst));
  }

  // Normalization.
  Normalization norm = options.normalization;
  if (norm != Normalization::oracle) {
    std::optional<Real> kappa;
    if (model.exact_H) {
      if (auto k = toeplitz_kappa<Rational>(*model.exact_H, Rational(0))) {
        model.toeplitz_kappa = *k;
        kappa = Real(*k, model.digits);
      }
    } else {
      kappa = toeplitz_kappa<Real>(model.H, pow(Real(10L, model.digits), -static_cast<long>(options.digits / 2)));
    }
    const bool eligible = kappa.has_value() && system.kind() == WeightKind::hypergeometric;
    if (norm == Normalization::toeplitz && !kappa)
      throw DomainError("toeplitz normalization needs bands (kappa^3, 3 kappa^2, 3 kappa, 1)");
    norm = (norm == Normalization::toeplitz || eligible) ? Normalization::toeplitz : Normalization::oracle;
    if (norm == Normalization::toeplitz) {
      const std::size_t count = m;
      const Real two_kappa = like(*kappa, 2) * *kappa;
      for (std::size_t n = 0; n < count; ++n) {
        model.sigma_II.push_back(pow(two_kappa, static_cast<long>(n)));
        model.sigma_I.push_back(pow(two_kappa, -static_cast<long>(n)));
      }
      if (model.toeplitz_kappa) {
        const Rational tk = Rational(2) * *model.toeplitz_kappa;
        for (std::size_t n = 0; n < count; ++n) {
          model.exact_sigma_II.push_back(pow(tk, static_cast<long>(n)));
          model.exact_sigma_I.emplace_back(pow(tk, -static_cast<long>(n)));
        }
      }
    }
  }
  model.normalization = norm;
  if (norm == Normalization::oracle) {
    model.sigma_II = model.family.B_at_1;
    model.sigma_I = model.family.q_at_1;
    if (model.exact_family) {
      model.exact_sigma_II = model.exact_family->B_at_1;
      model.exact_sigma_I = model.exact_family->q_at_1;
    }
  }

  bool positive = true;
  for (std::size_t n = 0; n < model.H.size(); ++n) {
    if (model.H.c[n].sign() < 0) positive = false;
    if (n >= 1 && model.H.b[n].sign() <= 0) positive = false;
    if (n >= 2 && model.H.a[n].sign() <= 0) positive = false;
  }
  const bool expected = system.kind() != WeightKind::jacobi_pineiro || system.jp().positivity();
  add_check(model, "band_positivity", positive || !expected,
            std::string(positive ? "all a_n, b_n > 0 and c_n >= 0" : "some band coefficient is not positive") +
                (expected ? "" : " (positivity not guaranteed: |alpha1 - alpha2| >= 1)"));
  return model;
}

ChannelFunctional::ChannelFunctional(const WeightSystem& system, std::size_t max_degree, int digits)
    : max_degree_(max_degree), digits_(digits) {
  switch (system.kind()) {
    case WeightKind::jacobi_pineiro: {
      quadrature_ = true;
      const auto& p = system.jp();
      const std::size_t nodes = max_degree / 2 + 2;
      const Rational exps[2] = {p.alpha1, p.alpha2};
      for (int w = 0; w < 2; ++w) {
        rules_[w] = gauss_jacobi(nodes, p.alpha0, exps[w], digits);
        Real mass = like(rules_[w].weights.front(), 0);
        for (const auto& x : rules_[w].weights) mass += x;
        for (auto& x : rules_[w].weights) x = x / mass;
      }
      break;
    }
    case WeightKind::hypergeometric: {
      const HypergeometricParams ps[2] = {system.hypergeometric(), system.hypergeometric().shifted()};
      for (int w = 0; w < 2; ++w) {
        Rational mk(1);
        for (std::size_t k = 0; k <= max_degree; ++k) {
          moments_[w].emplace_back(mk, digits);
          const Rational kk(static_cast<long>(k));
          mk *= (ps[w].a + kk) * (ps[w].b + kk) / ((ps[w].c + kk) * (ps[w].d + kk));
        }
      }
      break;
    }
    case WeightKind::classical_jacobi: {
      quadrature_ = true;
      const auto& p = system.classical();
      rules_[0] = gauss_jacobi(max_degree / 2 + 2, p.p, p.q, digits);
      Real mass = like(rules_[0].weights.front(), 0);
      for (const auto& x : rules_[0].weights) mass += x;
      for (auto& x : rules_[0].weights) x = x / mass;
      rules_[1] = rules_[0];
      break;
    }
  }
}

Real ChannelFunctional::integrate(int channel, const std::vector<Real>& coeffs) const {
  if (channel != 1 && channel != 2) throw DomainError("channel must be 1 or 2");
  if (coeffs.empty()) return Real(0L, digits_);
  if (coeffs.size() - 1 > max_degree_)
    throw DomainError("polynomial degree " + std::to_string(coeffs.size() - 1) + " exceeds the functional's degree " +
                      std::to_string(max_degree_));
  const int w = channel - 1;
  Real acc(0L, digits_);
  if (quadrature_) {
    const QuadratureRule& rule = rules_[w];
    for (std::size_t i = 0; i < rule.size(); ++i) {
      Real v(0L, digits_);
      for (std::size_t k = coeffs.size(); k-- > 0;) v = v * rule.nodes[i] + coeffs[k];
      acc.add_mul(rule.weights[i], v);
    }
    return acc;
  }
  for (std::size_t k = 0; k < coeffs.size(); ++k) acc.add_mul(coeffs[k], moments_[w][k]);
  return acc;
}

std::vector<Real> poly_multiply(const std::vector<Real>& a, const std::vector<Real>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Real> r(a.size() + b.size() - 1, like(a.front(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j].add_mul(a[i], b[j]);
  return r;
}

namespace {

std::vector<Real> typeII_row(const PolynomialFamily<Real>& f, std::size_t n) {
  std::vector<Real> r;
  for (std::size_t k = 0; k <= n; ++k) r.push_back(f.typeII(n, k));
  return r;
}

void track(OrthogonalityReport& rep, double dev, std::size_t i, std::size_t j) {
  ++rep.checked;
  if (dev > rep.max_deviation || rep.checked == 1) {
    rep.max_deviation = std::max(rep.max_deviation, dev);
    rep.worst_i = i;
    rep.worst_j = j;
  }
}

void require_size(const PolynomialFamily<Real>& f, std::size_t upto) {
  if (upto >= f.coefficient_rows())
    throw SizingError("orthogonality check needs explicit coefficients beyond degree " + std::to_string(upto));
}

}  // namespace

OrthogonalityReport verify_biorthogonality(const PolynomialFamily<Real>& family, const WeightSystem& system,
                                           std::size_t upto, int digits) {
  require_size(family, upto);
  const ChannelFunctional fn(system, 2 * upto + 2, digits);
  OrthogonalityReport rep{"biorthogonality"};
  rep.method = fn.method();
  for (std::size_t m = 0; m <= upto; ++m) {
    const auto b = typeII_row(family, m);
    for (std::size_t k = 0; k <= upto; ++k) {
      Real v = fn.integrate(1, poly_multiply(b, family.typeI[0][k]));
      if (!family.typeI[1].empty()) v += fn.integrate(2, poly_multiply(b, family.typeI[1][k]));
      const double dev = std::fabs(v.to_double() - (m == k ? 1.0 : 0.0));
      track(rep, dev, m, k);
    }
  }
  return rep;
}

OrthogonalityReport verify_typeI_orthogonality(const PolynomialFamily<Real>& family, const WeightSystem& system,
                                               std::size_t upto, int digits) {
  require_size(family, upto);
  const ChannelFunctional fn(system, 2 * upto + 2, digits);
  OrthogonalityReport rep{"type_I_orthogonality"};
  rep.method = fn.method();
  for (std::size_t n = 1; n <= upto; ++n)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Real> xj(j + 1, Real(0L, digits));
      xj[j] = Real(1L, digits);
      Real v = fn.integrate(1, poly_multiply(xj, family.typeI[0][n]));
      if (!family.typeI[1].empty()) v += fn.integrate(2, poly_multiply(xj, family.typeI[1][n]));
      track(rep, std::fabs(v.to_double()), n, j);
    }
  return rep;
}

OrthogonalityReport verify_typeII_orthogonality(const PolynomialFamily<Real>& family, const WeightSystem& system,
                                                std::size_t upto, int digits) {
  require_size(family, upto);
  const ChannelFunctional fn(system, 2 * upto + 2, digits);
  OrthogonalityReport rep{"type_II_orthogonality"};
  rep.method = fn.method();
  for (std::size_t n = 1; n <= upto; ++n) {
    const auto b = typeII_row(family, n);
    for (int a = 1; a <= 2; ++a) {
      if (static_cast<std::size_t>(a) > n) continue;
      const std::size_t jmax = (n - static_cast<std::size_t>(a)) / 2;
      for (std::size_t j = 0; j <= jmax; ++j) {
        std::vector<Real> xj(j + 1, Real(0L, digits));
        xj[j] = Real(1L, digits);
        const Real v = fn.integrate(a, poly_multiply(xj, b));
        track(rep, std::fabs(v.to_double()), n, j);
      }
    }
  }
  return rep;
}

}  // namespace mochain
