#include "mochain/jacobi_pineiro.hpp"

#include <algorithm>
#include <cmath>

#include "mochain/error.hpp"
#include "mochain/special.hpp"

namespace mochain {

const char* to_string(LambdaConvention c) {
  return c == LambdaConvention::as_printed ? "as_printed" : "alpha_swapped";
}

const char* to_string(ThirdLambdaReading r) { return r == ThirdLambdaReading::printed ? "printed" : "corrected"; }

std::optional<std::size_t> LambdaLadder::first_negative() const {
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i].sign() < 0) return i;
  return std::nullopt;
}

namespace {

// prod(num) / prod(den) after cancelling identical factors.
Rational factor_ratio(std::vector<Rational> num, std::vector<Rational> den, std::size_t index) {
  for (auto it = num.begin(); it != num.end();) {
    if (auto d = std::find(den.begin(), den.end(), *it); d != den.end()) {
      den.erase(d);
      it = num.erase(it);
    } else {
      ++it;
    }
  }
  Rational r(1);
  for (const auto& x : num) r *= x;
  for (const auto& x : den) {
    if (x.is_zero())
      throw DomainError("lambda_" + std::to_string(index) + " has a vanishing denominator factor");
    r /= x;
  }
  return r;
}

}  // namespace

LambdaLadder lambda_ladder(const JacobiPineiroParams& params, std::size_t n, LambdaConvention convention,
                           ThirdLambdaReading reading) {
  LambdaLadder ladder{params, convention, reading, {}};
  const bool swap = convention == LambdaConvention::alpha_swapped;
  const Rational a1 = swap ? params.alpha2 : params.alpha1;
  const Rational a2 = swap ? params.alpha1 : params.alpha2;
  const Rational& a0 = params.alpha0;
  const std::size_t last = 3 * n + 6;
  ladder.values.assign(last + 1, Rational(0));
  for (std::size_t k = 0; 6 * k <= last; ++k) {
    const Rational r(static_cast<long>(k));
    const auto set = [&](std::size_t offset, std::vector<Rational> num, std::vector<Rational> den) {
      const std::size_t i = 6 * k + offset;
      if (i <= last) ladder.values[i] = factor_ratio(std::move(num), std::move(den), i);
    };
    const Rational third = reading == ThirdLambdaReading::printed ? 2 * r + 3 + a0 : 2 * r + 2 + a0;
    // lambda_{6k} carries the factor k, so lambda_0 = 0 whatever the rest.
    if (k > 0)
      set(0, {r, 2 * r + 1 + a1 + a0, 2 * r + a0}, {3 * r + a2 + a0, 3 * r + 1 + a2 + a0, 3 * r + 1 + a1 + a0});
    set(1, {2 * r + 1 + a1 + a0, 2 * r + 1 + a2 + a0, r + 1 + a1},
        {3 * r + 1 + a1 + a0, 3 * r + 2 + a1 + a0, 3 * r + 1 + a2 + a0});
    set(2, {2 * r + 1 + a2 + a0, 2 * r + 1 + a0, r + a2 - a1},
        {3 * r + 1 + a2 + a0, 3 * r + 2 + a2 + a0, 3 * r + 2 + a1 + a0});
    set(3, {third, 2 * r + 1 + a0, r + 1 + a1 - a2}, {3 * r + 2 + a1 + a0, 3 * r + 3 + a1 + a0, 3 * r + 2 + a2 + a0});
    set(4, {r + 1 + a2, 2 * r + 2 + a2 + a0, 2 * r + 2 + a1 + a0},
        {3 * r + 2 + a2 + a0, 3 * r + 3 + a2 + a0, 3 * r + 3 + a1 + a0});
    set(5, {r + 1, 2 * r + 2 + a2 + a0, 2 * r + 2 + a0}, {3 * r + 3 + a2 + a0, 3 * r + 3 + a1 + a0, 3 * r + 4 + a1 + a0});
  }
  return ladder;
}

AssembledBands assemble_abc(const LambdaLadder& ladder) {
  const auto& l = ladder.values;
  if (l.size() < 7) throw DomainError("lambda ladder too short to assemble");
  const std::size_t n = (l.size() - 7) / 3;  // ladder holds lambda_0..lambda_{3n+6}
  AssembledBands out;
  out.a.assign(n + 1, Rational(0));
  out.b.assign(n + 1, Rational(0));
  out.c.assign(n + 1, Rational(0));
  for (std::size_t k = 0; k <= n; ++k) {
    out.c[k] = l[3 * k] + l[3 * k + 1] + l[3 * k + 2];
    if (k + 1 <= n) out.b[k + 1] = l[3 * k + 1] * l[3 * k + 3] + l[3 * k + 2] * l[3 * k + 3] + l[3 * k + 2] * l[3 * k + 4];
    if (k + 2 <= n) out.a[k + 2] = l[3 * k + 2] * l[3 * k + 4] * l[3 * k + 6];
  }
  return out;
}

Rational b_at_1_closed(const JacobiPineiroParams& params, std::size_t n, std::size_t n1) {
  if (n1 != n && n1 != n + 1) throw DomainError("closed form for B(1) needs n1 = n or n1 = n + 1");
  const Rational& alpha = params.alpha1;
  const Rational& beta = params.alpha2;
  const Rational& gamma = params.alpha0;
  const Rational m(static_cast<long>(n1 + n));
  return pochhammer(gamma + 1, n1 + n) /
         (pochhammer(alpha + gamma + m + 1, n1) * pochhammer(beta + gamma + m + 1, n));
}

Rational b_at_1_closed(const JacobiPineiroParams& params, std::size_t m) {
  const std::size_t n = m / 2;
  return b_at_1_closed(params, n, m - n);
}

std::optional<std::size_t> StreamComparison::first_mismatch() const {
  if (mismatches.empty()) return std::nullopt;
  return mismatches.front().index;
}

namespace {

StreamComparison compare_stream(const std::string& name, const std::vector<Rational>& oracle,
                                const std::vector<Rational>& formula, std::size_t from, std::size_t count) {
  StreamComparison s{name};
  for (std::size_t i = from; i < count && i < oracle.size() && i < formula.size(); ++i) {
    ++s.compared;
    if (oracle[i] == formula[i])
      ++s.matches;
    else
      s.mismatches.push_back({name, i, oracle[i], formula[i]});
  }
  return s;
}

}  // namespace

CalibrationReport calibrate_conventions(const JacobiPineiroParams& params, const BandedHessenberg<Rational>& oracle,
                                        const std::vector<Rational>& oracle_B_at_1, std::size_t count) {
  count = std::min(count, oracle.size());
  if (count < 3) throw SizingError("calibration needs at least three oracle rows");
  CalibrationReport report{params};
  report.compared = count;
  for (const auto convention : {LambdaConvention::as_printed, LambdaConvention::alpha_swapped})
    for (const auto reading : {ThirdLambdaReading::printed, ThirdLambdaReading::corrected}) {
      ConventionCandidate cand{convention, reading};
      try {
        const LambdaLadder ladder = lambda_ladder(params, count, convention, reading);
        cand.first_negative_lambda = ladder.first_negative();
        const AssembledBands bands = assemble_abc(ladder);
        cand.streams.push_back(compare_stream("a", oracle.a, bands.a, 2, count));
        cand.streams.push_back(compare_stream("b", oracle.b, bands.b, 1, count));
        cand.streams.push_back(compare_stream("c", oracle.c, bands.c, 0, count));
        cand.c0_matches = bands.c[0] == oracle.c[0];
      } catch (const DomainError&) {
        // Non-generic parameters: this reading is undefined, count everything as a mismatch.
        cand.mismatch_count = 3 * count;
        report.candidates.push_back(std::move(cand));
        continue;
      }
      for (const auto& s : cand.streams) cand.mismatch_count += s.mismatches.size();
      report.candidates.push_back(std::move(cand));
    }

  // Fewest mismatches wins; ties go to the candidate whose c_0 matches, then to list order.
  for (std::size_t i = 1; i < report.candidates.size(); ++i) {
    const auto& best = report.candidates[report.selected];
    const auto& cand = report.candidates[i];
    if (cand.mismatch_count < best.mismatch_count ||
        (cand.mismatch_count == best.mismatch_count && cand.c0_matches && !best.c0_matches))
      report.selected = i;
  }
  for (const auto& cand : report.candidates)
    if (cand.c0_matches && std::find(report.c0_conventions.begin(), report.c0_conventions.end(), cand.convention) ==
                               report.c0_conventions.end())
      report.c0_conventions.push_back(cand.convention);

  std::vector<Rational> closed;
  for (std::size_t m = 0; m <= count && m < oracle_B_at_1.size(); ++m) closed.push_back(b_at_1_closed(params, m));
  report.closed_b_at_1 = compare_stream("B(1)", oracle_B_at_1, closed, 0, closed.size());

  for (const auto& s : report.candidates[report.selected].streams)
    report.known_discrepancies.insert(report.known_discrepancies.end(), s.mismatches.begin(), s.mismatches.end());
  report.known_discrepancies.insert(report.known_discrepancies.end(), report.closed_b_at_1.mismatches.begin(),
                                    report.closed_b_at_1.mismatches.end());
  return report;
}

namespace {

double as_double(const Real& x, const SymbolicUnit&) { return x.to_double(); }
double as_double(const Rational& x, const SymbolicUnit&) { return x.to_double(); }
double as_double(const UnitPoly& x, const SymbolicUnit& rho) {
  if (x.is_rational()) return x.coeff(0).to_double();
  return x.evaluate(rho.value).to_double();
}

UnitPoly times(const UnitPoly& p, const Rational& s) { return p * s; }
Real times(const Real& p, const Real& s) { return p * s; }

}  // namespace

template <class T>
PoincareDiagnostic<T> poincare_diagnostic(const BandedHessenberg<T>& H, const std::vector<T>& B1,
                                          const std::vector<UnitScalar<T>>& q, const SymbolicUnit& rho) {
  const std::size_t n = std::min({H.size(), B1.size(), q.size()});
  if (n < 4) throw SizingError("Poincare diagnostic needs at least four rows");
  PoincareDiagnostic<T> d;
  const T zero = like(B1.front(), 0);
  d.s.assign(n, zero);
  d.t.assign(n, zero);
  for (std::size_t k = 2; k < n; ++k) d.s[k] = (H.a[k] * B1[k - 2] + H.b[k] * B1[k - 1]) / B1[k];
  for (std::size_t k = 1; k + 1 < n; ++k) d.t[k] = H.a[k + 1] * B1[k - 1] / B1[k];

  // Christoffel-Darboux type identity linking the two evaluations at 1.
  for (std::size_t k = 1; k + 1 < n; ++k) {
    T inner = H.b[k] * B1[k - 1];
    if (k >= 2) inner += H.a[k] * B1[k - 2];
    UnitScalar<T> r = times(q[k - 1], B1[k]) - times(q[k], inner) - times(q[k + 1], H.a[k + 1] * B1[k - 1]);
    d.max_cd_residual = std::max(d.max_cd_residual, std::fabs(as_double(r, rho)));
    d.cd_residuals.push_back(std::move(r));
  }

  d.characteristic_ok = std::all_of(std::begin(d.roots), std::end(d.roots), [&](const Rational& r) {
    return (Rational(-1) + d.s_limit * r + d.t_limit * r * r).is_zero();
  });

  for (std::size_t k = 0; k + 1 < n; ++k) {
    d.q_ratio.push_back(as_double(q[k + 1], rho) / as_double(q[k], rho));
    d.B_ratio.push_back(as_double(B1[k + 1], rho) / as_double(B1[k], rho));
  }

  // Scan the even subsequence backwards for the start of the monotone tail.
  const double s_lim = d.s_limit.to_double();
  std::optional<std::size_t> from;
  std::size_t k = ((n - 1) / 2) * 2;
  if (k >= 4) {
    from = k;
    while (k >= 4 && std::fabs(as_double(d.s[k], rho) - s_lim) < std::fabs(as_double(d.s[k - 2], rho) - s_lim)) {
      k -= 2;
      from = k;
    }
    if (*from == ((n - 1) / 2) * 2) from.reset();  // no decreasing step at all
  }
  d.s_monotone_from = from;
  return d;
}

template PoincareDiagnostic<Rational> poincare_diagnostic(const BandedHessenberg<Rational>&,
                                                          const std::vector<Rational>&,
                                                          const std::vector<UnitPoly>&, const SymbolicUnit&);
template PoincareDiagnostic<Real> poincare_diagnostic(const BandedHessenberg<Real>&, const std::vector<Real>&,
                                                      const std::vector<Real>&, const SymbolicUnit&);

}  // namespace mochain
