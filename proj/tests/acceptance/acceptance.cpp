// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure. The four-digit reference matrices are the only transcribed
// values; everything else is checked against exact values or identities
// that do not depend on the library.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "mochain/classical.hpp"
#include "mochain/jacobi_pineiro.hpp"
#include "mochain/karlin_mcgregor.hpp"
#include "mochain/model.hpp"
#include "mochain/simulation.hpp"
#include "mochain/stochastic.hpp"

using namespace mochain;

namespace {

using Rows = std::vector<std::vector<double>>;

struct Verdict {
  bool passed = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

JacobiPineiroParams jp(long a0_num, long a0_den) {
  return JacobiPineiroParams::make(Rational(-1, 4), Rational(-1, 2), Rational(a0_num, a0_den));
}

const JacobiPineiroParams kRecurrent = jp(-1, 2);
const JacobiPineiroParams kTransient = jp(1, 2);

// Four-digit reference matrices (decimal commas normalized).
const Rows kRecurrentHat = {{0.6000, 0.4000, 0, 0, 0, 0, 0},
                            {0.2667, 0.3167, 0.4167, 0, 0, 0, 0},
                            {0.1026, 0.1603, 0.4657, 0.2715, 0, 0, 0},
                            {0, 0.0156, 0.2417, 0.4176, 0.3250, 0, 0},
                            {0, 0, 0.0565, 0.2035, 0.4586, 0.2814, 0},
                            {0, 0, 0, 0.0250, 0.2336, 0.4289, 0.3125}};
const Rows kRecurrentCheck = {{0.6000, 0.2531, 0.1469, 0, 0, 0, 0},
                              {0.4215, 0.3167, 0.2419, 0.0199, 0, 0, 0},
                              {0, 0.2760, 0.4657, 0.2036, 0.0547, 0, 0},
                              {0, 0, 0.3223, 0.4176, 0.2341, 0.0260, 0},
                              {0, 0, 0, 0.2826, 0.4586, 0.2110, 0.0478}};
const Rows kTransientHat = {{0.3333, 0.6666, 0, 0, 0, 0, 0},
                            {0.1026, 0.3205, 0.5769, 0, 0, 0, 0},
                            {0.0302, 0.1163, 0.4712, 0.3824, 0, 0, 0},
                            {0, 0.0062, 0.1707, 0.4150, 0.4080, 0, 0},
                            {0, 0, 0.0331, 0.1621, 0.4600, 0.3448, 0},
                            {0, 0, 0, 0.0156, 0.1905, 0.4279, 0.3660}};
const Rows kTransientCheck = {{0.3333, 0.3198, 0.3469, 0, 0, 0, 0, 0},
                              {0.2138, 0.3205, 0.4289, 0.0368, 0, 0, 0, 0},
                              {0, 0.1565, 0.4711, 0.2726, 0.0998, 0, 0, 0},
                              {0, 0, 0.2395, 0.4150, 0.3061, 0.0394, 0, 0},
                              {0, 0, 0, 0.2160, 0.4600, 0.2542, 0.0697, 0},
                              {0, 0, 0, 0, 0.2583, 0.4279, 0.2746, 0.0391}};

template <class M>
double worst_gap(const M& matrix, const Rows& reference) {
  double worst = 0.0;
  for (std::size_t i = 0; i < reference.size(); ++i)
    for (std::size_t j = 0; j < reference[i].size(); ++j)
      worst = std::max(worst, std::fabs(matrix(i, j).to_double() - reference[i][j]));
  return worst;
}

Verdict reference_matrices(const JacobiPineiroParams& params, const Rows& hat, const Rows& check) {
  const auto model = build_model(WeightSystem(params), ModelOptions{.size = 8});
  const auto pair = numeric_pair(model, 8);
  const double gh = worst_gap(pair.hatH, hat), gc = worst_gap(pair.checkH, check);
  return {std::max(gh, gc) <= 5e-4 && model.all_checks_passed(),
          "max |hat - reference| " + fmt(gh) + ", max |check - reference| " + fmt(gc)};
}

Verdict uniform_exactness() {
  const Rational k(4, 27);
  const auto model = build_model(WeightSystem(HypergeometricParams::uniform_tuple()),
                                 ModelOptions{.mode = Mode::exact, .size = 12});
  const auto& H = *model.exact_H;
  bool bands = model.normalization == Normalization::toeplitz;
  for (std::size_t n = 2; n < H.size(); ++n)
    bands = bands && H.a[n] == pow(k, 3) && H.b[n] == Rational(3) * pow(k, 2) && H.c[n] == Rational(3) * k;
  const auto pair = exact_pair(model, 12);
  const Rational hat_row[] = {Rational(1, 27), Rational(6, 27), Rational(12, 27), Rational(8, 27)};
  const Rational check_row[] = {Rational(8, 27), Rational(12, 27), Rational(6, 27), Rational(1, 27)};
  std::size_t interior = 0;
  bool patterns = true;
  for (std::size_t n = 2; n < pair.size(); ++n) {
    if (pair.hat_rows[n] == RowStatus::complete) {
      ++interior;
      for (int d = 0; d < 4; ++d) patterns = patterns && pair.hatH(n, n - 2 + d) == hat_row[d];
    }
    if (pair.check_rows[n] == RowStatus::complete)
      for (int d = 0; d < 4; ++d) patterns = patterns && pair.checkH(n, n - 1 + d) == UnitRatio(check_row[d]);
  }
  return {bands && patterns && interior > 0,
          std::string("bands (k^3, 3k^2, 3k, 1) ") + (bands ? "exact" : "differ") + ", interior patterns " +
              (patterns ? "exact" : "differ") + " over " + std::to_string(interior) + " rows"};
}

Verdict stochasticity() {
  std::size_t rows = 0;
  bool exact_ok = true;
  double numeric_worst = 0.0;
  const std::vector<WeightSystem> systems = {WeightSystem(kRecurrent), WeightSystem(kTransient),
                                             WeightSystem(HypergeometricParams::uniform_tuple()),
                                             WeightSystem(JacobiPineiroParams::make(Rational(0), Rational(1, 2), Rational(0)))};
  for (const auto& system : systems) {
    const auto exact = build_model(system, ModelOptions{.mode = Mode::exact, .size = 16});
    const auto pair = exact_pair(exact, 16);
    for (std::size_t i = 0; i < pair.size(); ++i) {
      if (pair.hat_rows[i] == RowStatus::complete) exact_ok = exact_ok && pair.hat_row_sums[i] == Rational(1), ++rows;
      if (pair.check_rows[i] == RowStatus::complete)
        exact_ok = exact_ok && pair.check_row_sums[i] == UnitRatio(Rational(1)), ++rows;
    }
    const std::size_t n = 40;
    const auto numeric = build_model(system, ModelOptions{.mode = Mode::numeric, .size = n, .digits = 30});
    const auto npair = numeric_pair(numeric, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (npair.hat_rows[i] == RowStatus::complete)
        numeric_worst = std::max(numeric_worst, std::fabs(npair.hat_row_sums[i].to_double() - 1.0)), ++rows;
      if (npair.check_rows[i] == RowStatus::complete)
        numeric_worst = std::max(numeric_worst, std::fabs(npair.check_row_sums[i].to_double() - 1.0)), ++rows;
    }
  }
  return {exact_ok && numeric_worst <= 1e-12 * 40,
          std::to_string(rows) + " interior rows; exact sums " + (exact_ok ? "all 1" : "NOT all 1") +
              ", numeric max |sum - 1| " + fmt(numeric_worst)};
}

Verdict kmg_consistency() {
  double worst = 0.0, worst_identity = 0.0, worst_entries = 0.0;
  std::size_t queries = 0;
  for (const auto& params : {kRecurrent, kTransient}) {
    const auto model = build_model(WeightSystem(params), ModelOptions{.size = 24});
    const auto pair = numeric_pair(model, 24);
    for (auto side : {ChainSide::hat, ChainSide::check})
      for (std::size_t r = 0; r <= 6; ++r)
        for (std::size_t n = 0; n <= 6; ++n)
          for (std::size_t m = 0; m <= 6; ++m) {
            const auto res = evolve(EvolutionQuery{n, m, r, side, EvolutionMethod::both}, model);
            const double p = res.integral->to_double();
            worst = std::max(worst, res.discrepancy);
            ++queries;
            if (r == 0) worst_identity = std::max(worst_identity, std::fabs(p - (n == m ? 1.0 : 0.0)));
            if (r == 1) {
              const double entry = side == ChainSide::hat ? pair.hatH(n, m).to_double() : pair.checkH(n, m).to_double();
              worst_entries = std::max(worst_entries, std::fabs(p - entry));
            }
          }
  }
  return {worst <= 1e-8 && worst_identity <= 1e-10 && worst_entries <= 1e-10,
          std::to_string(queries) + " queries: max |integral - power| " + fmt(worst) + ", r=0 " + fmt(worst_identity) +
              ", r=1 " + fmt(worst_entries)};
}

Verdict classification() {
  const auto rec = classify_chain(WeightSystem(kRecurrent));
  const auto tra = classify_chain(WeightSystem(kTransient));
  const auto uni_params = HypergeometricParams::uniform_tuple();
  const auto uni = classify_chain(WeightSystem(uni_params));
  const auto edge = classify_chain(WeightSystem(jp(0, 1)));
  const bool ok = rec.verdict == ChainClass::recurrent && tra.verdict == ChainClass::transient &&
                  uni.verdict == ChainClass::transient && edge.verdict == ChainClass::boundary_flagged;
  return {ok, std::string(to_string(rec.verdict)) + ", " + to_string(tra.verdict) + ", uniform " +
                  to_string(uni.verdict) + " (c+d-a-b = " + uni_params.delta.to_string() + "), alpha0=0 " +
                  to_string(edge.verdict)};
}

Verdict asymptotics() {
  const std::size_t N = 300;
  const auto model = build_model(WeightSystem(kRecurrent), ModelOptions{.mode = Mode::numeric, .size = N, .digits = 40});
  const JacobiPineiroLimits lim;
  const std::size_t at = N - 10;
  const double da = std::fabs(model.H.a[at].to_double() - lim.a.to_double());
  const double db = std::fabs(model.H.b[at].to_double() - lim.b.to_double());
  const double dc = std::fabs(model.H.c[at].to_double() - lim.c.to_double());
  const auto diag = poincare_diagnostic(model.H, model.family.B_at_1, model.family.q_at_1, model.rho);
  const double dq = std::fabs(diag.q_ratio.at(at) - 27.0 / 8.0);
  const double dB = std::fabs(diag.B_ratio.at(at) - 8.0 / 27.0);
  const auto tl = verify_transposed_limit(numeric_pair(model, N), 10);
  const bool ok = std::max({da, db, dc}) <= 1e-3 && dq <= 1e-2 && dB <= 1e-3 && tl.decreasing;
  return {ok, "n=" + std::to_string(at) + ": band gaps " + fmt(da) + "/" + fmt(db) + "/" + fmt(dc) + ", q ratio gap " +
                  fmt(dq) + ", B ratio gap " + fmt(dB) + ", transposed head " + fmt(tl.head_max) + " tail " +
                  fmt(tl.tail_max)};
}

Verdict orthogonality() {
  double worst = 0.0;
  std::string where;
  for (const auto& system : {WeightSystem(kRecurrent), WeightSystem(kTransient),
                             WeightSystem(HypergeometricParams::uniform_tuple())}) {
    const auto model = build_model(system, ModelOptions{.size = 12});
    for (const auto& r : {verify_biorthogonality(model.family, system, 8, 40),
                          verify_typeI_orthogonality(model.family, system, 8, 40),
                          verify_typeII_orthogonality(model.family, system, 8, 40)})
      if (r.max_deviation >= worst) worst = r.max_deviation, where = r.name;
  }
  return {worst <= 1e-8, "max deviation " + fmt(worst) + " (" + where + ")"};
}

Verdict classical_baseline() {
  const int d = 40;
  const auto chain = chebyshev_chain();
  const Real z(2L, d);
  const auto series = stieltjes_series(chain, z, 60);
  const double err = abs(series.value - Real(1L, d) / sqrt(Real(3L, d))).to_double();
  const double bound = series.remainder_bound.to_double();
  const double ratio_gap = abs(markov_stieltjes_ratio(chain, z, 20) - series.value).to_double();
  double worst = 0.0;
  for (std::size_t k = 0; k <= 6; ++k)
    for (std::size_t n = 0; n <= 6; ++n)
      for (std::size_t m = 0; m <= 6; ++m)
        worst = std::max(worst, std::fabs(classical_evolution(chain, n, m, k, d).to_double() -
                                          classical_matrix_power(chain, n, m, k).to_double()));
  return {err <= bound && ratio_gap <= 1e-6 && worst <= 1e-10,
          "series error " + fmt(err) + " (bound " + fmt(bound) + "), ratio gap " + fmt(ratio_gap) +
              ", evolution vs power " + fmt(worst)};
}

Verdict monte_carlo() {
  const auto model = build_model(WeightSystem(HypergeometricParams::uniform_tuple()), ModelOptions{.size = 8});
  const auto pair = numeric_pair(model, 8);
  SimConfig cfg{.chain = ChainSide::hat, .start_state = 0, .steps = 2, .trajectories = 100000, .seed = 20240611};
  const auto first = simulate(cfg, pair);
  cfg.threads = 3;
  const auto again = simulate(cfg, pair);
  const double exact = 192.0 / 729.0;
  const double est = first.estimate(0, 2);
  const double sigma = std::sqrt(exact * (1 - exact) / 100000.0);
  const bool identical = first.visit_counts == again.visit_counts && first.returns == again.returns;
  return {std::fabs(est - exact) <= 3 * sigma && identical && first.conserved(),
          "estimate " + fmt(est) + " vs 192/729 = " + fmt(exact) + " (" + fmt((est - exact) / sigma) +
              " sigma), repeat " + (identical ? "identical" : "differs") + ", counts " +
              (first.conserved() ? "conserved" : "NOT conserved")};
}

Verdict calibration() {
  std::ostringstream detail;
  bool ok = true;
  for (const auto& params : {kRecurrent, kTransient}) {
    const auto model = build_model(WeightSystem(params), ModelOptions{.size = 10});
    const auto report = calibrate_conventions(params, *model.exact_H, model.exact_family->B_at_1, 8);
    std::size_t full_c = 0;
    for (const auto& cand : report.candidates)
      for (const auto& s : cand.streams)
        if (s.stream == "c" && s.matches == s.compared) ++full_c;
    const auto& sel = report.candidates[report.selected];
    bool listed = report.known_discrepancies.size() == sel.mismatch_count;
    for (const auto& m : report.known_discrepancies) listed = listed && !m.stream.empty() && m.oracle != m.formula;
    ok = ok && report.c0_conventions.size() == 1 && listed;
    detail << (params.alpha0 < Rational(0) ? "recurrent" : "transient") << ": c0 unique under "
           << to_string(report.c0_conventions.empty() ? LambdaConvention::as_printed : report.c0_conventions.front())
           << " (" << report.c0_conventions.size() << " convention), whole c-stream reproduced by " << full_c
           << " candidates, " << report.known_discrepancies.size() << " residual mismatches listed; ";
  }
  return {ok, detail.str()};
}

struct Criterion {
  const char* name;
  double limit_seconds;  // 0: no runtime bound
  std::function<Verdict()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"reference matrices, recurrent Jacobi-Pineiro", 10,
       [] { return reference_matrices(kRecurrent, kRecurrentHat, kRecurrentCheck); }},
      {"reference matrices, transient Jacobi-Pineiro", 10,
       [] { return reference_matrices(kTransient, kTransientHat, kTransientCheck); }},
      {"uniform hypergeometric exactness", 30, uniform_exactness},
      {"stochasticity", 0, stochasticity},
      {"Karlin-McGregor consistency", 60, kmg_consistency},
      {"classification", 0, classification},
      {"asymptotics at N=300", 120, asymptotics},
      {"biorthogonality and orthogonality", 0, orthogonality},
      {"classical baseline", 0, classical_baseline},
      {"Monte Carlo", 30, monte_carlo},
      {"calibration ledger", 0, calibration},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds) {
      v.passed = false;
      v.detail += "; runtime limit " + fmt(c.limit_seconds) + " s exceeded";
    }
    if (!v.passed) ++failures;
    std::printf("%s %2zu %s: %s [%.2f s]\n", v.passed ? "PASS" : "FAIL", i + 1, c.name, v.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
