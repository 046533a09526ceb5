#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "mochain/classical.hpp"
#include "mochain/error.hpp"
#include "mochain/jacobi_pineiro.hpp"
#include "mochain/karlin_mcgregor.hpp"
#include "mochain/parse.hpp"
#include "mochain/simulation.hpp"
#include "mochain/stochastic.hpp"

namespace mochain::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

Mode parse_mode(const std::string& s) {
  if (s == "exact") return Mode::exact;
  if (s == "numeric") return Mode::numeric;
  throw ParseError("--mode must be exact or numeric, got '" + s + "'");
}

bool wants(const CommonOptions& opt, const char* format) { return opt.format == "all" || opt.format == format; }

void write_file(const CommonOptions& opt, const std::string& name, const std::string& content) {
  fs::create_directories(opt.out);
  const fs::path path = fs::path(opt.out) / name;
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DomainError("cannot write " + path.string());
  os << content;
}

void write_json(const CommonOptions& opt, const std::string& name, const json& doc) {
  write_file(opt, name, doc.dump(2) + "\n");
}

RunManifest manifest_for(const std::string& command, std::vector<std::pair<std::string, std::string>> params,
                         const CommonOptions& opt, std::size_t truncation) {
  RunManifest m;
  m.command = command;
  m.parameters = std::move(params);
  m.mode = opt.mode;
  m.digits = opt.digits;
  m.truncation = truncation;
  m.seed = opt.seed;
  m.timestamp = RunManifest::now_utc();
  return m;
}

ModelOptions model_options(const CommonOptions& opt, std::size_t size) {
  ModelOptions mo;
  mo.mode = parse_mode(opt.mode);
  mo.size = size;
  mo.digits = opt.digits;
  mo.normalization = parse_normalization(opt.normalization);
  return mo;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

void say(const CommonOptions& opt, const std::string& text) {
  if (!opt.quiet) std::cout << text;
}

CheckRecord duality_check(const DualityReport& d, bool exact, std::size_t n) {
  const double tol = 1e-12 * static_cast<double>(n);
  const bool ok = exact ? d.exact : d.max_residual <= tol;
  return {"duality", ok,
          std::to_string(d.checked) + " entries, max residual " + sci(d.max_residual) + (exact ? " (exact)" : "")};
}

std::string status_summary(const std::vector<RowStatus>& rows) {
  std::size_t counts[3] = {0, 0, 0};
  for (auto s : rows) ++counts[static_cast<int>(s)];
  return std::to_string(counts[0]) + " complete, " + std::to_string(counts[1]) + " truncation_edge, " +
         std::to_string(counts[2]) + " boundary_deficient";
}

json real_json(const Real& v, int digits) { return {{"value", v.to_double()}, {"text", v.to_string(digits)}}; }

}  // namespace

WeightSystem SystemArgs::system() const {
  if (family == "jp") {
    std::vector<std::string> v = positional;
    if (v.size() == 1 && v[0].find(',') != std::string::npos) {
      v.clear();
      for (const auto& r : parse_rational_list(positional[0])) v.push_back(r.to_string());
    }
    if (!v.empty() && v.size() != 3) throw ParseError("jp takes three parameters: alpha1 alpha2 alpha0");
    const std::string s1 = alpha1.empty() ? (v.empty() ? "" : v[0]) : alpha1;
    const std::string s2 = alpha2.empty() ? (v.empty() ? "" : v[1]) : alpha2;
    const std::string s0 = alpha0.empty() ? (v.empty() ? "" : v[2]) : alpha0;
    if (s1.empty() || s2.empty() || s0.empty()) throw ParseError("jp needs --alpha1, --alpha2 and --alpha0");
    return WeightSystem(JacobiPineiroParams::make(Rational::parse(s1), Rational::parse(s2), Rational::parse(s0)));
  }
  if (family == "ll") {
    std::vector<Rational> v;
    if (!tuple.empty()) {
      v = parse_rational_list(tuple);
    } else {
      for (const auto& p : positional)
        for (const auto& r : parse_rational_list(p)) v.push_back(r);
    }
    if (v.size() != 4) throw ParseError("ll takes the tuple a,b,c,d (four values)");
    return WeightSystem(HypergeometricParams::make(v[0], v[1], v[2], v[3]));
  }
  throw ParseError("unknown family '" + family + "' (expected jp or ll)");
}

std::vector<std::pair<std::string, std::string>> SystemArgs::manifest_parameters() const {
  const WeightSystem s = system();
  if (s.kind() == WeightKind::jacobi_pineiro) {
    const auto& p = s.jp();
    return {{"family", "jp"}, {"alpha1", p.alpha1.to_string()}, {"alpha2", p.alpha2.to_string()},
            {"alpha0", p.alpha0.to_string()}};
  }
  const auto& p = s.hypergeometric();
  return {{"family", "ll"},
          {"tuple", p.a.to_string() + "," + p.b.to_string() + "," + p.c.to_string() + "," + p.d.to_string()}};
}

void write_checks(const Outcome& outcome, const CommonOptions& opt) {
  const bool all = std::all_of(outcome.checks.begin(), outcome.checks.end(), [](const auto& c) { return c.passed; });
  write_json(opt, "checks.json",
             envelope("checks", outcome.manifest, {{"all_passed", all}, {"checks", outcome.checks}}));
}

Outcome cmd_build(const SystemArgs& sys, const CommonOptions& opt, std::size_t txt_rows) {
  const WeightSystem system = sys.system();
  Outcome out{manifest_for("build", sys.manifest_parameters(), opt, opt.size), {}};
  const ChainModel model = build_model(system, model_options(opt, opt.size));
  out.checks = model.checks;
  out.manifest.digits = model.digits;

  BandTable hat, check;
  if (model.exact_H) {
    const auto pair = exact_pair(model, opt.size);
    hat = hat_table(pair);
    check = check_table(pair);
    out.checks.push_back({"stochastic_rows", true, "hat: " + status_summary(pair.hat_rows) +
                                                      "; check: " + status_summary(pair.check_rows)});
    out.checks.push_back(duality_check(verify_duality(pair), true, opt.size));
  } else {
    const auto pair = numeric_pair(model, opt.size);
    hat = hat_table(pair);
    check = check_table(pair);
    out.checks.push_back({"stochastic_rows", true, "hat: " + status_summary(pair.hat_rows) +
                                                      "; check: " + status_summary(pair.check_rows)});
    out.checks.push_back(duality_check(verify_duality(pair), false, opt.size));
  }
  if (system.kind() == WeightKind::jacobi_pineiro)
    out.checks.push_back({"positivity_criterion", true,
                          std::string("|alpha1 - alpha2| < 1 is ") + (system.jp().positivity() ? "true" : "false")});

  write_json(opt, "hessenberg.json", envelope("hessenberg", out.manifest, hessenberg_document(model)));
  for (const BandTable* t : {&hat, &check}) {
    const std::string stem = "stochastic_" + t->name;
    if (wants(opt, "json")) write_json(opt, stem + ".json", envelope("stochastic", out.manifest, *t));
    if (wants(opt, "csv")) write_file(opt, stem + ".csv", band_table_csv(*t, out.manifest));
    if (wants(opt, "txt")) write_file(opt, stem + ".txt", band_table_txt(*t, out.manifest, txt_rows));
  }

  say(opt, system.describe() + ", normalization " + to_string(model.normalization) + "\n");
  if (!hat.unit.empty() || !check.unit.empty()) say(opt, "unit " + (hat.unit.empty() ? check.unit : hat.unit) + "\n");
  const RunManifest quiet_manifest{};
  for (const BandTable* t : {&hat, &check}) {
    std::string body = band_table_txt(*t, quiet_manifest, txt_rows);
    body.erase(0, manifest_header(quiet_manifest).size());
    say(opt, body);
  }
  return out;
}

Outcome cmd_evolve(const SystemArgs& sys, const EvolveArgs& args, const CommonOptions& opt) {
  const WeightSystem system = sys.system();
  std::vector<EvolutionQuery> queries;
  const auto method = parse_evolution_method(args.method);
  std::vector<ChainSide> sides;
  if (args.chain == "both")
    sides = {ChainSide::hat, ChainSide::check};
  else
    sides = {parse_chain_side(args.chain)};
  for (ChainSide side : sides) {
    if (args.grid) {
      for (std::size_t n = 0; n <= *args.grid; ++n)
        for (std::size_t m = 0; m <= *args.grid; ++m)
          for (std::size_t r = 0; r <= *args.grid; ++r) queries.push_back({n, m, r, side, method});
    } else {
      queries.push_back({args.n, args.m, args.r, side, method});
    }
  }
  std::size_t truncation = opt.size;
  for (const auto& q : queries) truncation = std::max(truncation, q.required_truncation());

  Outcome out{manifest_for("evolve", sys.manifest_parameters(), opt, truncation), {}};
  const ChainModel model = build_model(system, model_options(opt, truncation));
  out.checks = model.checks;
  out.manifest.digits = model.digits;

  json rows = json::array();
  double worst = 0.0, worst_identity = 0.0, worst_entry = 0.0;
  bool any_identity = false, any_entry = false;
  for (const auto& q : queries) {
    const EvolutionResult res = evolve(q, model);
    json row = {{"n", q.n}, {"m", q.m}, {"r", q.r}, {"chain", to_string(q.chain)}, {"truncation", res.truncation}};
    if (res.integral) row["integral"] = real_json(*res.integral, 20);
    if (res.matrix_power) row["matrix_power"] = real_json(*res.matrix_power, 20);
    if (res.exact) row["exact"] = *res.exact;
    if (res.integral && res.matrix_power) row["discrepancy"] = res.discrepancy;
    rows.push_back(std::move(row));
    worst = std::max(worst, res.discrepancy);
    if (res.integral && q.r == 0) {
      any_identity = true;
      worst_identity = std::max(worst_identity, std::fabs(res.integral->to_double() - (q.n == q.m ? 1.0 : 0.0)));
    }
    if (res.integral && res.matrix_power && q.r == 1) {
      any_entry = true;
      worst_entry = std::max(worst_entry, res.discrepancy);
    }
  }
  if (method == EvolutionMethod::both)
    out.checks.push_back({"kmg_consistency", worst <= args.tolerance,
                          std::to_string(queries.size()) + " queries, max |integral - matrix power| " + sci(worst)});
  if (any_identity)
    out.checks.push_back({"kmg_identity_r0", worst_identity <= 1e-10, "max deviation " + sci(worst_identity)});
  if (any_entry)
    out.checks.push_back({"kmg_entries_r1", worst_entry <= 1e-10, "max deviation " + sci(worst_entry)});

  write_json(opt, "evolve.json", envelope("evolve", out.manifest, {{"results", rows}}));
  if (queries.size() == 1) {
    const auto& r = rows.front();
    say(opt, "P_" + std::string(r["chain"]) + "(" + std::to_string(args.n) + " -> " + std::to_string(args.m) +
                 ", r=" + std::to_string(args.r) + ")");
    if (r.contains("integral")) say(opt, "  integral " + std::string(r["integral"]["text"]));
    if (r.contains("matrix_power")) say(opt, "  matrix power " + std::string(r["matrix_power"]["text"]));
    if (r.contains("exact")) say(opt, "  exact " + std::string(r["exact"]));
    say(opt, "\n");
  } else {
    say(opt, std::to_string(queries.size()) + " queries, max discrepancy " + sci(worst) + "\n");
  }
  return out;
}

Outcome cmd_classify(const SystemArgs& sys, const CommonOptions& opt, bool probe) {
  const WeightSystem system = sys.system();
  Outcome out{manifest_for("classify", sys.manifest_parameters(), opt, 0), {}};
  const Classification c = classify_chain(system);
  json payload = {{"system", system.describe()},
                  {"verdict", to_string(c.verdict)},
                  {"rule", c.rule},
                  {"readings", c.readings}};
  if (probe) {
    const DivergenceProbe p = divergence_probe(system, opt.digits);
    json partial = json::array();
    for (std::size_t i = 0; i < p.eps.size(); ++i)
      partial.push_back({{"eps", p.eps[i]}, {"integral", p.partial_integrals[i].to_double()}});
    payload["probe"] = {{"partial_integrals", partial}, {"growing", p.growing}};
  }
  out.checks.push_back({"classification", true, std::string(to_string(c.verdict)) + " (" + c.rule + ")"});
  write_json(opt, "classify.json", envelope("classify", out.manifest, payload));
  say(opt, system.describe() + ": " + to_string(c.verdict) + "\n  " + c.rule + "\n");
  for (const auto& r : c.readings) say(opt, "  " + r + "\n");
  return out;
}

Outcome cmd_simulate(const SystemArgs& sys, const SimulateArgs& args, const CommonOptions& opt) {
  const WeightSystem system = sys.system();
  SimConfig cfg;
  cfg.chain = parse_chain_side(args.chain);
  cfg.start_state = args.start;
  cfg.steps = args.steps;
  cfg.trajectories = args.trajectories;
  cfg.seed = opt.seed.value_or(0);
  cfg.threads = args.threads;
  const std::size_t n = std::max(cfg.required_truncation(), opt.size);
  cfg.truncation = n;

  CommonOptions seeded = opt;
  seeded.seed = cfg.seed;
  Outcome out{manifest_for("simulate", sys.manifest_parameters(), seeded, n), {}};
  const ChainModel model = build_model(system, model_options(opt, n));
  out.checks = model.checks;
  out.manifest.digits = model.digits;

  const TransitionTable table =
      model.exact_H ? transition_table(exact_pair(model, n), cfg.chain) : transition_table(numeric_pair(model, n), cfg.chain);
  const SimReport report = simulate(cfg, table);
  out.checks.push_back({"conservation", report.conserved(), "walkers per time step sum to the trajectory count"});
  if (cfg.trajectories * std::max<std::size_t>(cfg.steps, 1) <= 20'000'000) {
    SimConfig other = cfg;
    other.threads = cfg.threads == 1 ? 3 : 1;
    const bool same = simulate(other, table).visit_counts == report.visit_counts;
    out.checks.push_back({"determinism", same, "rerun with a different thread count"});
  }

  json payload = report;
  if (args.compare) {
    // Exact r-step row by the integral representation for short horizons,
    // otherwise by banded matrix powers of the same truncation.
    std::vector<std::pair<std::size_t, double>> exact;
    const std::size_t lo = cfg.start_state > 2 * cfg.steps ? cfg.start_state - 2 * cfg.steps : 0;
    const std::size_t hi = cfg.start_state + cfg.jump_reach() * cfg.steps;
    const bool integral = cfg.steps <= 12;
    for (std::size_t m = lo; m <= hi; ++m) {
      const EvolutionQuery q{cfg.start_state, m, cfg.steps, cfg.chain,
                             integral ? EvolutionMethod::integral : EvolutionMethod::matrix_power};
      const EvolutionResult res = evolve(q, model);
      exact.emplace_back(m, integral ? res.integral->to_double() : res.matrix_power->to_double());
    }
    const SimComparison cmp = empirical_vs_kmg(report, exact);
    json cells = json::array();
    for (const auto& c : cmp.cells)
      cells.push_back({{"state", c.state}, {"empirical", c.empirical}, {"exact", c.exact}, {"sigma", c.sigma},
                       {"z", c.z}, {"flagged", c.flagged}});
    payload["comparison"] = {{"method", integral ? "integral" : "matrix_power"}, {"cells", cells},
                             {"max_abs_z", cmp.max_abs_z}};
    out.checks.push_back({"empirical_vs_kmg", !cmp.any_flagged, "max |z| " + sci(cmp.max_abs_z)});
  }

  write_json(opt, "simulation.json", envelope("simulation", out.manifest, payload));
  if (wants(opt, "csv")) write_file(opt, "simulation.csv", sim_report_csv(report, out.manifest));
  char line[160];
  std::snprintf(line, sizeof line, "%zu trajectories, %zu steps (%s), return frequency %.4f, killed %llu\n",
                cfg.trajectories, cfg.steps, CounterRng::kAlgorithm, report.return_frequency,
                static_cast<unsigned long long>(report.killed));
  say(opt, line);
  for (const auto& e : report.rstep_estimates) {
    std::snprintf(line, sizeof line, "  P(%zu -> %zu) = %.5f +- %.5f\n", cfg.start_state, e.state, e.probability,
                  e.standard_error);
    say(opt, line);
  }
  return out;
}

Outcome cmd_calibrate(const SystemArgs& sys, const CalibrateArgs& args, const CommonOptions& opt) {
  const WeightSystem system = sys.system();
  if (system.kind() != WeightKind::jacobi_pineiro) throw UnsupportedError("calibrate applies to jp systems only");
  CommonOptions exact_opt = opt;
  exact_opt.mode = "exact";
  Outcome out{manifest_for("calibrate", sys.manifest_parameters(), exact_opt, args.count + 2), {}};
  const ChainModel model = build_model(system, model_options(exact_opt, args.count + 2));
  out.checks = model.checks;
  const CalibrationReport rep =
      calibrate_conventions(system.jp(), *model.exact_H, model.exact_family->B_at_1, args.count);

  auto mismatch_json = [](const StreamMismatch& m) {
    return json{{"stream", m.stream}, {"index", m.index}, {"oracle", m.oracle.to_string()},
                {"formula", m.formula.to_string()}};
  };
  auto stream_json = [&](const StreamComparison& s) {
    json mm = json::array();
    for (const auto& m : s.mismatches) mm.push_back(mismatch_json(m));
    return json{{"stream", s.stream}, {"compared", s.compared}, {"matches", s.matches}, {"mismatches", mm}};
  };
  json candidates = json::array();
  for (const auto& c : rep.candidates) {
    json streams = json::array();
    for (const auto& s : c.streams) streams.push_back(stream_json(s));
    json cand = {{"convention", to_string(c.convention)}, {"third_lambda", to_string(c.reading)},
                 {"streams", streams}, {"mismatch_count", c.mismatch_count}, {"c0_matches", c.c0_matches}};
    cand["first_negative_lambda"] = c.first_negative_lambda ? json(*c.first_negative_lambda) : json(nullptr);
    candidates.push_back(std::move(cand));
  }
  json c0 = json::array();
  for (auto c : rep.c0_conventions) c0.push_back(to_string(c));
  json known = json::array();
  for (const auto& m : rep.known_discrepancies) known.push_back(mismatch_json(m));
  const auto& sel = rep.candidates.at(rep.selected);
  const json payload = {{"params", system.jp().to_string()},
                        {"compared", rep.compared},
                        {"candidates", candidates},
                        {"selected", {{"convention", to_string(sel.convention)}, {"third_lambda", to_string(sel.reading)}}},
                        {"c0_conventions", c0},
                        {"closed_b_at_1", stream_json(rep.closed_b_at_1)},
                        {"known_discrepancies", known}};

  out.checks.push_back({"c_stream_unique_convention", rep.c0_conventions.size() == 1,
                        std::to_string(rep.c0_conventions.size()) + " convention(s) reproduce the oracle c_0"});
  out.checks.push_back({"discrepancies_listed", rep.known_discrepancies.size() == sel.mismatch_count,
                        std::to_string(rep.known_discrepancies.size()) + " residual mismatches listed"});
  write_json(opt, "calibration.json", envelope("calibration", out.manifest, payload));

  say(opt, "selected " + std::string(to_string(sel.convention)) + " / " + to_string(sel.reading) + "\n");
  for (const auto& c : rep.candidates) {
    say(opt, "  " + std::string(to_string(c.convention)) + "/" + to_string(c.reading) + ": " +
                 std::to_string(c.mismatch_count) + " mismatches, c0 " + (c.c0_matches ? "matches" : "differs") + "\n");
  }
  say(opt, "  closed B(1): " + std::to_string(rep.closed_b_at_1.matches) + "/" +
               std::to_string(rep.closed_b_at_1.compared) + " match\n");
  for (const auto& m : rep.known_discrepancies)
    say(opt, "  KNOWN-DISCREPANCY " + m.stream + "_" + std::to_string(m.index) + ": oracle " + m.oracle.to_string() +
                 ", formula " + m.formula.to_string() + "\n");
  return out;
}

Outcome cmd_limits(const SystemArgs& sys, const LimitsArgs& args, const CommonOptions& opt) {
  const WeightSystem system = sys.system();
  const std::size_t n_total = opt.size;
  if (n_total < args.window + 12) throw SizingError("limits needs --size of at least window + 12");
  Outcome out{manifest_for("limits", sys.manifest_parameters(), opt, n_total), {}};
  const ChainModel model = build_model(system, model_options(opt, n_total));
  out.checks = model.checks;
  out.manifest.digits = model.digits;

  const JacobiPineiroLimits lim;
  const std::size_t at = n_total - 10;
  const double a = model.H.a[at].to_double(), b = model.H.b[at].to_double(), c = model.H.c[at].to_double();
  const auto diag = poincare_diagnostic(model.H, model.family.B_at_1, model.family.q_at_1, model.rho);
  const double q_ratio = diag.q_ratio.at(at), B_ratio = diag.B_ratio.at(at);
  const auto pair = numeric_pair(model, n_total);
  const TransposedLimitReport tl = verify_transposed_limit(pair, args.window);

  const double da = std::fabs(a - lim.a.to_double()), db = std::fabs(b - lim.b.to_double()),
               dc = std::fabs(c - lim.c.to_double());
  out.checks.push_back({"band_limits", std::max({da, db, dc}) <= 1e-3,
                        "n=" + std::to_string(at) + ": |a-k^3| " + sci(da) + ", |b-3k^2| " + sci(db) + ", |c-3k| " +
                            sci(dc)});
  out.checks.push_back({"typeI_ratio", std::fabs(q_ratio - 27.0 / 8) <= 1e-2, "q_{n+1}/q_n = " + sci(q_ratio)});
  out.checks.push_back({"typeII_ratio", std::fabs(B_ratio - 8.0 / 27) <= 1e-3, "B_{n+1}(1)/B_n(1) = " + sci(B_ratio)});
  out.checks.push_back({"transposed_limit", tl.decreasing,
                        "head max " + sci(tl.head_max) + ", tail max " + sci(tl.tail_max)});
  out.checks.push_back({"poincare_characteristic", diag.characteristic_ok, "roots -27 and 27/8"});

  json payload = {{"system", system.describe()},
                  {"index", at},
                  {"bands", {{"a", a}, {"b", b}, {"c", c}}},
                  {"limits", {{"a", lim.a.to_string()}, {"b", lim.b.to_string()}, {"c", lim.c.to_string()}}},
                  {"q_ratio", q_ratio},
                  {"B_ratio", B_ratio},
                  {"poincare",
                   {{"s_limit", diag.s_limit.to_string()},
                    {"t_limit", diag.t_limit.to_string()},
                    {"max_cd_residual", diag.max_cd_residual},
                    {"characteristic_ok", diag.characteristic_ok},
                    {"q_ratio", diag.q_ratio},
                    {"B_ratio", diag.B_ratio}}},
                  {"transposed_limit",
                   {{"first_row", tl.first_row},
                    {"discrepancy", tl.discrepancy},
                    {"head_max", tl.head_max},
                    {"tail_max", tl.tail_max},
                    {"window_max", tl.window_max},
                    {"decay_slope", tl.decay_slope},
                    {"decreasing", tl.decreasing}}},
                  {"achieved_digits", std::isinf(model.achieved_digits) ? -1.0 : model.achieved_digits},
                  {"escalation_digits", model.escalation_digits}};
  if (args.norm) {
    const RescaledOperator r = rescale_to_unit_norm(model.H, {}, model.normalization == Normalization::toeplitz);
    payload["norm"] = {{"value", r.norm}, {"truncations", r.estimate.truncations},
                       {"estimates", r.estimate.estimates}, {"scaled_norm", r.scaled_norm}};
    say(opt, "operator norm " + sci(r.norm) + ", rescaled operator norm " + sci(r.scaled_norm) + "\n");
  }
  write_json(opt, "limits.json", envelope("limits", out.manifest, payload));

  char line[200];
  std::snprintf(line, sizeof line, "n=%zu: a=%.6e b=%.6e c=%.6e\n  q ratio %.6f (27/8), B ratio %.6f (8/27)\n", at,
                a, b, c, q_ratio, B_ratio);
  say(opt, line);
  std::snprintf(line, sizeof line, "  transposed limit: head %.3e, tail %.3e, last %zu rows %.3e\n", tl.head_max,
                tl.tail_max, args.window, tl.window_max);
  say(opt, line);
  return out;
}

Outcome cmd_classical(const ClassicalArgs& args, const CommonOptions& opt) {
  std::vector<std::pair<std::string, std::string>> params = {{"measure", args.measure}};
  TridiagonalChain chain;
  if (args.measure == "chebyshev") {
    chain = chebyshev_chain();
  } else if (args.measure == "jacobi") {
    chain = jacobi_chain(Rational::parse(args.a), Rational::parse(args.b));
    params.emplace_back("a", args.a);
    params.emplace_back("b", args.b);
  } else {
    throw ParseError("measure must be chebyshev or jacobi");
  }
  params.emplace_back("z", args.z);
  CommonOptions numeric = opt;
  numeric.mode = "numeric";
  Outcome out{manifest_for("classical", params, numeric, chain.size()), {}};

  const int d = opt.digits;
  const Real z = Real::parse(args.z, d);
  if (abs(z) <= Real(1L, d)) throw DomainError("z must lie outside [-1, 1]");
  const SpectralSeries series = stieltjes_series(chain, z, args.terms);
  const Real ratio = markov_stieltjes_ratio(chain, z, args.n);
  const double ratio_gap = abs(ratio - series.value).to_double();
  const double bound = series.remainder_bound.to_double();

  json payload = {{"chain", chain.name},
                  {"z", args.z},
                  {"series", {{"terms", args.terms}, {"value", real_json(series.value, 20)}, {"remainder_bound", bound}}},
                  {"markov_stieltjes", {{"n", args.n}, {"value", real_json(ratio, 20)}, {"gap_to_series", ratio_gap}}}};
  if (chain.name == "chebyshev") {
    const Real closed = Real(1L, d) / sqrt(z * z - Real(1L, d));
    const double err = abs(series.value - closed).to_double();
    payload["closed_form"] = real_json(closed, 20);
    out.checks.push_back({"series_within_bound", err <= bound, "|series - closed form| " + sci(err) + " <= " + sci(bound)});
  }
  out.checks.push_back({"markov_stieltjes", ratio_gap <= 1e-6 + bound,
                        "|N_n/P_n - series| " + sci(ratio_gap) + " at n=" + std::to_string(args.n)});

  double worst = 0.0;
  for (std::size_t k = 0; k <= args.k; ++k)
    for (std::size_t n = 0; n <= 6; ++n)
      for (std::size_t m = 0; m <= 6; ++m)
        worst = std::max(worst, std::fabs(classical_evolution(chain, n, m, k, d).to_double() -
                                          classical_matrix_power(chain, n, m, k).to_double()));
  payload["evolution"] = {{"max_k", args.k}, {"max_discrepancy", worst}};
  out.checks.push_back({"classical_evolution", worst <= 1e-10, "max |integral - matrix power| " + sci(worst)});
  write_json(opt, "classical.json", envelope("classical", out.manifest, payload));

  say(opt, chain.name + " chain, z = " + args.z + "\n  S(z) ~ " + series.value.to_string(16) + " (bound " +
               sci(bound) + ")\n  N_n/P_n at n=" + std::to_string(args.n) + ": " + ratio.to_string(16) +
               "\n  evolution vs matrix power: " + sci(worst) + "\n");
  return out;
}

}  // namespace mochain::cli
