#include <exception>
#include <functional>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "commands.hpp"
#include "mochain/error.hpp"

using namespace mochain;
using namespace mochain::cli;

namespace {

// 0 success, 1 a check failed, 2 usage; library errors get one code per category.
int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain: return 10;
    case ErrorKind::numeric: return 11;
    case ErrorKind::singular_minor: return 12;
    case ErrorKind::structure: return 13;
    case ErrorKind::positivity: return 14;
    case ErrorKind::consistency: return 15;
    case ErrorKind::sizing: return 16;
    case ErrorKind::parse: return 17;
    case ErrorKind::unsupported: return 18;
    case ErrorKind::index: return 19;
  }
  return 70;
}

void add_common(CLI::App* app, CommonOptions& o, bool with_seed = false) {
  app->add_option("--mode", o.mode, "exact or numeric")->capture_default_str()->check(CLI::IsMember({"exact", "numeric"}));
  app->add_option("--digits", o.digits, "working / requested precision in decimal digits")->capture_default_str();
  app->add_option("--size", o.size, "truncation size N")->capture_default_str();
  app->add_option("--out", o.out, "output directory")->capture_default_str();
  app->add_option("--format", o.format, "json, csv, txt or all")
      ->capture_default_str()
      ->check(CLI::IsMember({"json", "csv", "txt", "all"}));
  app->add_option("--normalization", o.normalization, "auto, oracle or toeplitz")
      ->capture_default_str()
      ->check(CLI::IsMember({"auto", "oracle", "toeplitz"}));
  if (with_seed) app->add_option("--seed", o.seed, "64-bit PRNG seed");
  app->add_flag("-q,--quiet", o.quiet, "no console summary");
}

void add_system(CLI::App* app, SystemArgs& s) {
  app->add_option("family", s.family, "jp or ll")->required()->check(CLI::IsMember({"jp", "ll"}));
  app->add_option("params", s.positional, "jp: alpha1 alpha2 alpha0; ll: a,b,c,d");
  app->add_option("--alpha1", s.alpha1, "first Jacobi exponent (p/q)");
  app->add_option("--alpha2", s.alpha2, "second Jacobi exponent (p/q)");
  app->add_option("--alpha0", s.alpha0, "common exponent of (1-x) (p/q)");
  app->add_option("--tuple", s.tuple, "hypergeometric tuple a,b,c,d");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiple-orthogonal-polynomial Markov chains: Hessenberg recurrences, dual stochastic matrices, "
               "Karlin-McGregor evolution and simulation."};
  app.set_version_flag("--version", std::string(MOCHAIN_VERSION));
  app.require_subcommand(1);

  // Each subcommand owns its options so defaults can differ.
  std::map<std::string, CommonOptions> common;
  SystemArgs sys;
  std::size_t txt_rows = 0;
  EvolveArgs evolve_args;
  SimulateArgs sim_args;
  CalibrateArgs cal_args;
  LimitsArgs lim_args;
  ClassicalArgs cls_args;
  bool probe = false;
  std::map<std::string, std::function<Outcome()>> run;

  auto* build = app.add_subcommand("build", "Hessenberg recurrence and both stochastic truncations");
  add_common(build, common["build"]);
  add_system(build, sys);
  build->add_option("--rows", txt_rows, "rows shown in txt tables (0: all)");
  run["build"] = [&] { return cmd_build(sys, common["build"], txt_rows); };

  auto* evolve = app.add_subcommand("evolve", "r-step transition probabilities, integral vs matrix power");
  add_common(evolve, common["evolve"]);
  add_system(evolve, sys);
  evolve->add_option("--from", evolve_args.n, "start state");
  evolve->add_option("--to", evolve_args.m, "end state");
  evolve->add_option("--steps", evolve_args.r, "number of steps r");
  evolve->add_option("--grid", evolve_args.grid, "all n, m, r up to this bound");
  evolve->add_option("--chain", evolve_args.chain)->check(CLI::IsMember({"hat", "check", "both"}))->capture_default_str();
  evolve->add_option("--method", evolve_args.method)
      ->check(CLI::IsMember({"integral", "matrix_power", "both"}))
      ->capture_default_str();
  evolve->add_option("--tolerance", evolve_args.tolerance)->capture_default_str();
  run["evolve"] = [&] { return cmd_evolve(sys, evolve_args, common["evolve"]); };

  auto* classify = app.add_subcommand("classify", "recurrent / transient verdict");
  add_common(classify, common["classify"]);
  add_system(classify, sys);
  classify->add_flag("--probe", probe, "also print the numeric divergence probe");
  run["classify"] = [&] { return cmd_classify(sys, common["classify"], probe); };

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo trajectories compared with exact probabilities");
  common["simulate"].size = 0;
  add_common(simulate, common["simulate"], true);
  add_system(simulate, sys);
  simulate->add_option("--chain", sim_args.chain)->check(CLI::IsMember({"hat", "check"}))->capture_default_str();
  simulate->add_option("--start", sim_args.start)->capture_default_str();
  simulate->add_option("--steps", sim_args.steps)->capture_default_str();
  simulate->add_option("--trajectories", sim_args.trajectories)->capture_default_str();
  simulate->add_option("--threads", sim_args.threads, "worker threads (0: all cores)");
  simulate->add_flag("!--no-compare", sim_args.compare, "skip the comparison with exact probabilities");
  run["simulate"] = [&] { return cmd_simulate(sys, sim_args, common["simulate"]); };

  auto* calibrate = app.add_subcommand("calibrate", "closed-form lambda conventions vs the computed recurrence");
  add_common(calibrate, common["calibrate"]);
  add_system(calibrate, sys);
  calibrate->add_option("--count", cal_args.count, "coefficients compared per stream")->capture_default_str();
  run["calibrate"] = [&] { return cmd_calibrate(sys, cal_args, common["calibrate"]); };

  auto* limits = app.add_subcommand("limits", "asymptotics: band limits, ratio limits, transposed limit");
  common["limits"].mode = "numeric";
  common["limits"].size = 300;
  add_common(limits, common["limits"]);
  add_system(limits, sys);
  limits->add_option("--window", lim_args.window)->capture_default_str();
  limits->add_flag("--norm", lim_args.norm, "estimate the operator norm and rescale");
  run["limits"] = [&] { return cmd_limits(sys, lim_args, common["limits"]); };

  auto* classical = app.add_subcommand("classical", "classical birth-death baseline (Chebyshev, Jacobi)");
  add_common(classical, common["classical"]);
  classical->add_option("measure", cls_args.measure)->check(CLI::IsMember({"chebyshev", "jacobi"}))->capture_default_str();
  classical->add_option("--a", cls_args.a, "Jacobi exponent of (1-x)")->capture_default_str();
  classical->add_option("--b", cls_args.b, "Jacobi exponent of (1+x)")->capture_default_str();
  classical->add_option("--z", cls_args.z, "evaluation point outside [-1, 1]")->capture_default_str();
  classical->add_option("--terms", cls_args.terms)->capture_default_str();
  classical->add_option("--n", cls_args.n, "Markov-Stieltjes ratio index")->capture_default_str();
  classical->add_option("--k", cls_args.k, "largest evolution step")->capture_default_str();
  run["classical"] = [&] { return cmd_classical(cls_args, common["classical"]); };

  auto fallback_outcome = [&](const std::string& name) {
    const CommonOptions& opt = common[name];
    Outcome o;
    o.manifest.command = name;
    o.manifest.mode = opt.mode;
    o.manifest.digits = opt.digits;
    o.manifest.truncation = opt.size;
    o.manifest.seed = opt.seed;
    o.manifest.timestamp = RunManifest::now_utc();
    return o;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (app.exit(e) == 0) return 0;
    // Usage errors still leave a summary when the output directory is known.
    const auto subs = app.get_subcommands();
    if (!subs.empty()) {
      Outcome outcome = fallback_outcome(subs.front()->get_name());
      outcome.checks.push_back({"error:usage", false, e.what()});
      try {
        write_checks(outcome, common[subs.front()->get_name()]);
      } catch (const std::exception&) {
      }
    }
    return 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  CommonOptions& opt = common[name];
  Outcome outcome = fallback_outcome(name);
  int code = 0;
  try {
    outcome = run.at(name)();
    for (const auto& c : outcome.checks) {
      if (!c.passed) {
        std::cerr << "check failed: " << c.name << ": " << c.detail << '\n';
        code = 1;
      }
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    outcome.checks.push_back({std::string("error:") + to_string(e.kind()), false, e.what()});
    code = exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    outcome.checks.push_back({"error:internal", false, e.what()});
    code = 70;
  }
  try {
    write_checks(outcome, opt);
  } catch (const std::exception& e) {
    std::cerr << "cannot write checks.json: " << e.what() << '\n';
    if (code == 0) code = 70;
  }
  return code;
}
