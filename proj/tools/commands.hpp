#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mochain/model.hpp"
#include "mochain/serialization.hpp"

namespace mochain::cli {

/// Flags shared by every subcommand.
struct CommonOptions {
  std::string mode = "exact";
  int digits = 40;
  std::size_t size = 8;
  std::string out = ".";
  std::string format = "all";  // json | csv | txt | all
  std::string normalization = "auto";
  std::optional<std::uint64_t> seed;
  bool quiet = false;
};

/// Weight-system parameters as given on the command line.
struct SystemArgs {
  std::string family;                  // jp | ll
  std::vector<std::string> positional;  // alpha1 alpha2 alpha0, or one tuple / four values
  std::string alpha1, alpha2, alpha0;
  std::string tuple;

  WeightSystem system() const;
  std::vector<std::pair<std::string, std::string>> manifest_parameters() const;
};

struct EvolveArgs {
  std::size_t n = 0, m = 0, r = 1;
  std::string chain = "both";
  std::string method = "both";
  std::optional<std::size_t> grid;  // all n, m, r <= grid
  double tolerance = 1e-8;
};

struct SimulateArgs {
  std::string chain = "hat";
  std::size_t start = 0;
  std::size_t steps = 2;
  std::size_t trajectories = 100000;
  unsigned threads = 0;
  bool compare = true;
};

struct CalibrateArgs {
  std::size_t count = 8;
};

struct LimitsArgs {
  std::size_t window = 10;
  bool norm = false;
};

struct ClassicalArgs {
  std::string measure = "chebyshev";
  std::string a = "-1/2", b = "-1/2";
  std::string z = "2";
  std::size_t terms = 40;
  std::size_t n = 20;
  std::size_t k = 6;
};

using Checks = std::vector<CheckRecord>;

/// What a command reports back; main turns it into checks.json and the exit code.
struct Outcome {
  RunManifest manifest;
  Checks checks;
};

Outcome cmd_build(const SystemArgs& sys, const CommonOptions& opt, std::size_t txt_rows);
Outcome cmd_evolve(const SystemArgs& sys, const EvolveArgs& args, const CommonOptions& opt);
Outcome cmd_classify(const SystemArgs& sys, const CommonOptions& opt, bool probe);
Outcome cmd_simulate(const SystemArgs& sys, const SimulateArgs& args, const CommonOptions& opt);
Outcome cmd_calibrate(const SystemArgs& sys, const CalibrateArgs& args, const CommonOptions& opt);
Outcome cmd_limits(const SystemArgs& sys, const LimitsArgs& args, const CommonOptions& opt);
Outcome cmd_classical(const ClassicalArgs& args, const CommonOptions& opt);

/// checks.json in the output directory, embedding the manifest.
void write_checks(const Outcome& outcome, const CommonOptions& opt);

}  // namespace mochain::cli
