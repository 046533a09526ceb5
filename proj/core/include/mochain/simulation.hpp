#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mochain/karlin_mcgregor.hpp"
#include "mochain/stochastic.hpp"

namespace mochain {

/// Counter-based SplitMix64 streams. Draw k of trajectory t is
///   key  = mix(seed + t * kGolden)
///   bits = mix(key + (k + 1) * kGolden)
///   u    = (bits >> 11) * 2^-53
/// so every trajectory owns an independent substream and the order in which
/// trajectories run cannot matter.
struct CounterRng {
  static constexpr const char* kAlgorithm = "mochain-splitmix-ctr-v1";
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  static constexpr std::uint64_t trajectory_key(std::uint64_t seed, std::uint64_t t) noexcept {
    return mix(seed + t * kGolden);
  }
  static constexpr double uniform(std::uint64_t key, std::uint64_t k) noexcept {
    return static_cast<double>(mix(key + (k + 1) * kGolden) >> 11) * 0x1.0p-53;
  }
};

/// Row-wise cumulative transition probabilities of one chain in doubles.
/// Mass missing from a row (boundary-deficient rows) kills the walker.
struct TransitionTable {
  ChainSide chain = ChainSide::hat;
  std::size_t size = 0;
  int lower = 0;
  int upper = 0;
  std::vector<double> cumulative;  // size * width, row-major over offsets -lower..upper
  std::vector<double> row_mass;

  int width() const noexcept { return lower + upper + 1; }
};

template <class T>
TransitionTable transition_table(const StochasticPair<T>& pair, ChainSide chain);

struct SimConfig {
  ChainSide chain = ChainSide::hat;
  std::size_t start_state = 0;
  std::size_t steps = 0;
  std::size_t trajectories = 1;
  std::uint64_t seed = 0;
  std::optional<std::size_t> truncation;  // default: start + reach * steps + 3
  unsigned threads = 0;                   // 0: hardware concurrency

  std::size_t jump_reach() const { return chain == ChainSide::hat ? 1 : 2; }
  std::size_t required_truncation() const { return start_state + jump_reach() * steps + 3; }
  std::size_t effective_truncation() const { return truncation.value_or(required_truncation()); }
};

struct RStepEstimate {
  std::size_t state = 0;
  double probability = 0.0;
  double standard_error = 0.0;
};

struct SimReport {
  SimConfig config;
  std::string algorithm = CounterRng::kAlgorithm;
  std::size_t truncation = 0;
  /// visit_counts[t][s]: walkers in state s after t steps; the final column
  /// counts walkers killed on a boundary-deficient row.
  std::vector<std::vector<std::uint64_t>> visit_counts;
  std::vector<RStepEstimate> rstep_estimates;  // states reached after `steps`, with binomial SE
  std::uint64_t returns = 0;
  double return_frequency = 0.0;  // walkers back at start at some time 1..steps
  std::uint64_t killed = 0;

  std::size_t killed_column() const { return truncation; }
  /// Empirical probability of being in `state` after t steps.
  double estimate(std::size_t state, std::size_t t) const;
  bool conserved() const;
};

/// Throws SizingError when the table is smaller than the configured
/// truncation, and ConsistencyError if a walker ever reaches the last row.
SimReport simulate(const SimConfig& config, const TransitionTable& table);

template <class T>
SimReport simulate(const SimConfig& config, const StochasticPair<T>& pair) {
  return simulate(config, transition_table(pair, config.chain));
}

struct CellComparison {
  std::size_t state = 0;
  double empirical = 0.0;
  double exact = 0.0;
  double sigma = 0.0;  // binomial standard deviation under the exact value
  double z = 0.0;
  bool flagged = false;
};

struct SimComparison {
  std::vector<CellComparison> cells;
  double max_abs_z = 0.0;
  bool any_flagged = false;
};

/// Compares final-time estimates with exact probabilities given per target
/// state; flags |z| > z_limit.
SimComparison empirical_vs_kmg(const SimReport& report, const std::vector<std::pair<std::size_t, double>>& exact,
                               double z_limit = 4.0);

}  // namespace mochain
