#include "mochain/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "mochain/error.hpp"

namespace mochain {

namespace {

double value_of(const Rational& x, const SymbolicUnit&) { return x.to_double(); }
double value_of(const Real& x, const SymbolicUnit&) { return x.to_double(); }
double value_of(const UnitRatio& x, const SymbolicUnit& rho) {
  if (auto r = x.as_rational()) return r->to_double();
  return x.evaluate(rho.value).to_double();
}

template <class M>
void fill_rows(TransitionTable& table, const M& matrix, const SymbolicUnit& rho) {
  const auto w = static_cast<std::size_t>(table.width());
  table.cumulative.assign(table.size * w, 0.0);
  table.row_mass.assign(table.size, 0.0);
  for (std::size_t i = 0; i < table.size; ++i) {
    double acc = 0.0;
    for (int off = -table.lower; off <= table.upper; ++off) {
      const long j = static_cast<long>(i) + off;
      if (j >= 0 && j < static_cast<long>(table.size))
        acc += std::max(0.0, value_of(matrix(i, static_cast<std::size_t>(j)), rho));
      table.cumulative[i * w + static_cast<std::size_t>(off + table.lower)] = acc;
    }
    table.row_mass[i] = acc;
  }
}

using Counts = std::vector<std::uint64_t>;  // (steps + 1) x (truncation + 1), row-major

struct Partial {
  Counts visits;
  std::uint64_t returns = 0;
};

Partial run_block(const SimConfig& cfg, const TransitionTable& table, std::size_t n, std::uint64_t first,
                  std::uint64_t last) {
  const std::size_t cols = n + 1;
  const auto w = static_cast<std::size_t>(table.width());
  const std::size_t killed = n;
  const std::size_t edge = n - cfg.jump_reach();
  Partial p{Counts((cfg.steps + 1) * cols, 0), 0};

  for (std::uint64_t t = first; t < last; ++t) {
    const std::uint64_t key = CounterRng::trajectory_key(cfg.seed, t);
    std::size_t s = cfg.start_state;
    bool returned = false;
    ++p.visits[s];
    for (std::size_t k = 1; k <= cfg.steps; ++k) {
      if (s != killed) {
        const double u = CounterRng::uniform(key, k - 1);
        const double* row = &table.cumulative[s * w];
        const auto hit = static_cast<std::size_t>(std::upper_bound(row, row + w, u) - row);
        if (hit == w) {
          s = killed;
        } else {
          s = s + hit - static_cast<std::size_t>(table.lower);
          if (s >= edge) throw ConsistencyError("walker reached the truncation edge at state " + std::to_string(s));
          returned = returned || s == cfg.start_state;
        }
      }
      ++p.visits[k * cols + s];
    }
    if (returned) ++p.returns;
  }
  return p;
}

}  // namespace

template <class T>
TransitionTable transition_table(const StochasticPair<T>& pair, ChainSide chain) {
  TransitionTable table;
  table.chain = chain;
  table.size = pair.size();
  if (chain == ChainSide::hat) {
    table.lower = pair.hatH.lower();
    table.upper = pair.hatH.upper();
    fill_rows(table, pair.hatH, pair.rho);
  } else {
    table.lower = pair.checkH.lower();
    table.upper = pair.checkH.upper();
    fill_rows(table, pair.checkH, pair.rho);
  }
  return table;
}

template TransitionTable transition_table(const StochasticPair<Rational>&, ChainSide);
template TransitionTable transition_table(const StochasticPair<Real>&, ChainSide);

double SimReport::estimate(std::size_t state, std::size_t t) const {
  if (t >= visit_counts.size() || state > truncation) throw IndexError("simulation cell out of range");
  return static_cast<double>(visit_counts[t][state]) / static_cast<double>(config.trajectories);
}

bool SimReport::conserved() const {
  return std::all_of(visit_counts.begin(), visit_counts.end(), [&](const auto& row) {
    std::uint64_t sum = 0;
    for (auto c : row) sum += c;
    return sum == config.trajectories;
  });
}

SimReport simulate(const SimConfig& config, const TransitionTable& table) {
  if (config.trajectories < 1) throw DomainError("at least one trajectory is required");
  if (table.chain != config.chain) throw DomainError("transition table belongs to the other chain");
  const std::size_t n = config.effective_truncation();
  if (n < config.required_truncation())
    throw SizingError("truncation " + std::to_string(n) + " is below the " +
                      std::to_string(config.required_truncation()) + " states reachable in " +
                      std::to_string(config.steps) + " steps");
  if (table.size < n)
    throw SizingError("stochastic pair has " + std::to_string(table.size) + " states, simulation needs " +
                      std::to_string(n));

  unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, config.trajectories));

  std::vector<Partial> partials(threads);
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    const std::uint64_t total = config.trajectories;
    for (unsigned i = 0; i < threads; ++i) {
      const std::uint64_t first = total * i / threads, last = total * (i + 1) / threads;
      pool.emplace_back([&, i, first, last] {
        try {
          partials[i] = run_block(config, table, n, first, last);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  SimReport report;
  report.config = config;
  report.truncation = n;
  const std::size_t cols = n + 1;
  report.visit_counts.assign(config.steps + 1, std::vector<std::uint64_t>(cols, 0));
  for (const auto& p : partials) {
    for (std::size_t t = 0; t <= config.steps; ++t)
      for (std::size_t s = 0; s < cols; ++s) report.visit_counts[t][s] += p.visits[t * cols + s];
    report.returns += p.returns;
  }

  const double total = static_cast<double>(config.trajectories);
  const auto& last = report.visit_counts.back();
  for (std::size_t s = 0; s < n; ++s) {
    if (last[s] == 0) continue;
    const double p = static_cast<double>(last[s]) / total;
    report.rstep_estimates.push_back({s, p, std::sqrt(p * (1.0 - p) / total)});
  }
  report.killed = last[n];
  report.return_frequency = static_cast<double>(report.returns) / total;
  return report;
}

SimComparison empirical_vs_kmg(const SimReport& report, const std::vector<std::pair<std::size_t, double>>& exact,
                               double z_limit) {
  SimComparison out;
  const double total = static_cast<double>(report.config.trajectories);
  for (const auto& [state, p] : exact) {
    CellComparison c;
    c.state = state;
    c.exact = p;
    c.empirical = report.estimate(state, report.config.steps);
    c.sigma = std::sqrt(std::max(p * (1.0 - p), 0.0) / total);
    const double diff = c.empirical - p;
    if (c.sigma > 0.0)
      c.z = diff / c.sigma;
    else
      c.z = diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff);
    c.flagged = std::fabs(c.z) > z_limit;
    out.max_abs_z = std::max(out.max_abs_z, std::fabs(c.z));
    out.any_flagged = out.any_flagged || c.flagged;
    out.cells.push_back(c);
  }
  return out;
}

}  // namespace mochain
