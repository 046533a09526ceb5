#include <benchmark/benchmark.h>

#include "mochain/karlin_mcgregor.hpp"
#include "mochain/simulation.hpp"

namespace {

using namespace mochain;

void BM_SplitMixDraw(benchmark::State& state) {
  const auto key = CounterRng::trajectory_key(42, 0);
  std::uint64_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(CounterRng::uniform(key, k++));
}
BENCHMARK(BM_SplitMixDraw);

void BM_Simulate(benchmark::State& state) {
  const auto m = build_model(WeightSystem(HypergeometricParams::uniform_tuple()), ModelOptions{.size = 40});
  const auto table = transition_table(numeric_pair(m, 40), ChainSide::hat);
  SimConfig cfg{.chain = ChainSide::hat, .start_state = 0, .steps = 30, .trajectories = 100000, .seed = 1};
  cfg.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(simulate(cfg, table));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.trajectories * cfg.steps));
}
BENCHMARK(BM_Simulate)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
