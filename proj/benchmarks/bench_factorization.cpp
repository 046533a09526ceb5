#include <benchmark/benchmark.h>

#include "mochain/model.hpp"

namespace {

using namespace mochain;

const WeightSystem kRecurrent(JacobiPineiroParams::make(Rational(-1, 4), Rational(-1, 2), Rational(-1, 2)));

void BM_ExactModel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_model(kRecurrent, ModelOptions{.size = n}));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExactModel)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMillisecond)->Complexity();

// Escalation repeats the factorization at growing precision.
void BM_NumericModel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(build_model(kRecurrent, ModelOptions{.mode = Mode::numeric, .size = n, .digits = 30}));
}
BENCHMARK(BM_NumericModel)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

void BM_UniformTupleExact(benchmark::State& state) {
  const WeightSystem uniform(HypergeometricParams::uniform_tuple());
  for (auto _ : state) benchmark::DoNotOptimize(build_model(uniform, ModelOptions{.size = 12}));
}
BENCHMARK(BM_UniformTupleExact)->Unit(benchmark::kMillisecond);

}  // namespace
