#include <benchmark/benchmark.h>

#include "mochain/classical.hpp"
#include "mochain/karlin_mcgregor.hpp"

namespace {

using namespace mochain;

const ChainModel& model() {
  static const ChainModel m = build_model(
      WeightSystem(JacobiPineiroParams::make(Rational(-1, 4), Rational(-1, 2), Rational(1, 2))), ModelOptions{.size = 24});
  return m;
}

void BM_KmgIntegral(benchmark::State& state) {
  const EvolutionQuery q{2, 3, static_cast<std::size_t>(state.range(0)), ChainSide::check, EvolutionMethod::integral};
  for (auto _ : state) benchmark::DoNotOptimize(kmg_probability(q, model()));
}
BENCHMARK(BM_KmgIntegral)->DenseRange(2, 6, 2);

void BM_ExactMatrixPower(benchmark::State& state) {
  const auto pair = exact_pair(model(), 24);
  const EvolutionQuery q{2, 3, static_cast<std::size_t>(state.range(0)), ChainSide::hat};
  for (auto _ : state) benchmark::DoNotOptimize(matrix_power_probability(q, pair));
}
BENCHMARK(BM_ExactMatrixPower)->DenseRange(2, 6, 2);

void BM_ChebyshevStieltjes(benchmark::State& state) {
  const auto chain = chebyshev_chain(256);
  const Real z(2L, 40);
  for (auto _ : state) benchmark::DoNotOptimize(stieltjes_series(chain, z, 80));
}
BENCHMARK(BM_ChebyshevStieltjes)->Unit(benchmark::kMicrosecond);

}  // namespace
