#include <random>

#include <benchmark/benchmark.h>

#include "mod2betti/f2la.hpp"
#include "mod2betti/moduli.hpp"
#include "mod2betti/mv.hpp"

namespace {

mod2betti::BitMatrix square(std::size_t n) {
  std::mt19937_64 rng(n);
  return mod2betti::BitMatrix::random(n, n, rng);
}

void BM_rank(benchmark::State& state) {
  const auto m = square(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mod2betti::rank(m));
}
BENCHMARK(BM_rank)->RangeMultiplier(2)->Range(64, 2048);

void BM_rank_serial(benchmark::State& state) {
  const auto m = square(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mod2betti::rank_serial(m));
}
BENCHMARK(BM_rank_serial)->RangeMultiplier(2)->Range(64, 2048);

// Full 2+2 sweep: every admissible realization pair, every degree.
void BM_feasible_table_22(benchmark::State& state) {
  const auto d = mod2betti::genus2_data();
  for (auto _ : state) benchmark::DoNotOptimize(mod2betti::feasible_table(d, d).kept);
}
BENCHMARK(BM_feasible_table_22)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
