#include <benchmark/benchmark.h>

#include "simsched/analysis.hpp"
#include "simsched/schedulers.hpp"

using namespace simsched;

static void BM_PrefixEnvelope(benchmark::State& state) {
  const auto inst = gen_random(EnvKind::Identical, Mode::NP, 3, static_cast<int>(state.range(0)), 1,
                               Distribution::UniformInt);
  for (auto _ : state) benchmark::DoNotOptimize(brute_prefix_envelope(inst));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(assignment_count(inst)));
}
BENCHMARK(BM_PrefixEnvelope)->DenseRange(6, 12, 2);

static void BM_SStarWorkers(benchmark::State& state) {
  const auto inst = gen_random(EnvKind::Unrelated, Mode::NP, 4, 10, 2, Distribution::UniformInt);
  const OracleOptions opt{{}, static_cast<unsigned>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(brute_s_star(inst, opt));
}
BENCHMARK(BM_SStarWorkers)->Arg(1)->Arg(2)->Arg(4)->UseRealTime();

static void BM_Lpt(benchmark::State& state) {
  const auto inst = gen_random(EnvKind::Identical, Mode::NP, 16, static_cast<int>(state.range(0)), 3,
                               Distribution::UniformReal);
  for (auto _ : state) benchmark::DoNotOptimize(lpt(inst));
}
BENCHMARK(BM_Lpt)->Range(64, 16384);

static void BM_Mcr(benchmark::State& state) {
  const auto inst = gen_random(EnvKind::Identical, Mode::PP, 16, static_cast<int>(state.range(0)), 4,
                               Distribution::Exponential);
  for (auto _ : state) benchmark::DoNotOptimize(mcr(inst));
}
BENCHMARK(BM_Mcr)->Range(64, 16384);

static void BM_NumericEnvelope(benchmark::State& state) {
  const std::vector<double> speeds{3, 1.5, 1, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(numeric_fractional_envelope(speeds, 2, 5, 10'000));
}
BENCHMARK(BM_NumericEnvelope);

static void BM_WarQfp(benchmark::State& state) {
  Rng rng(6);
  const SpeedProfile p(random_speeds(static_cast<std::size_t>(state.range(0)), rng));
  for (auto _ : state) benchmark::DoNotOptimize(war_q_fp(p));
}
BENCHMARK(BM_WarQfp)->Arg(4)->Arg(64);

BENCHMARK_MAIN();
