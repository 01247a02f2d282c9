#include <benchmark/benchmark.h>

#include <random>

#include "sqkd/depolarizing.hpp"
#include "sqkd/key_rate.hpp"
#include "sqkd/simulation.hpp"
#include "sqkd/sweep.hpp"

using namespace sqkd;

static void BM_KeyRate(benchmark::State& state) {
  const ChannelStatistics stats = closed_form_statistics(DepolScenario{0.1, -0.05});
  for (auto _ : state) {
    benchmark::DoNotOptimize(key_rate(stats).r);
  }
}
BENCHMARK(BM_KeyRate);

static void BM_EigenHermitian(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss(0.0, 1.0);
  HermitianMatrix m(n);
  for (std::size_t k = 0; k < n; ++k) {
    ComplexVec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = Complex{gauss(rng), gauss(rng)};
    m.add_outer(v, 1.0 / static_cast<double>(n));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigenvalues_hermitian(m));
  }
}
BENCHMARK(BM_EigenHermitian)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

static void BM_ExactConditionalEntropy(benchmark::State& state) {
  std::mt19937_64 rng(11);
  const AttackSpec attack = random_attack(4, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_conditional_entropy(attack));
  }
}
BENCHMARK(BM_ExactConditionalEntropy);

static void BM_SimulateIterations(benchmark::State& state) {
  SimulationConfig config;
  config.attack = dilation(DepolScenario{0.1, 0.0});
  config.iterations = static_cast<std::uint64_t>(state.range(0));
  config.seed = 3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run(config).iterations);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateIterations)->Arg(10000)->Arg(100000)->Arg(1000000);

static void BM_Threshold(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(threshold(0.0));
  }
}
BENCHMARK(BM_Threshold);

static void BM_SweepRow(benchmark::State& state) {
  SweepGrid grid;
  grid.bias_values = {0.0, -0.1};
  grid.q_min = 0.0;
  grid.q_max = 0.2;
  grid.q_step = 0.001;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep_keyrate(grid).size());
  }
}
BENCHMARK(BM_SweepRow);

BENCHMARK_MAIN();
