#include <benchmark/benchmark.h>

#include <numeric>
#include <string>
#include <vector>

#include "mabcs/env_model.hpp"
#include "mabcs/fl_sim.hpp"
#include "mabcs/scheduling.hpp"
#include "mabcs/stochastics.hpp"

namespace {

using namespace mabcs;

void BM_SampleTruncNormal(benchmark::State& state) {
  RngStream rng(1, "bench", {});
  const TruncNormalParams p{50.0, 10.0, 40.0, 60.0};
  for (auto _ : state) benchmark::DoNotOptimize(sample_trunc_normal(rng, p));
}
BENCHMARK(BM_SampleTruncNormal);

void BM_GreedySelect(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RngStream rng(2, "bench", {});
  TimeTable times;
  std::vector<ClientId> candidates(static_cast<std::size_t>(n));
  std::iota(candidates.begin(), candidates.end(), 0);
  for (ClientId k : candidates) times[k] = {rng.uniform_real(0.0, 100.0), rng.uniform_real(0.0, 100.0)};
  const Scorer scorer = [&](std::span<const ClientId> s, double t, ClientId k) {
    return -t_inc(s, t, times, k);
  };
  for (auto _ : state) benchmark::DoNotOptimize(greedy_select(candidates, scorer, 5, times));
}
BENCHMARK(BM_GreedySelect)->Arg(10)->Arg(100);

void BM_RealizeRoundResources(benchmark::State& state) {
  RunConfig cfg;
  const auto population = make_population(cfg);
  int round = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(realize_round_resources(population, round++, cfg.env, cfg.master_seed));
}
BENCHMARK(BM_RealizeRoundResources);

void BM_RunExperiment(benchmark::State& state) {
  RunConfig cfg;
  cfg.strategy.kind = kAllStrategies[state.range(0)];
  cfg.env.eta = 1.99;
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(cfg));
  state.SetLabel(std::string(to_string(cfg.strategy.kind)));
}
BENCHMARK(BM_RunExperiment)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
