#include <greenwalk/analysis.hpp>
#include <greenwalk/duality.hpp>
#include <greenwalk/families.hpp>
#include <greenwalk/montecarlo.hpp>
#include <greenwalk/spectral.hpp>

#include <benchmark/benchmark.h>

#include <array>

using namespace greenwalk;

namespace {

void BM_HittingTimesHypercube(benchmark::State& state) {
  const WeightedDigraph g = hypercube_graph(static_cast<int>(state.range(0)));
  const TransitionMatrix p = transition_matrix(g);
  const Distribution pi = stationary_distribution(g);
  for (auto _ : state) benchmark::DoNotOptimize(hitting_times(p, pi));
  state.SetComplexityN(g.size());
}
BENCHMARK(BM_HittingTimesHypercube)->DenseRange(4, 9)->Unit(benchmark::kMillisecond)->Complexity();

void BM_AnalyzeToric(benchmark::State& state) {
  const std::array<Index, 2> dims{state.range(0), state.range(0)};
  const WeightedDigraph g = toric_graph(dims);
  for (auto _ : state) benchmark::DoNotOptimize(analyze(g));
  state.SetComplexityN(g.size());
}
BENCHMARK(BM_AnalyzeToric)->RangeMultiplier(2)->Range(4, 24)->Unit(benchmark::kMillisecond)->Complexity();

void BM_SpectralToric(benchmark::State& state) {
  const std::array<Index, 2> dims{state.range(0), state.range(0)};
  const WeightedDigraph g = toric_graph(dims);
  for (auto _ : state) {
    const SpectralDecomposition dec = spectral_decomposition(g);
    benchmark::DoNotOptimize(spectral_greens(dec));
  }
  state.SetComplexityN(g.size());
}
BENCHMARK(BM_SpectralToric)->RangeMultiplier(2)->Range(4, 24)->Unit(benchmark::kMillisecond)->Complexity();

void BM_ToricOracle(benchmark::State& state) {
  const std::array<Index, 2> dims{state.range(0), state.range(0)};
  for (auto _ : state) benchmark::DoNotOptimize(toric_oracle(dims));
}
BENCHMARK(BM_ToricOracle)->RangeMultiplier(2)->Range(4, 16)->Unit(benchmark::kMillisecond);

void BM_DualityChecks(benchmark::State& state) {
  const WeightedDigraph g = cycle_graph(state.range(0));
  const TransitionMatrix p = transition_matrix(g, 0.5);
  const Distribution pi = stationary_distribution(g);
  for (auto _ : state) benchmark::DoNotOptimize(duality_checks(p, pi));
}
BENCHMARK(BM_DualityChecks)->RangeMultiplier(2)->Range(8, 128)->Unit(benchmark::kMillisecond);

void BM_EmpiricalHitting(benchmark::State& state) {
  const TransitionMatrix p = transition_matrix(cycle_graph(5));
  for (auto _ : state) benchmark::DoNotOptimize(empirical_hitting(p, 0, 2, static_cast<std::uint64_t>(state.range(0)), 42, {1}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EmpiricalHitting)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
