#include <benchmark/benchmark.h>

#include <ginijel/ginijel.hpp>

namespace {

ginijel::Dataset sample(ginijel::Scenario s, std::size_t n) {
  ginijel::SeededRng rng(2024, n);
  return ginijel::scenario_sampler(s, n, rng);
}

void BM_EstimateFast(benchmark::State& state) {
  const auto d = sample(ginijel::Scenario::type1_lognormal(0, 1, 6), std::size_t(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ginijel::estimate_delta(d).delta_hat);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EstimateFast)->RangeMultiplier(10)->Range(100, 1000000)->Complexity();

void BM_EstimateBrute(benchmark::State& state) {
  const auto d = sample(ginijel::Scenario::type1_lognormal(0, 1, 6), std::size_t(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ginijel::estimate_delta(d, ginijel::EstimatorPath::brute).delta_hat);
  }
}
BENCHMARK(BM_EstimateBrute)->Arg(50)->Arg(100)->Arg(200);

void BM_JelDowndate(benchmark::State& state) {
  const auto d = sample(ginijel::Scenario::mix_balanced(), std::size_t(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ginijel::jel_test(d).statistic);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_JelDowndate)->RangeMultiplier(4)->Range(64, 65536)->Complexity();

void BM_JelRerun(benchmark::State& state) {
  const auto d = sample(ginijel::Scenario::mix_balanced(), std::size_t(state.range(0)));
  const ginijel::JackknifeOptions opts{ginijel::JackknifeMethod::rerun,
                                       ginijel::JackknifeWeights::full_sample};
  for (auto _ : state) benchmark::DoNotOptimize(ginijel::jel_test(d, 0.05, {}, opts).statistic);
}
BENCHMARK(BM_JelRerun)->Arg(100)->Arg(500)->Arg(2000);

void BM_Study(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(ginijel::run_study(ginijel::Scenario::type1_lognormal(0, 1, 6), 100,
                                                200, 0.05, ginijel::TestMethod::jel, 1, 1));
  }
}
BENCHMARK(BM_Study)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
