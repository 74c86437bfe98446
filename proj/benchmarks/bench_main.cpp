#include <benchmark/benchmark.h>

#include <vector>

#include "smt/binomial.hpp"
#include "smt/coin_scenario.hpp"
#include "smt/rng.hpp"
#include "smt/sequential_tester.hpp"
#include "smt/simulation.hpp"

static void BM_TesterStep(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  smt::StreamRng rng(7, 0);
  std::vector<double> pvalues(m);
  for (auto& p : pvalues) p = rng.uniform01();
  pvalues[m / 2] = 0.0;  // always rejects, so the tester never halts
  smt::SequentialTester tester(0.05, smt::Variant::Refined);
  for (auto _ : state) {
    benchmark::DoNotOptimize(tester.step(pvalues));
    if (tester.rejections().size() >= (1u << 16)) {
      state.PauseTiming();
      tester = smt::SequentialTester(0.05, smt::Variant::Refined);
      state.ResumeTiming();
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(m));
}
BENCHMARK(BM_TesterStep)->Arg(1)->Arg(10)->Arg(100)->Arg(1000);

static void BM_GenerateSubfamily(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  smt::StreamRng rng(7, 0);
  smt::Subfamily family;
  for (auto _ : state) {
    smt::generate_subfamily(rng, m, 0.5, 0.1, family);
    benchmark::DoNotOptimize(family.pvalues.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(m));
}
BENCHMARK(BM_GenerateSubfamily)->Arg(10)->Arg(1000);

static void BM_RunTreatment(benchmark::State& state) {
  smt::SimConfig config;
  config.subfamily_size = static_cast<std::size_t>(state.range(0));
  config.p_true = 0.5;
  config.n_reps = 10'000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(smt::run_treatment(config, 1));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(config.n_reps));
}
BENCHMARK(BM_RunTreatment)->Arg(1)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_ExactFwer(benchmark::State& state) {
  smt::coin::CoinScenario scenario;
  scenario.c_convention = smt::coin::CConvention::LowerTailOnly;
  for (auto _ : state) {
    benchmark::DoNotOptimize(smt::coin::exact_fwer(scenario));
  }
}
BENCHMARK(BM_ExactFwer)->Unit(benchmark::kMicrosecond);

static void BM_UpperTail(benchmark::State& state) {
  int k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(smt::binomial::upper_tail({17, 0.1}, k));
    k = (k + 1) % 18;
  }
}
BENCHMARK(BM_UpperTail);

BENCHMARK_MAIN();
