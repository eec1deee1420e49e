// Serial vs OpenMP kernels for the exhaustive decode check and the sweep.
#include "hiercache/verify.hpp"

#include <benchmark/benchmark.h>

namespace {

using hiercache::HierConfig;
using hiercache::make_rational;
using hiercache::Rational;

HierConfig bench_config() { return hiercache::validate_config({3, 2, 3, 2, make_rational(1, 2)}); }

void BM_VerifySerial(benchmark::State& state) {
  const HierConfig cfg = bench_config();
  for (auto _ : state) {
    benchmark::DoNotOptimize(hiercache::verify_config_serial(cfg, 7));
  }
}
BENCHMARK(BM_VerifySerial)->Unit(benchmark::kMillisecond);

void BM_VerifyParallel(benchmark::State& state) {
  const HierConfig cfg = bench_config();
  for (auto _ : state) {
    benchmark::DoNotOptimize(hiercache::verify_config_parallel(cfg, 7));
  }
}
BENCHMARK(BM_VerifyParallel)->Unit(benchmark::kMillisecond);

std::vector<Rational> fine_alphas() {
  std::vector<Rational> a;
  for (int i = 0; i <= 200; ++i) a.push_back(make_rational(i, 200));
  return a;
}

void BM_Sweep(benchmark::State& state) {
  const bool parallel = state.range(0) != 0;
  const auto alphas = fine_alphas();
  const std::vector<int> ts{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  for (auto _ : state) {
    benchmark::DoNotOptimize(hiercache::sweep_proposed(3, 4, 12, ts, alphas, parallel));
  }
}
BENCHMARK(BM_Sweep)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
