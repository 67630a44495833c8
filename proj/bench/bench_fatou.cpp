#include <benchmark/benchmark.h>

#include <numbers>

#include "folkit/fatou.hpp"

using namespace folkit;

namespace {

NumericGerm parabolic() { return germ_from_coeffs({1, 0, 1}); }

CensusOptions census_opts() {
  CensusOptions o;
  o.grid = 60;
  o.max_iter = 20000;
  return o;
}

std::vector<cd> samples() {
  std::vector<cd> out;
  for (int i = 0; i < 32; ++i) out.push_back(std::polar(0.1, std::numbers::pi + 0.6 * (i - 15.5) / 32));
  return out;
}

FatouOptions fatou_opts() {
  FatouOptions o;
  o.n_max = 20000;
  o.throw_on_slow = false;
  return o;
}

}  // namespace

static void BM_CensusSerial(benchmark::State& s) {
  NumericGerm h = parabolic();
  for (auto _ : s) benchmark::DoNotOptimize(orbit_census_serial(h, census_opts()).attracted);
}
static void BM_CensusParallel(benchmark::State& s) {
  NumericGerm h = parabolic();
  for (auto _ : s) benchmark::DoNotOptimize(orbit_census(h, census_opts()).attracted);
}
static void BM_ResidualSerial(benchmark::State& s) {
  NumericGerm f = germ_from_coeffs({1, 1, 1});
  for (auto _ : s) benchmark::DoNotOptimize(abel_residual_serial(f, samples(), fatou_opts()));
}
static void BM_ResidualParallel(benchmark::State& s) {
  NumericGerm f = germ_from_coeffs({1, 1, 1});
  for (auto _ : s) benchmark::DoNotOptimize(abel_residual(f, samples(), fatou_opts()));
}

BENCHMARK(BM_CensusSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CensusParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ResidualSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ResidualParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
