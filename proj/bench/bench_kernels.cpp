// Serial reference kernels against their OpenMP versions.
//   ./bench_kernels --benchmark_filter=Conjugate

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "thermo/duality.hpp"
#include "thermo/kernels.hpp"
#include "thermo/random.hpp"

namespace {

struct ConjugateData {
  std::vector<double> x, f, slopes, out;
  explicit ConjugateData(std::size_t n) : x(n), f(n), slopes(n), out(n) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> unif(-10.0, 10.0);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = -10.0 + 20.0 * static_cast<double>(i) / static_cast<double>(n - 1);
      f[i] = 0.5 * x[i] * x[i] + 0.1 * unif(rng);
      slopes[i] = unif(rng);
    }
  }
};

void BM_ConjugateSerial(benchmark::State& state) {
  ConjugateData d(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    thermo::kernels::conjugate_serial(d.x, d.f, d.slopes, d.out);
    benchmark::DoNotOptimize(d.out.data());
  }
}

void BM_ConjugateOpenMP(benchmark::State& state) {
  ConjugateData d(static_cast<std::size_t>(state.range(0)));
  const int jobs = thermo::kernels::max_threads();
  for (auto _ : state) {
    thermo::kernels::conjugate_parallel(d.x, d.f, d.slopes, d.out, jobs);
    benchmark::DoNotOptimize(d.out.data());
  }
  state.counters["threads"] = jobs;
}

void BM_SampleCurve(benchmark::State& state) {
  thermo::Rng rng(2);
  const auto system = thermo::random_primitive_system(rng, 8);
  const auto base = thermo::random_potential(rng, system, 2);
  const auto direction = thermo::random_potential(rng, system, 1);
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto curve = thermo::sample_curve(base, direction, -5.0, 5.0, 2001, jobs);
    benchmark::DoNotOptimize(curve.values.data());
  }
  state.counters["threads"] = jobs;
}

}  // namespace

BENCHMARK(BM_ConjugateSerial)->Arg(1001)->Arg(4001)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConjugateOpenMP)->Arg(1001)->Arg(4001)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SampleCurve)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
