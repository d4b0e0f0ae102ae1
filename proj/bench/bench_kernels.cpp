// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "siasp/anneal.hpp"
#include "siasp/qubo.hpp"

using namespace siasp;

namespace {

QuboModel instance_model(std::size_t requests, Encoding enc) {
  GeneratorParams p;
  p.n_requests = requests;
  return encode(generate_instance(p, 2024), enc);
}

QuboModel dense_model(std::size_t n) {
  QuboModel m;
  m.n = n;
  for (std::size_t i = 0; i < n; ++i) {
    m.add_linear(i, static_cast<Coeff>(i % 7) - 3);
    for (std::size_t j = i + 1; j < n; ++j)
      if ((i * 31 + j * 17) % 3 == 0) m.add_quadratic(i, j, static_cast<Coeff>((i + j) % 5) - 2);
  }
  return m;
}

AnnealParams anneal_params() {
  AnnealParams p;
  p.reads = 64;
  p.sweeps = 500;
  p.seed = 1;
  return p;
}

void BM_AnnealParallel(benchmark::State& state) {
  const auto model = instance_model(static_cast<std::size_t>(state.range(0)), Encoding::ThreeCam);
  for (auto _ : state) benchmark::DoNotOptimize(simulated_anneal(model, anneal_params()));
  state.counters["vars"] = static_cast<double>(model.n);
}

void BM_AnnealSerial(benchmark::State& state) {
  const auto model = instance_model(static_cast<std::size_t>(state.range(0)), Encoding::ThreeCam);
  for (auto _ : state) benchmark::DoNotOptimize(simulated_anneal_serial(model, anneal_params()));
  state.counters["vars"] = static_cast<double>(model.n);
}

void BM_BruteForceGray(benchmark::State& state) {
  const auto model = dense_model(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_min(model));
}

void BM_BruteForceReference(benchmark::State& state) {
  const auto model = dense_model(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_min_reference(model));
}

}  // namespace

BENCHMARK(BM_AnnealParallel)->Arg(15)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AnnealSerial)->Arg(15)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForceGray)->Arg(12)->Arg(18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForceReference)->Arg(12)->Arg(18)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
