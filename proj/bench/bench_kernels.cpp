#include <benchmark/benchmark.h>

#include "biquad/alternating.hpp"
#include "biquad/classes.hpp"
#include "biquad/monic.hpp"
#include "biquad/reference.hpp"

namespace {

using namespace biquad;

const SymmetricTensor& tensor() {
  static const SymmetricTensor t = generate(TensorClass::b0, 4, 4, 1);
  return t;
}

void BM_SampleMinReference(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(reference::sample_min(tensor(), state.range(0), 3));
}

void BM_SampleMinParallel(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_min(tensor(), state.range(0), 3, Exec::parallel));
}

void BM_AuditGridReference(benchmark::State& state) {
  const GridSpec spec{3, 3, Rational(1, 5), Rational(2)};
  for (auto _ : state) benchmark::DoNotOptimize(reference::audit_grid(spec));
}

void BM_AuditGridParallel(benchmark::State& state) {
  const GridSpec spec{3, 3, Rational(1, 5), Rational(2)};
  for (auto _ : state) benchmark::DoNotOptimize(audit_grid(spec, Exec::parallel));
}

}  // namespace

BENCHMARK(BM_SampleMinReference)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SampleMinParallel)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AuditGridReference)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AuditGridParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
