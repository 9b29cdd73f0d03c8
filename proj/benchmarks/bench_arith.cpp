#include <benchmark/benchmark.h>

#include "mslab/arith.hpp"

using namespace mslab;

static void SummatoryD2Sublinear(benchmark::State& state) {
    uint64_t x = uint64_t(state.range());
    for (auto _ : state) {
        int128 v = summatory_d2(x);
        benchmark::DoNotOptimize(v);
    }
    state.SetComplexityN(state.range());
}
BENCHMARK(SummatoryD2Sublinear)->RangeMultiplier(10)->Range(1000, 1000000000)->Complexity();

static void SummatoryD2Direct(benchmark::State& state) {
    uint64_t x = uint64_t(state.range());
    for (auto _ : state) {
        int128 v = summatory_direct(x, SumKind::d2);
        benchmark::DoNotOptimize(v);
    }
    state.SetComplexityN(state.range());
}
BENCHMARK(SummatoryD2Direct)->RangeMultiplier(10)->Range(1000, 10000000)->Complexity();

static void SummatoryD4Sublinear(benchmark::State& state) {
    uint64_t x = uint64_t(state.range());
    for (auto _ : state) {
        int128 v = summatory_d4(x);
        benchmark::DoNotOptimize(v);
    }
    state.SetComplexityN(state.range());
}
BENCHMARK(SummatoryD4Sublinear)->RangeMultiplier(10)->Range(1000, 1000000000)->Complexity();

static void SieveSegment(benchmark::State& state) {
    uint64_t n = uint64_t(state.range());
    for (auto _ : state) {
        SieveTable t = sieve_multiplicative(1000000000, 1000000000 + n - 1, SieveKind::d);
        benchmark::DoNotOptimize(t.values.data());
    }
    state.SetItemsProcessed(int64_t(state.iterations()) * state.range());
}
BENCHMARK(SieveSegment)->RangeMultiplier(4)->Range(1 << 14, 1 << 22);
