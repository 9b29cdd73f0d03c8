#include <benchmark/benchmark.h>

#include "mslab/estermann.hpp"
#include "mslab/zeta.hpp"

using namespace mslab;

static void ZetaHalfLine(benchmark::State& state) {
    double t = double(state.range());
    for (auto _ : state) {
        complex z = zeta_half_line(t);
        benchmark::DoNotOptimize(z);
    }
}
BENCHMARK(ZetaHalfLine)->RangeMultiplier(10)->Range(100, 1000000);

static void ZetaEulerMaclaurinOnOneLine(benchmark::State& state) {
    double t = double(state.range());
    for (auto _ : state) {
        complex z = zeta_em(complex(1.0, t));
        benchmark::DoNotOptimize(z);
    }
}
BENCHMARK(ZetaEulerMaclaurinOnOneLine)->RangeMultiplier(10)->Range(100, 100000);

static void EstermannHurwitz(benchmark::State& state) {
    uint64_t k = uint64_t(state.range());
    FareyArg arg(1, k);
    for (auto _ : state) {
        complex v = estermann_hurwitz(complex(0.5, 2.0), arg);
        benchmark::DoNotOptimize(v);
    }
    state.SetComplexityN(state.range());
}
BENCHMARK(EstermannHurwitz)->RangeMultiplier(2)->Range(4, 128)->Complexity();

BENCHMARK_MAIN();
