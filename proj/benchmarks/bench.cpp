#include <benchmark/benchmark.h>

#include "dyext/approx.hpp"
#include "dyext/metrics.hpp"
#include "dyext/mixing.hpp"
#include "dyext/permutation.hpp"

using namespace dyext;

static void BM_Wate(benchmark::State& state) {
    const unsigned m = static_cast<unsigned>(state.range(0));
    const auto p = random_column_preserving(GridGeometry::square(m), 7);
    for (auto _ : state) benchmark::DoNotOptimize(wate_at_rank(p, m + 1));
}
BENCHMARK(BM_Wate)->DenseRange(1, 4);

static void BM_Approx(benchmark::State& state) {
    const auto t = random_column_preserving(GridGeometry::square(static_cast<unsigned>(state.range(0))), 11);
    for (auto _ : state) benchmark::DoNotOptimize(approximate_by_column_permutation(t, 1, Rational(1, 4)));
}
BENCHMARK(BM_Approx)->DenseRange(1, 3);

static void BM_Cesaro(benchmark::State& state) {
    const unsigned rank = static_cast<unsigned>(state.range(0));
    const auto t = random_column_preserving(GridGeometry::square(rank), 3);
    const auto f = half_square_indicator(rank);
    for (auto _ : state) benchmark::DoNotOptimize(cesaro_sequence(t, f, f, 64));
}
BENCHMARK(BM_Cesaro)->DenseRange(1, 4);

static void BM_MetricDBruteForce(benchmark::State& state) {
    const auto g = GridGeometry::discrete_uniform(static_cast<unsigned>(state.range(0)), 4);
    const auto s = random_permutation(g, 1), t = random_permutation(g, 2);
    for (auto _ : state) benchmark::DoNotOptimize(metric_d_bruteforce(s, t));
}
BENCHMARK(BM_MetricDBruteForce)->DenseRange(0, 2);

BENCHMARK_MAIN();
