#include <benchmark/benchmark.h>

#include <vector>

#include "amice/archimedean.hpp"
#include "amice/class_group.hpp"
#include "amice/measure.hpp"
#include "amice/modform.hpp"
#include "amice/quaternion.hpp"

using namespace amice;

namespace {

Measure sample_measure(std::int64_t p, std::size_t order) {
    std::vector<Integer> mahler;
    for (std::size_t n = 0; n < order; ++n) mahler.emplace_back(static_cast<long long>(n * n + 3 * n + 1));
    return Measure::from_integers(p, mahler, 40);
}

void BM_MomentSequence(benchmark::State& state) {
    const auto order = static_cast<std::size_t>(state.range(0));
    Measure mu = sample_measure(5, order);
    for (auto _ : state) benchmark::DoNotOptimize(moment_sequence(mu, static_cast<int>(order) - 1));
}
BENCHMARK(BM_MomentSequence)->Arg(10)->Arg(20)->Arg(40);

void BM_RestrictToUnits(benchmark::State& state) {
    Measure mu = sample_measure(3, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(restrict_to_units(mu));
}
BENCHMARK(BM_RestrictToUnits)->Arg(10)->Arg(20)->Arg(40);

void BM_MultPushforward(benchmark::State& state) {
    Measure a = sample_measure(7, 8), b = sample_measure(7, 8);
    for (auto _ : state) benchmark::DoNotOptimize(mult_pushforward(a, b, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_MultPushforward)->Arg(10)->Arg(25);

void BM_ClassGroup(benchmark::State& state) {
    const std::int64_t d = -state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(class_group(d));
}
BENCHMARK(BM_ClassGroup)->Arg(23)->Arg(1151)->Arg(10007 * 4 + 3);

void BM_DeltaTp(benchmark::State& state) {
    QExpansion delta = delta_form(static_cast<std::size_t>(state.range(0)) * 11 + 1);
    for (auto _ : state) benchmark::DoNotOptimize(t_op(delta, 11));
}
BENCHMARK(BM_DeltaTp)->Arg(50)->Arg(200);

void BM_LocalFactorQuadrature(benchmark::State& state) {
    const auto radial = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(local_integral_quadrature({2, 2, 2}, {radial, 4 * radial}));
}
BENCHMARK(BM_LocalFactorQuadrature)->Arg(32)->Arg(64)->Arg(128);

void BM_HashimotoSearch(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(hashimoto_search(state.range(0), 101, 100000));
}
BENCHMARK(BM_HashimotoSearch)->Arg(6)->Arg(35)->Arg(210);

}  // namespace

BENCHMARK_MAIN();
