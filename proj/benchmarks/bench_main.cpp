#include <benchmark/benchmark.h>

#include <delone/counting.hpp>
#include <delone/generators.hpp>
#include <delone/spectral.hpp>
#include <delone/voronoi.hpp>

using namespace delone;

namespace {

void BM_AssembleChain(benchmark::State& state) {
    const double L = static_cast<double>(state.range(0));
    const auto w = generate(fibonacci_cut_project_spec(Region::interval(-L, L)));
    const auto a = FiniteRangeOperator::adjacency(1.7);
    const Region q = Region::interval(-L / 2, L / 2);
    for (auto _ : state) benchmark::DoNotOptimize(assemble(a, w, q));
}
BENCHMARK(BM_AssembleChain)->RangeMultiplier(4)->Range(256, 16384);

void BM_CountingFunction(benchmark::State& state) {
    const double L = static_cast<double>(state.range(0));
    const auto w = generate(integer_lattice_spec(1, Region::interval(-L, L)));
    const auto m = assemble(FiniteRangeOperator::adjacency(1.0), w, Region::interval(-L / 2, L / 2));
    for (auto _ : state) benchmark::DoNotOptimize(counting_function(m));
}
BENCHMARK(BM_CountingFunction)->RangeMultiplier(2)->Range(128, 2048);

void BM_CountBelowDimer(benchmark::State& state) {
    const double half = static_cast<double>(state.range(0)) / 2;
    const auto w = generate(dimer_lattice_spec(Region::box(2, {-half - 3, -half - 3}, {half + 3, half + 3}), {0.2, 0}));
    const auto m = assemble(FiniteRangeOperator::adjacency(1.25), w, Region::box(2, {-half, -half}, {half, half}));
    for (auto _ : state) benchmark::DoNotOptimize(count_below(m, -1.0));
}
BENCHMARK(BM_CountBelowDimer)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Decomposition2D(benchmark::State& state) {
    const double half = static_cast<double>(state.range(0)) / 2;
    const auto w = generate(integer_lattice_spec(2, Region::box(2, {-half - 4, -half - 4}, {half + 4, half + 4})));
    const auto cls = ball_class(w, {0, 0}, 1.5);
    const Region q = Region::box(2, {-half, -half}, {half, half});
    for (auto _ : state) benchmark::DoNotOptimize(p_decomposition(w, cls, q));
}
BENCHMARK(BM_Decomposition2D)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_DerivedSetFibonacci(benchmark::State& state) {
    const double L = static_cast<double>(state.range(0));
    const auto w = generate(fibonacci_substitution_spec(Region::interval(0, L), 30));
    const auto cls = ball_class(w, w.points()[w.size() / 2], 4.0);
    for (auto _ : state) benchmark::DoNotOptimize(derived_set(w, cls));
}
BENCHMARK(BM_DerivedSetFibonacci)->RangeMultiplier(4)->Range(1024, 65536);

}  // namespace
BENCHMARK_MAIN();
