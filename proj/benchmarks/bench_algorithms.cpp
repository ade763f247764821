#include <aoisched/bench.hpp>
#include <aoisched/interval_optimizer.hpp>
#include <aoisched/schedulers.hpp>
#include <aoisched/tga.hpp>
#include <aoisched/verify.hpp>

#include <benchmark/benchmark.h>

using namespace aoisched;

namespace {

AoiConstraints instance(benchmark::State& state, std::int64_t d_max) {
    return generate_instance(state.range(0), 2, d_max, 42);
}

void BM_SolveChain(benchmark::State& state) {
    auto d = instance(state, state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(solve_chain(d));
}
BENCHMARK(BM_SolveChain)->ArgsProduct({{10, 100, 300}, {10, 20}});

void BM_Tga(benchmark::State& state) {
    auto d = instance(state, state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(tga(d));
}
BENCHMARK(BM_Tga)->ArgsProduct({{10, 100, 300}, {10, 20}})->Unit(benchmark::kMillisecond);

void BM_Gd(benchmark::State& state) {
    auto d = instance(state, 20);
    for (auto _ : state) benchmark::DoNotOptimize(gd(d));
}
BENCHMARK(BM_Gd)->Arg(10)->Arg(100)->Arg(300);

void BM_Cs(benchmark::State& state) {
    auto d = instance(state, 20);
    auto sol = solve_chain(d);
    for (auto _ : state) benchmark::DoNotOptimize(cs(sol.intervals));
}
BENCHMARK(BM_Cs)->Arg(10)->Arg(100)->Arg(300);

void BM_Verify(benchmark::State& state) {
    auto d = instance(state, 20);
    auto s = tga(d).schedule;
    for (auto _ : state) benchmark::DoNotOptimize(verify(s, d));
}
BENCHMARK(BM_Verify)->Arg(10)->Arg(100)->Arg(300);

} // namespace

BENCHMARK_MAIN();
