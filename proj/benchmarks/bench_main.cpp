#include "mhaar/cz.hpp"
#include "mhaar/expansion.hpp"
#include "mhaar/maximal.hpp"
#include "mhaar/realline.hpp"
#include "mhaar/stats.hpp"
#include "mhaar/unconditional.hpp"

#include <benchmark/benchmark.h>

using namespace mhaar;

namespace {

StepFunction sample(int m, long depth, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    RandomStepOptions opt;
    opt.m = m;
    opt.max_depth = depth;
    StepFunction f;
    while (f.pieces() < 2) f = random_step_function(rng, opt);
    return f;
}

void BM_AnalyzeExact(benchmark::State& state)
{
    int m = static_cast<int>(state.range(0));
    long depth = state.range(1);
    auto sys = HaarSystem::canonical(m);
    auto f = sample(m, depth, 1);
    long cutoff = mu(depth, m);
    for (auto _ : state) benchmark::DoNotOptimize(analyze<Rational>(f, sys, cutoff));
}
BENCHMARK(BM_AnalyzeExact)->Args({2, 6})->Args({2, 10});

void BM_AnalyzeFloat(benchmark::State& state)
{
    int m = static_cast<int>(state.range(0));
    long depth = state.range(1);
    auto sys = HaarSystem::canonical(m);
    auto f = sample(m, depth, 2);
    long cutoff = mu(depth, m);
    for (auto _ : state) benchmark::DoNotOptimize(analyze<double>(f, sys, cutoff));
}
BENCHMARK(BM_AnalyzeFloat)->Args({2, 10})->Args({3, 6})->Args({5, 4});

void BM_PartialSumKernel(benchmark::State& state)
{
    auto f = sample(3, 5, 3);
    for (auto _ : state) benchmark::DoNotOptimize(partial_sum_kernel(f, 3, 4, 40));
}
BENCHMARK(BM_PartialSumKernel);

void BM_Maximal(benchmark::State& state)
{
    auto f = sample(2, state.range(0), 4);
    for (auto _ : state) benchmark::DoNotOptimize(maximal_function(f, 2));
}
BENCHMARK(BM_Maximal)->Arg(4)->Arg(8);

void BM_CZ(benchmark::State& state)
{
    auto f = sample(2, state.range(0), 5);
    Rational lambda = f.abs().integrate() + 1;
    for (auto _ : state) benchmark::DoNotOptimize(cz_decompose(f, lambda, 2));
}
BENCHMARK(BM_CZ)->Arg(4)->Arg(8);

void BM_SignFlipRatios(benchmark::State& state)
{
    auto sys = HaarSystem::canonical(2);
    for (auto _ : state)
        benchmark::DoNotOptimize(signflip_ratios(Weight::unit(), 2, sys, std::nullopt, 20, state.range(0), 7, true));
}
BENCHMARK(BM_SignFlipRatios)->Arg(4)->Arg(6);

void BM_ScaleSum(benchmark::State& state)
{
    auto sys = HaarSystem::canonical(3);
    auto xs = make_grid(0.01, 10, 100);
    for (auto _ : state) benchmark::DoNotOptimize(scale_sum_inequality(sys, xs, 30));
}
BENCHMARK(BM_ScaleSum);

} // namespace
BENCHMARK_MAIN();
