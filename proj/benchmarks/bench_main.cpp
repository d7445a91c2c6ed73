#include <benchmark/benchmark.h>

#include "intermit/conjugate.hpp"
#include "intermit/estimator.hpp"
#include "intermit/fgn.hpp"
#include "intermit/rng.hpp"
#include "intermit/scenarios.hpp"
#include "intermit/simulate.hpp"
#include "intermit/supou.hpp"

using namespace intermit;

static void BM_PhiloxNormal(benchmark::State& state)
{
    RngStream rng(1, 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(rng.normal());
}
BENCHMARK(BM_PhiloxNormal);

static void BM_FbmPath(benchmark::State& state)
{
    FbmGenerator const g(FbmSpec{0.7, static_cast<std::size_t>(state.range(0)), 1.0});
    std::vector<double> out(static_cast<std::size_t>(state.range(0)));
    std::uint64_t rep = 0;
    for (auto _ : state) {
        RngStream rng(2, rep++);
        g.path(rng, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FbmPath)->RangeMultiplier(10)->Range(1000, 1000000);

static void BM_SupouPath(benchmark::State& state)
{
    model::SupOU m;
    m.quadruple.b_gauss = 1.0;
    if (state.range(1))
        m.quadruple.levy = driver::CompoundPoissonExp{1.0, 1.0, 0.5};
    m.m_components = 1000;
    std::uint64_t rep = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(simulate_supou(m, static_cast<std::size_t>(state.range(0)), 3, rep++));
}
BENCHMARK(BM_SupouPath)->Args({1000, 0})->Args({1000, 1})->Args({10000, 0})->Args({10000, 1});

static void BM_BiscaleEnsemble(benchmark::State& state)
{
    auto const grid = make_decade_grid(1, 5, 4);
    for (auto _ : state) {
        auto e = simulate_ensemble(model::BiscaleDet{0.6, 1.0, 0.5}, grid, 4, static_cast<std::size_t>(state.range(0)), 1);
        benchmark::DoNotOptimize(e.raw().data());
    }
}
BENCHMARK(BM_BiscaleEnsemble)->Arg(10000)->Arg(100000);

static void BM_EstimateScaling(benchmark::State& state)
{
    auto const grid = make_decade_grid(1, 5, 4);
    auto const e = simulate_ensemble(model::BiscaleDet{0.6, 1.0, 0.5}, grid, 5, 100000, 1);
    std::vector<std::size_t> idx(grid.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        idx[i] = i;
    auto const q = default_q_grid();
    for (auto _ : state)
        benchmark::DoNotOptimize(estimate_scaling_function(e, q, idx));
}
BENCHMARK(BM_EstimateScaling)->Unit(benchmark::kMillisecond);

static void BM_Conjugate(benchmark::State& state)
{
    auto const tau = scaling_function(scenario::Biscale{0.6, 1.0, 0.5});
    for (auto _ : state)
        benchmark::DoNotOptimize(conjugate(tau.function()));
}
BENCHMARK(BM_Conjugate);

BENCHMARK_MAIN();
