#include <benchmark/benchmark.h>

#include <djet/delta.hpp>
#include <djet/laplacian.hpp>
#include <djet/witt.hpp>

using namespace djet;

namespace {

void bm_delta_apply(benchmark::State& state) {
    DeltaRing R(PrimeSet({2, 3, 5}));
    JetPoly x = JetPoly::variable(JetVar("x", MultiIndex({0, 0, 0})));
    JetPoly y = JetPoly::variable(JetVar("y", MultiIndex({0, 0, 0})));
    JetPoly f = x * x * y + x.scaled(3) - y * y;
    int k = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(R.delta(k, f));
}

void bm_witt_mul(benchmark::State& state) {
    long p = state.range(0);
    long m = p * p * p;
    WittVectorMod a(p, m, {2, p + 1, 3});
    WittVectorMod b(p, m, {p - 1, 4, 1});
    for (auto _ : state) benchmark::DoNotOptimize(a.mul(b));
}

void bm_witt_law(benchmark::State& state) {
    // first iteration builds the cached law, later ones measure lookup
    for (auto _ : state)
        benchmark::DoNotOptimize(&witt_law(state.range(0), 2));
}

void bm_commutator_poly(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(commutator_polynomial(2, state.range(0)));
}

void bm_gm_laplacian(benchmark::State& state) {
    PrimeSet P({3});
    int N = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(gm_laplacian(P, N, 2 * N).all_verified());
}

} // namespace

BENCHMARK(bm_delta_apply)->Arg(0)->Arg(2);
BENCHMARK(bm_witt_mul)->Arg(2)->Arg(5);
BENCHMARK(bm_witt_law)->Arg(3);
BENCHMARK(bm_commutator_poly)->Arg(3)->Arg(5);
BENCHMARK(bm_gm_laplacian)->Arg(4)->Arg(6);

BENCHMARK_MAIN();
