#include <benchmark/benchmark.h>

#include "frobext/crystal.hpp"
#include "frobext/exact_arith.hpp"
#include "frobext/galois_rep.hpp"
#include "frobext/motive.hpp"
#include "frobext/random_cases.hpp"
#include "frobext/zeta.hpp"

using namespace frobext;

static void BM_SmithNormalForm(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    CaseRng rng = case_rng(1, n);
    IntMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = static_cast<long>(rng() % 201) - 100;
    for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(a));
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

static void BM_LocalL(benchmark::State& state)
{
    std::uint64_t i = 0;
    for (auto _ : state) {
        state.PauseTiming();
        LocalCase c = random_local_l(7, i++);
        state.ResumeTiming();
        benchmark::DoNotOptimize(verify_lca_l(*c.ml, *c.nl));
    }
}
BENCHMARK(BM_LocalL);

static void BM_LocalP(benchmark::State& state)
{
    std::uint64_t i = 0;
    for (auto _ : state) {
        state.PauseTiming();
        LocalCase c = random_local_p(7, i++);
        state.ResumeTiming();
        benchmark::DoNotOptimize(verify_lca_p(*c.mp, *c.np));
    }
}
BENCHMARK(BM_LocalP);

static void BM_PointCount(benchmark::State& state)
{
    const long p = state.range(0);
    VarietyDescriptor e = VarietyDescriptor::elliptic_curve(p, {{1}, {1}});
    for (auto _ : state) benchmark::DoNotOptimize(point_count(e, 2, 1L << 20));
}
BENCHMARK(BM_PointCount)->Arg(5)->Arg(13)->Arg(29);

static void BM_GlobalFormula(benchmark::State& state)
{
    Motive h = Motive::elliptic(7, -4);
    for (auto _ : state) benchmark::DoNotOptimize(verify_gca(Motive::unit(7), h));
}
BENCHMARK(BM_GlobalFormula);

static void BM_VarietyFormula(benchmark::State& state)
{
    VarietyDescriptor v = VarietyDescriptor::product(VarietyDescriptor::projective_space(5, 1),
                                                     VarietyDescriptor::projective_space(5, 1));
    for (auto _ : state) benchmark::DoNotOptimize(verify_gcn(v, 1));
}
BENCHMARK(BM_VarietyFormula);

BENCHMARK_MAIN();
