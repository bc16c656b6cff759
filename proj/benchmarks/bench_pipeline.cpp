#include <benchmark/benchmark.h>

#include "pgo/bigraph.hpp"
#include "pgo/lowweight.hpp"
#include "pgo/obstruction.hpp"
#include "pgo/roots.hpp"
#include "pgo/temperley_lieb.hpp"

namespace {

using namespace pgo;

const char* kPrincipal =
    "bwd1v1v1v1p1v1x0p0x1v1x0p1x0p0x1p0x1v1x0x0x0p0x1x0x0p0x0x0x1v1x0x0p1x0x0p0x1x0p0x1x1p0x0x1v0x0x1x0x0v1"
    "duals1v1v1x2v4x2x3x1v2x1x3x4x5v1";

void BM_RationalArithmetic(benchmark::State& state) {
    const RationalFunction a = parse_rational_function("(q^8 - q^6 - q^4 - q^2 + 1)/(q^4 + 1)^2");
    const RationalFunction b = parse_rational_function("(q^12 + q^8 + q^6 + q^4 + 1)/(q^4 + q^2 + 1)");
    for (auto _ : state) benchmark::DoNotOptimize(a * b + a / b);
}
BENCHMARK(BM_RationalArithmetic);

void BM_TLDiagrams(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_tl(n));
}
BENCHMARK(BM_TLDiagrams)->DenseRange(3, 7);

void BM_JonesWenzlBox(benchmark::State& state) {
    const DimensionTable dims = dimension_table(Omega::Minus);
    for (auto _ : state) benchmark::DoNotOptimize(jw_box(dims));
    state.SetLabel("f4 on the subalgebra blocks");
}
BENCHMARK(BM_JonesWenzlBox)->Unit(benchmark::kMillisecond);

void BM_CollapseAll(benchmark::State& state) {
    const DimensionTable dims = dimension_table(Omega::Minus);
    const auto loops = enumerate_loops(Shape{4, 4}, 5);
    for (auto _ : state)
        for (const Loop& l : loops) benchmark::DoNotOptimize(collapse(l, dims));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(loops.size()));
}
BENCHMARK(BM_CollapseAll)->Unit(benchmark::kMillisecond);

void BM_SolutionSpace(benchmark::State& state) {
    const Omega w = state.range(0) < 0 ? Omega::Minus : Omega::Plus;
    const DimensionTable dims = dimension_table(w);
    for (auto _ : state) benchmark::DoNotOptimize(assemble_solution_space(dims));
}
BENCHMARK(BM_SolutionSpace)->Arg(-1)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Elimination(benchmark::State& state) {
    const Omega w = state.range(0) < 0 ? Omega::Minus : Omega::Plus;
    for (auto _ : state) benchmark::DoNotOptimize(run_elimination(w));
}
BENCHMARK(BM_Elimination)->Arg(-1)->Arg(1)->Unit(benchmark::kMillisecond)->Iterations(3);

void BM_GraphNorm(benchmark::State& state) {
    const Bigraph g = parse_bigraph(kPrincipal);
    const int digits = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(graph_norm(g, digits));
}
BENCHMARK(BM_GraphNorm)->Arg(16)->Arg(30)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_RootIsolation(benchmark::State& state) {
    const ZPoly h = haagerup_polynomial();
    mpz_class ten;
    mpz_ui_pow_ui(ten.get_mpz_t(), 10, static_cast<unsigned long>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(real_roots_gt1(h, mpq_class(1, ten)));
}
BENCHMARK(BM_RootIsolation)->Arg(10)->Arg(50)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
