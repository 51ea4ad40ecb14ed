// Serial reference loops versus the OpenMP kernels on the three data-parallel
// sweeps: cohomology tables, safe regions and Tate checksums.

#include <benchmark/benchmark.h>

#include "../tests/fixtures.hpp"
#include "tatesplit/cech.hpp"
#include "tatesplit/tate.hpp"

using namespace tatesplit;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) ? "parallel" : "serial"); }

void BM_table_ideal_point(benchmark::State& state) {
    const auto c = fixtures::ideal_point();
    CechOptions o;
    o.exec = exec_of(state);
    for (auto _ : state) benchmark::DoNotOptimize(cohomology_table(c, Window::cube(2, -4, 4), o));
    label(state);
}

void BM_table_sum_p2p3(benchmark::State& state) {
    const auto c = LineBundleComplex::direct_sum(ProductSpace({2, 3}), {{1, 1}, {-1, 2}, {0, -3}});
    CechOptions o;
    o.exec = exec_of(state);
    for (auto _ : state) benchmark::DoNotOptimize(cohomology_table(c, Window::cube(2, -6, 6), o));
    label(state);
}

void BM_safe_region(benchmark::State& state) {
    ProductSpace s({2, 3});
    Polarization d(MultiDegree{4, 2});
    for (auto _ : state) benchmark::DoNotOptimize(safe_region(s, d, Window::cube(2, -60, 60), exec_of(state)));
    label(state);
}

void BM_tate_sweep(benchmark::State& state) {
    const auto t = bott_table(ProductSpace({1, 2}), {{1, 1}, {-2, 0}}, Window::cube(2, -25, 25));
    for (auto _ : state) benchmark::DoNotOptimize(tate_checksum_sweep(t, exec_of(state)));
    label(state);
}

}  // namespace

BENCHMARK(BM_table_ideal_point)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_table_sum_p2p3)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_safe_region)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_tate_sweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
