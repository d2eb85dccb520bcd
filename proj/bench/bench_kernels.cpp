// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <random>

#include "apnkit/gf2_linalg.hpp"
#include "apnkit/gf2m.hpp"
#include "apnkit/invariants.hpp"
#include "apnkit/kernels.hpp"

using namespace apn;

namespace {

VectorialFunction cube(int m) { return power_function(3, m); }

void BM_spectra_kernel(benchmark::State& st) {
    const auto f = cube(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::component_spectra(f));
}
void BM_spectra_reference(benchmark::State& st) {
    const auto f = cube(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(reference::component_spectra(f));
}

void BM_ddt_kernel(benchmark::State& st) {
    const auto f = cube(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::ddt(f));
}
void BM_ddt_reference(benchmark::State& st) {
    const auto f = cube(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(reference::ddt(f));
}

void BM_uniformity_kernel(benchmark::State& st) {
    const auto f = cube(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::differential_uniformity(f));
}
void BM_uniformity_reference(benchmark::State& st) {
    const auto f = cube(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(reference::differential_uniformity(f));
}

void BM_trivial6_kernel(benchmark::State& st) {
    const auto f = cube(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(kernels::trivial_solutions(f, 6));
}
void BM_trivial6_reference(benchmark::State& st) {
    const auto f = cube(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(reference::trivial_solutions(f, 6));
}

// Graph incidence matrix of x^3 at m = 6, the size used by the Gamma-rank.
Gf2Matrix graph_incidence() {
    const auto f = cube(6);
    Gf2Matrix a(4096, 4096);
    for (std::uint32_t u = 0; u < 4096; ++u)
        for (std::uint32_t x = 0; x < 64; ++x) a.set(u, u ^ ((f(x) << 6) | x));
    return a;
}

void BM_rank_m4ri(benchmark::State& st) {
    const auto a = graph_incidence();
    for (auto _ : st) benchmark::DoNotOptimize(a.rank());
}
void BM_rank_reference(benchmark::State& st) {
    const auto a = graph_incidence();
    for (auto _ : st) benchmark::DoNotOptimize(reference::gf2_rank(a));
}

void BM_gamma_rank(benchmark::State& st) {
    const auto f = cube(6);
    for (auto _ : st) benchmark::DoNotOptimize(gamma_rank(f));
}

}  // namespace

BENCHMARK(BM_spectra_kernel)->DenseRange(6, 10, 2);
BENCHMARK(BM_spectra_reference)->DenseRange(6, 10, 2);
BENCHMARK(BM_ddt_kernel)->DenseRange(6, 10, 2);
BENCHMARK(BM_ddt_reference)->DenseRange(6, 10, 2);
BENCHMARK(BM_uniformity_kernel)->DenseRange(6, 10, 2);
BENCHMARK(BM_uniformity_reference)->DenseRange(6, 10, 2);
BENCHMARK(BM_trivial6_kernel)->Arg(4)->Arg(5);
BENCHMARK(BM_trivial6_reference)->Arg(4)->Arg(5);
BENCHMARK(BM_rank_m4ri)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rank_reference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_gamma_rank)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
