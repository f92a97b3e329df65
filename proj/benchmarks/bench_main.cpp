#include <benchmark/benchmark.h>

#include "cmczone/delaunay.hpp"
#include "cmczone/elliptic.hpp"
#include "cmczone/perturb.hpp"
#include "cmczone/rigidity.hpp"

namespace {

void BM_EllipF(benchmark::State& state) {
    double k = cmczone::modulus_of(0.99), th = cmczone::amplitude_of(0.5, 0.99);
    for (auto _ : state) benchmark::DoNotOptimize(cmczone::ellip_F({k, th}));
}
BENCHMARK(BM_EllipF);

void BM_FQuadrature(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(cmczone::rigidity::f_quadrature(0.5, 0.99));
}
BENCHMARK(BM_FQuadrature);

void BM_ProfileC(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(cmczone::profile_c(1.02, 0.98, 0.5));
}
BENCHMARK(BM_ProfileC);

void BM_HOfT(benchmark::State& state) {
    auto z = cmczone::ZoneSpec::make(0.8);
    for (auto _ : state) benchmark::DoNotOptimize(cmczone::H_of_t(z, 0.995));
}
BENCHMARK(BM_HOfT)->Unit(benchmark::kMillisecond);

void BM_BuildGlobalHMinus(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(cmczone::build_global_h_minus(0.5));
}
BENCHMARK(BM_BuildGlobalHMinus)->Unit(benchmark::kMillisecond);

void BM_BuildLocalHPlus(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(cmczone::build_local_h_plus(0.4, 0.995));
}
BENCHMARK(BM_BuildLocalHPlus)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
