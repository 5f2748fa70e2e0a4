#include <benchmark/benchmark.h>

#include "cp1lab/holonomy.hpp"
#include "cp1lab/scan.hpp"
#include "cp1lab/schwarzian.hpp"

using namespace cp1lab;

static void BM_Compose(benchmark::State& state) {
    const MobiusMap a(cplx(1.0, 0.2), 0.5, cplx(0.1, -0.3), 1.1), b(0.9, cplx(0.0, 1.0), 0.2, 1.3);
    MobiusMap x = a;
    for (auto _ : state) {
        x = x * b;
        x = x * a.inverse();
        benchmark::DoNotOptimize(x);
    }
}
BENCHMARK(BM_Compose);

static void BM_EnumerateElements(benchmark::State& state) {
    const MarkedGroup g = bolza_group();
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_elements(g, static_cast<int>(state.range(0))).size());
}
BENCHMARK(BM_EnumerateElements)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_TransportUnitPath(benchmark::State& state) {
    const PhiField phi = [](cplx z) { return 3.0 * std::sin(z); };
    const PathInH p = PathInH::geodesic(cplx(0.0, 1.0), cplx(0.0, std::exp(1.0)));
    for (auto _ : state) benchmark::DoNotOptimize(transport(phi, p).T);
}
BENCHMARK(BM_TransportUnitPath)->Unit(benchmark::kMicrosecond);

static void BM_HolonomyDirect(benchmark::State& state) {
    const MarkedGroup g = bolza_group();
    const DiffBasis& b = default_basis();
    const std::array<cplx, 3> c{cplx(0.2, 0.1), cplx(0.0), cplx(0.0)};
    for (auto _ : state) benchmark::DoNotOptimize(holonomy_rep(g, b, c).relator_defect());
}
BENCHMARK(BM_HolonomyDirect)->Unit(benchmark::kMillisecond);

static void BM_HolonomyPlanReplay(benchmark::State& state) {
    const MarkedGroup g = bolza_group();
    const DiffBasis& b = default_basis();
    const std::array<cplx, 3> design{cplx(1.0), cplx(0.0), cplx(0.0)};
    const MonodromyPlan plan(g, b, design);
    const std::array<cplx, 3> c{cplx(0.2, 0.1), cplx(0.0), cplx(0.0)};
    for (auto _ : state) benchmark::DoNotOptimize(plan.at(c).relator_defect());
}
BENCHMARK(BM_HolonomyPlanReplay)->Unit(benchmark::kMillisecond);

static void BM_JorgensenFuchsian(benchmark::State& state) {
    const Representation r = Representation::fuchsian(bolza_group());
    const int L = static_cast<int>(state.range(0));
    const auto table = bolza_elements(L);
    for (auto _ : state) benchmark::DoNotOptimize(jorgensen_violation(r, *table, L).has_value());
}
BENCHMARK(BM_JorgensenFuchsian)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_Scan4x4(benchmark::State& state) {
    ScanConfig cfg;
    cfg.nx = cfg.ny = 4;
    cfg.jorgensen_len = 4;
    cfg.workers = static_cast<int>(state.range(0));
    (void)default_basis();
    for (auto _ : state) benchmark::DoNotOptimize(run_scan(cfg).violations());
}
BENCHMARK(BM_Scan4x4)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
