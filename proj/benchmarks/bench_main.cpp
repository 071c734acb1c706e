#include "fracspec/asymptotics.hpp"
#include "fracspec/integro_algebraic.hpp"
#include "fracspec/reference_solver.hpp"
#include "fracspec/spectral_kernels.hpp"

#include <benchmark/benchmark.h>

using namespace fracspec;

namespace {
const FractionalOrder a75(0.75, Variant::RLBridge);
}

static void BM_PhaseTable(benchmark::State& st)
{
    for (auto _ : st) {
        PhaseTable t(a75);
        benchmark::DoNotOptimize(t.size());
    }
}
BENCHMARK(BM_PhaseTable);

// fresh table each time so the memo does not hide the quadrature
static void BM_xc0(benchmark::State& st)
{
    double tau = 0.37;
    for (auto _ : st) {
        st.PauseTiming();
        PhaseTable t(a75);
        st.ResumeTiming();
        benchmark::DoNotOptimize(t.xc0_negative(tau));
        benchmark::DoNotOptimize(t.xc0(Complex(0, 1)));
    }
}
BENCHMARK(BM_xc0);

static void BM_KernelEval(benchmark::State& st)
{
    const KernelEvaluator k({a75, KernelKind::Bridge, KernelForm::Standard});
    double x = 0.1;
    for (auto _ : st) {
        benchmark::DoNotOptimize(k(x, 0.73));
        x = x < 0.9 ? x + 1e-3 : 0.1;
    }
}
BENCHMARK(BM_KernelEval);

static void BM_Nystrom(benchmark::State& st)
{
    const auto grid = build_grid(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st)
        benchmark::DoNotOptimize(discretize_and_solve({a75, KernelKind::Bridge, KernelForm::Standard}, grid).mu(1));
}
BENCHMARK(BM_Nystrom)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_SolvePQR(benchmark::State& st)
{
    PhaseTable t(a75);
    const auto g = make_integro_grid(t, 30.0);
    for (auto _ : st)
        benchmark::DoNotOptimize(solve_pqr(30.0, g).iterations);
}
BENCHMARK(BM_SolvePQR)->Unit(benchmark::kMicrosecond);

static void BM_RefineRho(benchmark::State& st)
{
    PhaseTable t(a75);
    t.precompute();
    for (auto _ : st)
        benchmark::DoNotOptimize(refine_rho(10, t).rho);
}
BENCHMARK(BM_RefineRho)->Unit(benchmark::kMillisecond);

static void BM_BoundaryLayer(benchmark::State& st)
{
    PhaseTable t(a75);
    const EigenfunctionApprox f(10, a75, &t, true);
    int i = 0;
    for (auto _ : st) {
        benchmark::DoNotOptimize(f(i / 1000.0));
        i = (i + 1) % 1001;
    }
}
BENCHMARK(BM_BoundaryLayer);

BENCHMARK_MAIN();
