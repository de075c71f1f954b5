#include <benchmark/benchmark.h>

#include <cmath>

#include "halfspace/asymptotics.hpp"
#include "halfspace/constants.hpp"
#include "halfspace/fiber.hpp"
#include "halfspace/numerics.hpp"
#include "halfspace/region.hpp"
#include "halfspace/spectral.hpp"

using namespace halfspace;

static void BM_HalfspaceGaussian(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    QuadratureSpec spec;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            integrate_halfspace([](double r, double xn) { return std::exp(-r * r - xn * xn); }, N, spec).value);
    }
}
BENCHMARK(BM_HalfspaceGaussian)->DenseRange(3, 9, 3);

// Uncached: each iteration recomputes every coefficient by quadrature.
static void BM_ExpansionCoefficients(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    QuadratureSpec spec;
    for (auto _ : state) benchmark::DoNotOptimize(expansion_coefficients(N, spec).alpha_N);
}
BENCHMARK(BM_ExpansionCoefficients)->Arg(5)->Arg(9)->Unit(benchmark::kMillisecond);

static void BM_FiberCoefficients(benchmark::State& state) {
    const double eps = 1.0 / static_cast<double>(state.range(0));
    QuadratureSpec spec;
    for (auto _ : state) {
        const FiberCoefficients c = measure_coefficients(Family::U, 5, eps, 2.0, spec);
        benchmark::DoNotOptimize(maximize_fiber(c).value);
    }
}
BENCHMARK(BM_FiberCoefficients)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_Sweep(benchmark::State& state) {
    QuadratureSpec spec;
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep(Quantity::E, Family::U, 5, 2.0, kDefaultEpsGrid, spec, threads));
    }
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_RitzMu1(benchmark::State& state) {
    const int M = static_cast<int>(state.range(0));
    QuadratureSpec spec;
    for (auto _ : state) benchmark::DoNotOptimize(estimate_mu1(5, M, spec).value);
}
BENCHMARK(BM_RitzMu1)->Arg(4)->Arg(8);

static void BM_RegionGrid(benchmark::State& state) {
    ProblemParams p;
    p.N = 5;
    p.a = 1;
    p.q = 2.0;
    const GridAxis lam = GridAxis::parse("0:3.5:0.07");
    const GridAxis mu = GridAxis::parse("-1:1:0.05");
    Mu1Bracket b;
    b.upper = 1.5;
    for (auto _ : state) benchmark::DoNotOptimize(emit_grid(p, lam, mu, b, 1.3788580091702027, 1).size());
}
BENCHMARK(BM_RegionGrid);

BENCHMARK_MAIN();
