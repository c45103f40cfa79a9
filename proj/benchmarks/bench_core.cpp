#include <benchmark/benchmark.h>

#include <obist/correlations.hpp>
#include <obist/covariance.hpp>
#include <obist/lindyn.hpp>
#include <obist/scattering.hpp>
#include <obist/spectra.hpp>
#include <obist/steady_state.hpp>

using namespace obist;

static void BM_SolveStateEquation(benchmark::State& state) {
    double Y = 5.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_state_equation(5.0, Y));
        Y = Y > 7.0 ? 5.0 : Y + 1e-3;
    }
}
BENCHMARK(BM_SolveStateEquation);

static void BM_Lyapunov(benchmark::State& state) {
    const auto p = make_params(5.0, 1.0, 1);
    const double X = static_cast<double>(state.range(0)) / 100.0;
    const auto J = build_jacobian(p, X);
    const auto D = build_diffusion(X);
    for (auto _ : state) benchmark::DoNotOptimize(solve_lyapunov(J, D));
}
BENCHMARK(BM_Lyapunov)->Arg(1)->Arg(300)->Arg(10000);

static void BM_SpectrumNumeric(benchmark::State& state) {
    const auto p = make_params(5.0, 1.0, 1);
    const auto grid = symmetric_grid(30.0, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(spectrum_numeric(p, 0.01, SpectrumKind::atomic, grid));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SpectrumNumeric)->Arg(601)->Arg(6001);

static void BM_SpectrumClosedForm(benchmark::State& state) {
    const auto p = make_params(200.0, 1.0, 1);
    const auto grid = symmetric_grid(40.0, 4001);
    for (auto _ : state) benchmark::DoNotOptimize(spectrum_closed_form(SpectrumMethod::weak_closed, p, 0.01, grid));
    state.SetItemsProcessed(state.iterations() * 4001);
}
BENCHMARK(BM_SpectrumClosedForm);

static void BM_CertifyNormalization(benchmark::State& state) {
    const auto model = SpectrumModel::numeric(make_params(5.0, 1.0, 1), 0.01, SpectrumKind::atomic);
    for (auto _ : state) benchmark::DoNotOptimize(model.certify_normalization(1e-3));
}
BENCHMARK(BM_CertifyNormalization)->Unit(benchmark::kMillisecond);

static void BM_G2Numeric(benchmark::State& state) {
    const auto p = make_params(40.0, 0.176, 310);
    const auto grid = numerics::linspace(0.0, 10.0, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(g2_numeric(p, 0.01, grid));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_G2Numeric)->Arg(101)->Arg(1001);

static void BM_PhaseSumMonteCarlo(benchmark::State& state) {
    ScatterGeometry g;
    g.positions = sample_cube_positions(static_cast<std::size_t>(state.range(0)), 50.0, 7);
    g.rng_seed = 7;
    for (auto _ : state) benchmark::DoNotOptimize(phase_sum_monte_carlo(g, 1000));
}
BENCHMARK(BM_PhaseSumMonteCarlo)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
