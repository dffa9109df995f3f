#include <gaia/analysis.hpp>
#include <gaia/exact_oracle.hpp>
#include <gaia/gaia_grid.hpp>
#include <gaia/gaia_lzsm.hpp>
#include <gaia/legacy_wkb.hpp>

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

using namespace gaia;

namespace {

GridModel random_grid(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> a(n);
    for (int k = 0; k < n; ++k) a[k] = k * 0.7 + 0.3 * u(rng);
    Matrix b(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) b(i, j) = std::polar(u(rng), 2.0 * kPi * u(rng));
    }
    return build_grid(n, 1.0, 100.0, a, b);
}

void BM_SmatrixGrid(benchmark::State& state) {
    const GridModel m = random_grid(static_cast<int>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(smatrix_grid(m));
}
BENCHMARK(BM_SmatrixGrid)->RangeMultiplier(2)->Range(1, 32);

void BM_SmatrixLegacy(benchmark::State& state) {
    const GridModel m = random_grid(static_cast<int>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(smatrix_legacy(m));
}
BENCHMARK(BM_SmatrixLegacy)->RangeMultiplier(2)->Range(1, 16);

void BM_ClosedFormS4(benchmark::State& state) {
    const GridModel m = S4Family{}(20.0);
    for (auto _ : state) benchmark::DoNotOptimize(s4_closed_form(m));
}
BENCHMARK(BM_ClosedFormS4);

void BM_PropagateLzsm(benchmark::State& state) {
    const int crossings = static_cast<int>(state.range(0));
    const LzsmModel m = build_spin_boson(0.1, 0.1, 0.2, 1.0, 10.0, 5, crossings);
    const Vector psi = Vector::Unit(m.dim(), 0);
    for (auto _ : state) benchmark::DoNotOptimize(propagate_lzsm(m, psi, crossings));
}
BENCHMARK(BM_PropagateLzsm)->Arg(2)->Arg(20)->Arg(200);

void BM_ExactOracleTwoLevel(benchmark::State& state) {
    Matrix b(1, 1);
    b(0, 0) = 1.0;
    const GridModel m = build_grid(1, 1.0, 100.0, {0.0}, b);
    PropagatorConfig cfg;
    cfg.window = default_window(m);
    cfg.tolerance = std::pow(10.0, -static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(propagate_exact(m, cfg));
}
BENCHMARK(BM_ExactOracleTwoLevel)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
