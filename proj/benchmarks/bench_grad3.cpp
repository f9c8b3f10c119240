#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "grad3/analysis.hpp"
#include "grad3/dynamics.hpp"
#include "grad3/field.hpp"
#include "grad3/manifolds.hpp"
#include "grad3/rng.hpp"
#include "grad3/spectral.hpp"

using namespace grad3;

namespace {

std::vector<double> logspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    return v;
}

void EigenvaluesCardano(benchmark::State& state) {
    const SystemParams p(0.1, 1.0);
    for (auto _ : state) {
        auto d = eigenvalues_cardano(p);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(EigenvaluesCardano);

void EigenvaluesNumeric(benchmark::State& state) {
    const SystemParams p(0.1, 1.0);
    for (auto _ : state) {
        auto d = eigenvalues_numeric(p);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(EigenvaluesNumeric);

void BuildEigenbasis(benchmark::State& state) {
    const SystemParams p(0.1, 1.0);
    const SpectralDecomposition d = eigenvalues(p);
    for (auto _ : state) {
        auto basis = build_eigenbasis(p, d);
        benchmark::DoNotOptimize(basis);
    }
}
BENCHMARK(BuildEigenbasis);

void SpectrumSweep(benchmark::State& state) {
    const auto grid = logspace(0.01, 1e4, state.range(0));
    for (auto _ : state) {
        auto points = spectrum_sweep(0.1, grid);
        benchmark::DoNotOptimize(points);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(SpectrumSweep)->Range(64, 1024)->Complexity();

void PropagateFull(benchmark::State& state) {
    Rng rng(0);
    const ModeState z0{rng.complex_normal(), rng.complex_normal(),
                       rng.complex_normal(), 1.0, 0.1};
    for (auto _ : state) {
        auto z = propagate_full(z0, 1.0);
        benchmark::DoNotOptimize(z);
    }
}
BENCHMARK(PropagateFull);

void EvolveFieldFull(benchmark::State& state) {
    Rng rng(0);
    const int n = static_cast<int>(state.range(0));
    const FieldState f0 = random_field(n, 2.0 * std::numbers::pi, rng);
    for (auto _ : state) {
        auto f = evolve_field(f0, 0.1, 1.0, EvolveModel::full);
        benchmark::DoNotOptimize(f);
    }
    state.SetComplexityN(n);
}
BENCHMARK(EvolveFieldFull)->RangeMultiplier(2)->Range(64, 512)->Complexity();

void BalanceAudit(benchmark::State& state) {
    Rng rng(0);
    const FieldState f0 = random_slow_field(256, 2.0 * std::numbers::pi, 0.1, rng);
    const std::vector<double> t_samples = {0.0, 1.0, 2.0, 3.0, 4.0, 5.0};
    for (auto _ : state) {
        auto report = balance_audit(f0, 0.1, t_samples);
        benchmark::DoNotOptimize(report);
    }
}
BENCHMARK(BalanceAudit);

}  // namespace

BENCHMARK_MAIN();
