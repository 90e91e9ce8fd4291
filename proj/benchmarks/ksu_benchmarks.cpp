#include <benchmark/benchmark.h>

#include <numbers>

#include "figures.hpp"
#include "ksu/analytic.hpp"
#include "ksu/lossy_qfi.hpp"
#include "ksu/oracle.hpp"

namespace {

using namespace ksu;

InterferometerConfig cfg(double g, int k) { return InterferometerConfig::balanced(g, 1.0, std::numbers::pi / 2, k); }

void BM_ApplyOpa(benchmark::State& state) {
    const double g = static_cast<double>(state.range(0)) / 10.0;
    fock::Cutoff c;
    const auto in = fock::make_input(1.0, std::numbers::pi / 2, c);
    for (auto _ : state) benchmark::DoNotOptimize(fock::apply_opa(in, g, 0.0));
}
BENCHMARK(BM_ApplyOpa)->Arg(3)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_SensitivityNumeric(benchmark::State& state) {
    const auto c = cfg(1.0, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(oracle::sensitivity_numeric(c));
}
BENCHMARK(BM_SensitivityNumeric)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_SensitivityNumericLossy(benchmark::State& state) {
    const auto c = cfg(1.0, 2);
    for (auto _ : state) benchmark::DoNotOptimize(oracle::sensitivity_numeric(c, LossConfig{0.6, 0.6}));
}
BENCHMARK(BM_SensitivityNumericLossy)->Unit(benchmark::kMillisecond);

void BM_SensitivityAnalytic(benchmark::State& state) {
    auto c = cfg(1.0, 2);
    c.phi = 0.1;
    for (auto _ : state) benchmark::DoNotOptimize(analytic::sensitivity_analytic(c));
}
BENCHMARK(BM_SensitivityAnalytic);

void BM_CqBound(benchmark::State& state) {
    const auto H = lossy::moment_vector(1.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(lossy::cq_bound(H, {0.6, 1.2, -1.2}));
}
BENCHMARK(BM_CqBound);

void BM_OptimalMu(benchmark::State& state) {
    const auto H = lossy::moment_vector(1.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(lossy::optimal_mu(H, 0.6));
}
BENCHMARK(BM_OptimalMu);

void BM_MixedQfiSmall(benchmark::State& state) {
    const auto probe = oracle::probe_state(cfg(0.8, 2));
    const auto family = oracle::lossy_kerr_family(probe, 2, 0.6, InternalLossPlacement::after_phase,
                                                  static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(oracle::mixed_qfi_small(family, 0.0));
}
BENCHMARK(BM_MixedQfiSmall)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_FigureSweep(benchmark::State& state) {
    const char* ids[] = {"2a", "3b", "14a"};
    const std::string id = ids[state.range(0)];
    state.SetLabel(id);
    for (auto _ : state) benchmark::DoNotOptimize(cli::make_figure(id, 1));
}
BENCHMARK(BM_FigureSweep)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
