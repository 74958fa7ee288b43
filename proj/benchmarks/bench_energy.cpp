#include <benchmark/benchmark.h>

#include "frostlab/energy.hpp"

using namespace frostlab;

namespace {

void BM_E3Histogram(benchmark::State& state) {
    const PointSet1D P = PointSet1D::from_measure(build_cantor(1.0 / 3.0, static_cast<int>(state.range(0)), 1.0));
    for (auto _ : state) benchmark::DoNotOptimize(e3_discrete(P, P.delta()).count);
    state.SetLabel(std::to_string(P.size()) + " points");
}
BENCHMARK(BM_E3Histogram)->DenseRange(5, 9)->Unit(benchmark::kMillisecond);

void BM_E3BruteForce(benchmark::State& state) {
    const PointSet1D P = PointSet1D::from_measure(build_cantor(1.0 / 3.0, 4, 1.0));
    for (auto _ : state) benchmark::DoNotOptimize(e3_discrete(P, P.delta(), EnergyMethod::brute_force).count);
}
BENCHMARK(BM_E3BruteForce)->Unit(benchmark::kMillisecond);

void BM_WeightedEc3(benchmark::State& state) {
    const DiscreteMeasure1D nu = build_cantor(1.0 / 3.0, static_cast<int>(state.range(0)), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(ec_energy(nu, 3, nu.resolution()).value);
}
BENCHMARK(BM_WeightedEc3)->DenseRange(6, 8)->Unit(benchmark::kMillisecond);

}  // namespace
