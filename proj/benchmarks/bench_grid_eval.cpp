#include <benchmark/benchmark.h>

#include <vector>

#include "frostlab/curve.hpp"
#include "frostlab/fourier.hpp"
#include "frostlab/grid_eval.hpp"
#include "frostlab/rng.hpp"

using namespace frostlab;

namespace {

void BM_TensorGrid(benchmark::State& state) {
    const auto atoms = static_cast<std::size_t>(state.range(0));
    const auto side = static_cast<std::size_t>(state.range(1));
    Rng rng(1);
    std::vector<Vec2> f;
    std::vector<cplx> c;
    for (std::size_t j = 0; j < atoms; ++j) {
        const double x = rng.uniform(-1, 1);
        f.push_back({x, x * x});
        c.push_back(1.0 / atoms);
    }
    const TensorGridEvaluator ev(f, c);
    const UniformAxis ax{-64.0, 128.0 / side, side};
    for (auto _ : state) {
        double acc = 0.0;
        ev.run(ax, ax, [&](const GridBlock& b) { acc += std::norm(b.value(0, 0)); });
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations() * atoms * side * side);
}
BENCHMARK(BM_TensorGrid)->Args({256, 512})->Args({1024, 512})->Args({1024, 1024})->Unit(benchmark::kMillisecond);

void BM_L6OnBall(benchmark::State& state) {
    const DiscreteMeasure2D mu =
        lift_measure(build_cantor(1.0 / 3.0, static_cast<int>(state.range(0)), 1.0), make_curve(CurveKind::parabola));
    const double R = static_cast<double>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(lp_norm_on_ball(mu, R, 6.0).value);
}
BENCHMARK(BM_L6OnBall)->Args({8, 128})->Args({10, 256})->Unit(benchmark::kMillisecond);

}  // namespace
