#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "frostlab/incidence.hpp"
#include "frostlab/rng.hpp"

using namespace frostlab;

namespace {

void BM_IncidenceCount(benchmark::State& state) {
    const double R = static_cast<double>(state.range(0));
    const auto n = static_cast<std::size_t>(state.range(1));
    const SquareGrid grid(R);
    Rng rng(3);
    std::vector<OrientedRect> tubes;
    for (std::size_t k = 0; k < n; ++k) {
        const double a = rng.uniform(0.0, 3.14159);
        tubes.push_back({{rng.uniform(-R / 4, R / 4), rng.uniform(-R / 4, R / 4)},
                         {std::cos(a), std::sin(a)}, R / 2, std::sqrt(R) / 2});
    }
    for (auto _ : state) benchmark::DoNotOptimize(incidence_count(tubes, grid).total);
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_IncidenceCount)->Args({1024, 1000})->Args({4096, 1000})->Args({4096, 10000})->Unit(benchmark::kMillisecond);

}  // namespace
