#include <benchmark/benchmark.h>

#include "snowspan/analysis.hpp"
#include "snowspan/datasets.hpp"
#include "snowspan/ledger.hpp"
#include "snowspan/nets.hpp"
#include "snowspan/spanner.hpp"

using namespace snowspan;

namespace {

MetricSpec half_flake() { return MetricSpec::snowflake(MetricSpec::l2(), 0.5); }

void BM_Hierarchy(benchmark::State& state) {
    const PointSet points = make_uniform(static_cast<std::size_t>(state.range(0)), 2, 1);
    const MetricView view(points, half_flake());
    for (auto _ : state) benchmark::DoNotOptimize(build_hierarchy(view));
    state.SetComplexityN(state.range(0));
}

void BM_NetTreeSpanner(benchmark::State& state) {
    const PointSet points = make_uniform(static_cast<std::size_t>(state.range(0)), 2, 1);
    const MetricView view(points, half_flake());
    const NetHierarchy h = build_hierarchy(view);
    for (auto _ : state) benchmark::DoNotOptimize(net_tree_spanner(h, view, default_gamma(0.5)));
    state.SetComplexityN(state.range(0));
}

void BM_GreedySpanner(benchmark::State& state) {
    const PointSet points = make_uniform(static_cast<std::size_t>(state.range(0)), 2, 1);
    const MetricView view(points, MetricSpec::l2());
    for (auto _ : state) benchmark::DoNotOptimize(greedy_spanner(view, 1.1));
    state.SetComplexityN(state.range(0));
}

void BM_Mst(benchmark::State& state) {
    const PointSet points = make_uniform(static_cast<std::size_t>(state.range(0)), 3, 1);
    const MetricView view(points, MetricSpec::l2());
    for (auto _ : state) benchmark::DoNotOptimize(mst(view));
    state.SetComplexityN(state.range(0));
}

void BM_MaxStretch(benchmark::State& state) {
    const PointSet points = make_uniform(static_cast<std::size_t>(state.range(0)), 2, 1);
    const MetricView view(points, MetricSpec::l2());
    const SpannerGraph g = greedy_spanner(view, 1.25);
    for (auto _ : state) benchmark::DoNotOptimize(max_stretch(g, view));
    state.SetComplexityN(state.range(0));
}

void BM_LedgerGrid(benchmark::State& state) {
    const PointSet grid = make_grid(static_cast<std::size_t>(state.range(0)) + 1);
    const MetricView view(grid, half_flake());
    for (auto _ : state) benchmark::DoNotOptimize(run_ledger(view, PivotMode::general));
    state.SetComplexityN(state.range(0));
}

}  // namespace

BENCHMARK(BM_Hierarchy)->RangeMultiplier(2)->Range(128, 2048)->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK(BM_NetTreeSpanner)->RangeMultiplier(2)->Range(128, 1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GreedySpanner)->RangeMultiplier(2)->Range(64, 256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Mst)->RangeMultiplier(2)->Range(128, 4096)->Unit(benchmark::kMillisecond)->Complexity(benchmark::oNSquared);
BENCHMARK(BM_MaxStretch)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LedgerGrid)->RangeMultiplier(4)->Range(64, 4096)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
