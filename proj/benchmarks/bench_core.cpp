#include "vcreg/epsilon_nets.hpp"
#include "vcreg/generators.hpp"
#include "vcreg/partition.hpp"
#include "vcreg/refine.hpp"
#include "vcreg/regularity.hpp"
#include "vcreg/vc_dimension.hpp"

#include <benchmark/benchmark.h>

using namespace vcreg;

namespace {

BipartiteRelation interval_graph(std::size_t n)
{
    return generate({Family::IntervalIncidence, n, n, 1});
}

NetPair full_nets(const BipartiteRelation& g, std::int64_t r, double c0)
{
    const NetBudget budget{2, r, c0, 6};
    const auto x = build_difference_net(g, VertexSubset::full(g, Side::Y), VertexSubset::full(g, Side::X), budget, 1);
    const auto y = build_difference_net(g, VertexSubset::full(g, Side::X), VertexSubset::full(g, Side::Y), budget, 2);
    return {x.members, y.members, make_rational(1, r)};
}

void BM_Energy(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto g = interval_graph(n);
    const auto p = induced_partition(g, full_nets(g, 8, 0.5));
    for (auto _ : state)
        benchmark::DoNotOptimize(energy(g, p));
    state.counters["blocks"] = static_cast<double>(p.block_count(Side::X) * p.block_count(Side::Y));
}
BENCHMARK(BM_Energy)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_InducedPartition(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto g = interval_graph(n);
    const auto nets = full_nets(g, 8, 0.5);
    for (auto _ : state)
        benchmark::DoNotOptimize(induced_partition(g, nets));
}
BENCHMARK(BM_InducedPartition)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_BuildDifferenceNet(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto g = interval_graph(n);
    const NetBudget budget{2, 8, 0.5, 6};
    std::uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            build_difference_net(g, VertexSubset::full(g, Side::Y), VertexSubset::full(g, Side::X), budget, ++seed));
}
BENCHMARK(BM_BuildDifferenceNet)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_PairRegularExact(benchmark::State& state)
{
    const auto k = static_cast<std::size_t>(state.range(0));
    const auto g = generate({Family::ErdosRenyi, k, 200, 3, 0.5});
    const auto bx = VertexSubset::full(g, Side::X);
    const auto by = VertexSubset::full(g, Side::Y);
    const auto eps = make_rational(1, 4);
    for (auto _ : state)
        benchmark::DoNotOptimize(pair_regular_exact(g, bx, by, eps, 20));
}
BENCHMARK(BM_PairRegularExact)->DenseRange(10, 16, 2)->Unit(benchmark::kMillisecond);

void BM_VcDimension(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto g = generate({Family::BoxIncidence, n, n, 4, 0.5, 2});
    for (auto _ : state)
        benchmark::DoNotOptimize(vc_report(g, 8));
}
BENCHMARK(BM_VcDimension)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_Regularize(benchmark::State& state)
{
    const auto g = interval_graph(static_cast<std::size_t>(state.range(0)));
    LoopConfig cfg;
    cfg.r = 2;
    cfg.d = 2;
    cfg.seed = 7;
    for (auto _ : state)
        benchmark::DoNotOptimize(regularize(g, cfg));
}
BENCHMARK(BM_Regularize)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
