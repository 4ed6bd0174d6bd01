#include <benchmark/benchmark.h>

#include "illuminate/divergence/novelty.hpp"
#include "illuminate/domains/deceptive.hpp"
#include "illuminate/domains/tile_level.hpp"
#include "illuminate/engines/engine.hpp"
#include "illuminate/engines/pareto.hpp"

using namespace illuminate;

namespace {

std::vector<Descriptor> points(std::size_t n, std::size_t dims, Rng& rng) {
    std::vector<Descriptor> out(n, Descriptor(dims));
    for (auto& p : out)
        for (auto& x : p) x = rng.uniform();
    return out;
}

void novelty(benchmark::State& state) {
    Rng rng(1);
    const auto pop = points(static_cast<std::size_t>(state.range(0)), 2, rng);
    NoveltyArchive archive;
    for (auto _ : state)
        for (const auto& p : pop) benchmark::DoNotOptimize(novelty_score(p, pop, archive, 15));
}
BENCHMARK(novelty)->Arg(50)->Arg(200);

void pareto(benchmark::State& state) {
    Rng rng(2);
    std::vector<Objectives> pts(static_cast<std::size_t>(state.range(0)));
    for (auto& p : pts) p = {rng.uniform(), double(rng.below(16))};
    for (auto _ : state) benchmark::DoNotOptimize(pareto_sort(pts));
}
BENCHMARK(pareto)->Arg(50)->Arg(100);

void level_feasibility(benchmark::State& state) {
    Rng rng(3);
    const domains::LevelDomain domain;
    const auto g = domain.random_genome(rng);
    const auto& level = g.as<domains::TileLevel>();
    for (auto _ : state) benchmark::DoNotOptimize(domains::level_feasibility(level));
}
BENCHMARK(level_feasibility);

void map_elites_iteration(benchmark::State& state) {
    EngineConfig c;
    c.budget = 1u << 30;
    c.grid = GridConfig{PartitionKind::uniform, {20, 20}};
    auto engine = make_engine(c, std::make_shared<domains::DeceptiveDomain>(), 4);
    engine->step(1);
    for (auto _ : state) engine->step(1);
}
BENCHMARK(map_elites_iteration);

} // namespace

BENCHMARK_MAIN();
