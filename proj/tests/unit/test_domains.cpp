#include "doctest.h"

#include <cmath>

#include "illuminate/domains/deceptive.hpp"
#include "illuminate/domains/tile_level.hpp"
#include "support.hpp"

using namespace illuminate;
using namespace illuminate::domains;
using illuminate::testing::oracle_feasible;

namespace {

TileLevel level(const char* text) { return TileLevel::parse(text); }

TileLevel random_level(Rng& rng, std::size_t w = 10, std::size_t h = 10) {
    LevelDomainConfig cfg;
    cfg.width = w;
    cfg.height = h;
    cfg.wall_probability = rng.uniform(0.1, 0.6);
    cfg.treasure_probability = 0.05;
    return LevelDomain(cfg).random_genome(rng).as<TileLevel>();
}

} // namespace

TEST_CASE("level feasibility examples") {
    auto corridor = level("S........E\n");
    auto f = level_feasibility(corridor);
    CHECK(f.feasible);
    CHECK(f.infeasibility == 0.0);

    auto sealed = level("S...#E\n");
    f = level_feasibility(sealed);
    CHECK_FALSE(f.feasible);
    CHECK(f.infeasibility == 0.5);

    auto one_lost = level("S.T.E\n#####\n..T#.\n");
    f = level_feasibility(one_lost);
    CHECK_FALSE(f.feasible);
    CHECK(f.infeasibility == 0.25);
}

TEST_CASE("level descriptor") {
    TileLevel open(10, 10);
    open.at(0, 0) = Tile::start;
    open.at(9, 0) = Tile::exit;
    auto d = level_descriptor(open);
    CHECK(d[0] == 0.0);
    CHECK(d[1] == doctest::Approx(0.1));
    CHECK(d[2] == 1.0);
    CHECK(level_fitness(open) == 1.0);

    // A corridor hemmed in by walls: shortest path still visits 10 tiles.
    TileLevel corridor(10, 10, Tile::wall);
    for (std::size_t x = 0; x < 10; ++x) corridor.at(x, 4) = Tile::floor;
    corridor.at(0, 4) = Tile::start;
    corridor.at(9, 4) = Tile::exit;
    CHECK(shortest_path_tiles(corridor) == 10u);
    CHECK(level_descriptor(corridor)[1] == doctest::Approx(0.1));
    CHECK(level_fitness(corridor) == doctest::Approx(0.1));
}

TEST_CASE("checkerboard symmetry matches a brute-force pair count") {
    for (std::size_t w : {4u, 5u, 8u}) {
        TileLevel board(w, 6);
        for (std::size_t y = 0; y < 6; ++y)
            for (std::size_t x = 0; x < w; ++x) board.at(x, y) = (x + y) % 2 ? Tile::wall : Tile::floor;
        board.at(0, 0) = Tile::start;
        board.at(w - 1, 5) = Tile::treasure;
        std::size_t equal = 0, pairs = 0;
        for (std::size_t y = 0; y < 6; ++y) {
            for (std::size_t x = 0; x < w; ++x) {
                const std::size_t mx = w - 1 - x;
                if (mx <= x) continue;
                ++pairs;
                equal += (board.at(x, y) == Tile::wall) == (board.at(mx, y) == Tile::wall);
            }
        }
        CHECK(mirror_symmetry(board) == doctest::Approx(double(equal) / double(pairs)));
    }
}

TEST_CASE("fitness of a feasible level with 40% walls") {
    TileLevel l(10, 1);
    l.at(0, 0) = Tile::start;
    l.at(1, 0) = Tile::exit;
    for (std::size_t x = 6; x < 10; ++x) l.at(x, 0) = Tile::wall;
    CHECK(level_fitness(l) == doctest::Approx(0.6));
    l.at(1, 0) = Tile::wall;
    l.at(9, 0) = Tile::exit;
    CHECK(level_fitness(l) == 0.0);
}

TEST_CASE("level distance is a metric") {
    Rng rng(21);
    auto a = random_level(rng);
    CHECK(level_distance(a, a) == 0);
    auto b = a;
    b.tiles[17] = b.tiles[17] == Tile::wall ? Tile::floor : Tile::wall;
    CHECK(level_distance(a, b) == 1);
    TileLevel all_wall(4, 4, Tile::wall), all_floor(4, 4, Tile::floor);
    CHECK(level_distance(all_wall, all_floor) == 16);
    CHECK_THROWS_AS(level_distance(all_wall, TileLevel(4, 5)), ContractViolation);

    for (int t = 0; t < 200; ++t) {
        const auto x = random_level(rng), y = random_level(rng), z = random_level(rng);
        CHECK(level_distance(x, y) == level_distance(y, x));
        CHECK(level_distance(x, z) <= level_distance(x, y) + level_distance(y, z));
        CHECK((level_distance(x, y) == 0) == (x == y));
    }
}

TEST_CASE("feasibility agrees with a union-find oracle on random levels") {
    Rng rng(1000);
    std::size_t feasible = 0;
    for (int t = 0; t < 1000; ++t) {
        const auto l = random_level(rng, 4 + t % 9, 3 + t % 7);
        const bool expected = oracle_feasible(l);
        feasible += expected;
        CHECK(level_feasibility(l).feasible == expected);
        CHECK((level_feasibility(l).infeasibility == 0.0) == expected);
    }
    CHECK(feasible > 50);
    CHECK(feasible < 950);
}

TEST_CASE("level domain variation keeps levels well formed") {
    LevelDomain domain;
    Rng rng(3);
    auto g = domain.random_genome(rng);
    for (int t = 0; t < 500; ++t) {
        auto other = domain.random_genome(rng);
        g = t % 3 ? domain.mutate(g, rng) : domain.crossover(g, other, rng);
        CHECK_NOTHROW(g.as<TileLevel>().validate());
        const auto e = domain.evaluate(g);
        CHECK_NOTHROW(check_evaluation(e, 3));
        CHECK(e.feasible == oracle_feasible(g.as<TileLevel>()));
    }
    const auto text = domain.render(g);
    CHECK(domain.parse(text).as<TileLevel>() == g.as<TileLevel>());
    CHECK(domain.evaluate(g) == domain.evaluate(domain.parse(text)));
}

TEST_CASE("malformed levels are rejected with the violated rule") {
    LevelDomain domain(LevelDomainConfig{.width = 3, .height = 1});
    CHECK_THROWS_WITH_AS(domain.parse("S..\n"), doctest::Contains("exit"), EvaluationError);
    CHECK_THROWS_WITH_AS(domain.parse("SEE\n"), doctest::Contains("exactly one exit"), EvaluationError);
    CHECK_THROWS_WITH_AS(domain.parse("S.E\n..\n"), doctest::Contains("same width"), EvaluationError);
    CHECK_THROWS_WITH_AS(domain.parse("S?E\n"), doctest::Contains("unknown tile"), EvaluationError);
    CHECK_THROWS_AS(domain.parse("S.E.\n"), EvaluationError);
    CHECK_THROWS_AS(domain.evaluate(Genome::make(std::vector<double>{1.0})), EvaluationError);
}

TEST_CASE("binary level features") {
    LevelDomain domain(LevelDomainConfig{.features = LevelFeatures::binary});
    CHECK(domain.descriptor_dims() == level_trait_count);
    Rng rng(5);
    for (int t = 0; t < 50; ++t) {
        const auto e = domain.evaluate(domain.random_genome(rng));
        CHECK(e.descriptor.size() == 8);
        for (double v : e.descriptor) CHECK((v == 0.0 || v == 1.0));
    }
}

TEST_CASE("level domain rejects bad probabilities") {
    CHECK_THROWS_AS(LevelDomain(LevelDomainConfig{.wall_probability = 0.8, .treasure_probability = 0.3}),
                    ContractViolation);
    CHECK_THROWS_AS(LevelDomain(LevelDomainConfig{.wall_probability = -0.1}), ContractViolation);
}

TEST_CASE("deceptive fitness") {
    DeceptiveConfig cfg;
    cfg.dims = 2;
    std::vector<double> g{0.5, 0.5};
    CHECK(deceptive_fitness(g, cfg) == 1.0);

    g = {0.5 + 0.4, 0.5};
    const double base = 1.0 - 0.4 / cfg.scale;
    CHECK(deceptive_fitness(g, cfg) == doctest::Approx(base * 0.1));

    g = {0.5 + 0.2, 0.5};
    CHECK(deceptive_fitness(g, cfg) == doctest::Approx(1.0 - 0.2 / cfg.scale));

    cfg.dims = 10;
    std::vector<double> far(10, -1.0);
    CHECK(deceptive_fitness(far, cfg) == 0.0);

    // The moat only looks at the first two genes.
    std::vector<double> off(10, 0.5);
    off[5] = 0.9;
    CHECK(deceptive_fitness(off, cfg) == doctest::Approx(1.0 - 0.4 / cfg.scale));

    CHECK(deceptive_descriptor(std::vector<double>{-1.0, 1.0}) == Descriptor{0.0, 1.0});
}

TEST_CASE("deceptive domain") {
    DeceptiveDomain domain;
    Rng rng(17);
    for (int t = 0; t < 200; ++t) {
        const auto g = domain.random_genome(rng);
        const auto& genes = g.as<ContinuousGenome>();
        CHECK(genes[0] <= 0.0);
        CHECK(genes[1] <= 0.0);
        const auto child = domain.mutate(g, rng);
        for (double x : child.as<ContinuousGenome>()) CHECK(std::abs(x) <= 1.0);
        const auto text = domain.render(child);
        CHECK(domain.parse(text).as<ContinuousGenome>() == child.as<ContinuousGenome>());
    }
    CHECK_THROWS_AS(domain.parse("0.1 0.2"), EvaluationError);
    CHECK_THROWS_AS(domain.parse("0.1 x"), EvaluationError);
    CHECK_THROWS_AS(DeceptiveDomain(DeceptiveConfig{.dims = 1}), ContractViolation);
    CHECK_THROWS_AS(DeceptiveDomain(DeceptiveConfig{.start_corner = -1.0}), ContractViolation);
}
