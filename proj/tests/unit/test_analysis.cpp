#include "doctest.h"

#include <map>

#include "illuminate/analysis/lineage.hpp"
#include "illuminate/analysis/report.hpp"
#include "support.hpp"

using namespace illuminate;

namespace {

/// Genome is an integer below `count`; the descriptor is its bit pattern, so each genome
/// value owns one cell of a binary map.
class CellDomain : public Domain {
public:
    CellDomain(std::size_t dims, std::size_t count, double fitness)
        : dims_(dims), count_(count), fitness_(fitness) {}
    std::string name() const override { return "cells"; }
    std::size_t descriptor_dims() const override { return dims_; }
    std::vector<Bounds> descriptor_bounds() const override { return std::vector<Bounds>(dims_, {0, 1}); }
    bool constrained() const override { return false; }
    Genome random_genome(Rng& rng) const override { return Genome::make(rng.below(count_)); }
    Genome mutate(const Genome& g, Rng&) const override { return g; }
    Genome crossover(const Genome& a, const Genome&, Rng&) const override { return a; }
    Evaluation evaluate(const Genome& g) const override {
        Evaluation e;
        e.fitness = fitness_;
        const auto k = g.as<std::uint64_t>();
        for (std::size_t i = 0; i < dims_; ++i) e.descriptor.push_back(double((k >> i) & 1));
        return e;
    }
    std::string render(const Genome& g) const override { return std::to_string(g.as<std::uint64_t>()); }
    Genome parse(std::string_view) const override { throw EvaluationError("unsupported"); }

private:
    std::size_t dims_, count_;
    double fitness_;
};

EngineConfig binary_me(std::size_t budget) {
    EngineConfig c;
    c.algorithm = Algorithm::me;
    c.budget = budget;
    c.init_count = budget;
    c.grid = GridConfig{PartitionKind::binary, {}};
    return c;
}

Individual node(std::vector<IndividualId> parents, double fitness = 0.5) {
    Individual i;
    i.parents = std::move(parents);
    i.evaluation.fitness = fitness;
    i.evaluation.descriptor = {0.0};
    return i;
}

} // namespace

TEST_CASE("empty map report") {
    auto e = make_engine(binary_me(100), std::make_shared<CellDomain>(8, 100, 0.5), 1);
    const auto r = snapshot(*e);
    CHECK(r.coverage == 0.0);
    CHECK(r.qd_score == 0.0);
    CHECK(r.cells.empty());
    CHECK(r.total_cells == 256);
    CHECK_FALSE(r.projected);
    const auto h = heatmap_export(r, 0, 1);
    for (const auto& row : h.values)
        for (const auto& v : row) CHECK_FALSE(v);
}

TEST_CASE("coverage of 100 filled cells out of 256") {
    auto e = run_engine(binary_me(3000), std::make_shared<CellDomain>(8, 100, 0.5), 2);
    const auto r = snapshot(*e);
    CHECK(r.cells.size() == 100);
    CHECK(r.coverage == doctest::Approx(100.0 / 256.0));
    CHECK(r.qd_score == doctest::Approx(50.0));
    CHECK(r.coverage == e->state().metrics.back().coverage);
}

TEST_CASE("saturated 16-cell map") {
    auto e = run_engine(binary_me(500), std::make_shared<CellDomain>(4, 16, 1.0), 3);
    const auto r = snapshot(*e);
    CHECK(r.coverage == 1.0);
    CHECK(r.qd_score == 16.0);
    REQUIRE(r.histograms.size() == 4);
    std::size_t total = 0;
    for (auto c : r.histograms[0].counts) total += c;
    CHECK(total == 16);
}

TEST_CASE("snapshot does not touch the run") {
    auto e = make_engine(binary_me(300), std::make_shared<CellDomain>(8, 50, 0.5), 4);
    e->step(1);
    const auto iteration = e->state().iteration;
    const auto metrics = e->state().metrics;
    const auto a = report_json(snapshot(*e));
    const auto b = report_json(snapshot(*e));
    CHECK(a == b);
    CHECK(e->state().iteration == iteration);
    CHECK(e->state().metrics == metrics);
}

TEST_CASE("non-map runs are projected onto a reference grid") {
    EngineConfig c;
    c.algorithm = Algorithm::ns_lc;
    c.budget = 300;
    c.init_count = 40;
    c.population_size = 20;
    auto e = run_engine(c, std::make_shared<testing::ToyDomain>(), 5);
    const auto r = snapshot(*e);
    CHECK(r.projected);
    CHECK(r.resolution == std::vector<std::size_t>{10, 10});
    CHECK(r.coverage > 0.0);

    const Partition coarse(GridSpec::uniform({{0, 1}, {0, 1}}, {2, 2}));
    const auto p = project(*e, coarse);
    CHECK(p.total_cells == 4);
    std::map<std::size_t, double> best;
    for (auto id : e->retained()) {
        const auto& ev = e->state().history[id].evaluation;
        auto& slot = best[coarse.flat_cell_of(ev.descriptor)];
        slot = std::max(slot, ev.fitness);
    }
    REQUIRE(p.cells.size() == best.size());
    for (const auto& cell : p.cells) CHECK(cell.fitness == best.at(cell.flat));
}

TEST_CASE("two-dimensional heatmap equals the cell table") {
    ExpressivityReport r;
    r.resolution = {3, 2};
    r.total_cells = 6;
    r.cells = {{CellIndex{{0, 1}}, 1, 7, 0.4}, {CellIndex{{2, 0}}, 4, 9, 0.9}};
    const auto h = heatmap_export(r, 0, 1);
    REQUIRE(h.values.size() == 3);
    REQUIRE(h.values[0].size() == 2);
    CHECK(h.values[0][1] == 0.4);
    CHECK(h.values[2][0] == 0.9);
    CHECK_FALSE(h.values[1][1]);
    CHECK(heatmap_csv(h) == "NA,0.4\nNA,NA\n0.9,NA\n");

    const auto t = heatmap_export(r, 1, 0);
    CHECK(t.values.size() == 2);
    CHECK(t.values[1][0] == 0.4);
}

TEST_CASE("three-dimensional heatmap marginalizes by max") {
    Rng rng(6);
    const std::vector<std::size_t> res{3, 4, 5};
    for (int t = 0; t < 50; ++t) {
        ExpressivityReport r;
        r.resolution = res;
        r.total_cells = 60;
        std::vector<std::optional<double>> table(60);
        for (std::size_t f = 0; f < 60; ++f) {
            if (rng.uniform() < 0.5) continue;
            table[f] = std::floor(rng.uniform() * 4) / 4;  // duplicates on purpose
            r.cells.push_back({unflatten(f, res), f, f, *table[f]});
        }
        for (auto [a, b] : {std::pair<std::size_t, std::size_t>{0, 2}, {1, 0}, {2, 1}}) {
            const auto h = heatmap_export(r, a, b);
            for (std::size_t i = 0; i < res[a]; ++i) {
                for (std::size_t j = 0; j < res[b]; ++j) {
                    std::optional<double> oracle;
                    for (std::size_t f = 0; f < 60; ++f) {
                        const auto c = unflatten(f, res);
                        if (c.coords[a] != i || c.coords[b] != j || !table[f]) continue;
                        oracle = std::max(oracle.value_or(-1.0), *table[f]);
                    }
                    CHECK(h.values[i][j] == oracle);
                }
            }
        }
    }
}

TEST_CASE("heatmap axis errors") {
    ExpressivityReport r;
    r.resolution = {3, 3};
    CHECK_THROWS_AS(heatmap_export(r, 0, 2), ContractViolation);
    CHECK_THROWS_AS(heatmap_export(r, 1, 1), ContractViolation);
    r.resolution = {3};
    CHECK_THROWS_AS(heatmap_export(r, 0, 1), ContractViolation);
}

TEST_CASE("report serialization") {
    ExpressivityReport r;
    r.algorithm = "ME";
    r.resolution = {2, 2};
    r.total_cells = 4;
    r.coverage = 0.25;
    r.qd_score = 0.5;
    r.cells = {{CellIndex{{1, 0}}, 2, 3, 0.5}};
    CHECK(report_csv(r) == "flat,c0,c1,elite,fitness\n2,1,0,3,0.5\n");
    const auto json = report_json(r);
    CHECK(json.find("illuminate.report/1") != std::string::npos);
    CHECK(json.find("\"coverage\": 0.25") != std::string::npos);
}

TEST_CASE("lineage of a seed is a single node") {
    RunHistory h;
    h.commit(node({}));
    const auto tree = lineage_trace(h, 0);
    REQUIRE(tree.nodes.size() == 1);
    CHECK(tree.nodes[0].operation == Operation::seed);
    CHECK_THROWS_AS(lineage_trace(h, 1), NotFound);
}

TEST_CASE("mutation chain and crossover lineage") {
    RunHistory h;
    for (int i = 0; i < 6; ++i) h.commit(node({}));
    const auto& child = h.commit(node({5}));  // id 6
    auto tree = lineage_trace(h, child.id);
    REQUIRE(tree.nodes.size() == 2);
    CHECK(tree.root == 6);
    CHECK(tree.nodes[0].id == 5);
    CHECK(tree.nodes[1].operation == Operation::mutation);
    CHECK(tree.nodes[1].parents == std::vector<IndividualId>{5});

    h.commit(node({2, 6}));  // 7
    tree = lineage_trace(h, 7);
    std::vector<IndividualId> ids;
    for (const auto& n : tree.nodes) ids.push_back(n.id);
    CHECK(ids == std::vector<IndividualId>{2, 5, 6, 7});
    CHECK(tree.nodes.back().operation == Operation::crossover);
}

TEST_CASE("common ancestry of two elites") {
    RunHistory h;
    h.commit(node({}));   // 0
    h.commit(node({}));   // 1
    h.commit(node({0}));  // 2
    h.commit(node({2}));  // 3
    h.commit(node({2}));  // 4
    h.commit(node({1}));  // 5
    const std::vector<IndividualId> pair{3, 4};
    CHECK(common_ancestors(h, pair) == std::vector<IndividualId>{2, 0});
    const std::vector<IndividualId> unrelated{3, 5};
    CHECK(common_ancestors(h, unrelated).empty());
    const std::vector<IndividualId> bad{3, 99};
    CHECK_THROWS_AS(common_ancestors(h, bad), NotFound);
}
