#include "doctest.h"

#include <algorithm>

#include "illuminate/partition/grid.hpp"
#include "support.hpp"

using namespace illuminate;

namespace {
CellIndex cell(std::vector<std::size_t> c) { return CellIndex{std::move(c)}; }
}

TEST_CASE("uniform binning") {
    const auto spec = GridSpec::uniform({{0, 1}, {0, 1}}, {4, 4});
    CHECK(cell_of_uniform({0.0, 0.0}, spec) == cell({0, 0}));
    CHECK(cell_of_uniform({1.0, 1.0}, spec) == cell({3, 3}));
    CHECK(cell_of_uniform({0.26, 0.74}, spec) == cell({1, 2}));
    CHECK(cell_of_uniform({-3.0, 7.0}, spec) == cell({0, 3}));
    CHECK_THROWS_AS(cell_of_uniform({std::nan(""), 0.5}, spec), ContractViolation);
    CHECK_THROWS_AS(cell_of_uniform({INFINITY, 0.5}, spec), ContractViolation);
    CHECK_THROWS_AS(cell_of_uniform({0.5}, spec), ContractViolation);
}

TEST_CASE("uniform binning agrees with a floor oracle and is monotone") {
    Rng rng(9);
    const auto spec = GridSpec::uniform({{-2, 3}, {0, 10}, {0, 1}}, {7, 3, 5});
    for (int t = 0; t < 2000; ++t) {
        Descriptor d{rng.uniform(-2, 3), rng.uniform(0, 10), rng.uniform()};
        const auto c = cell_of_uniform(d, spec);
        CHECK(within(c, spec.resolution));
        for (std::size_t i = 0; i < 3; ++i) {
            const double lo = spec.bounds[i].lo, w = (spec.bounds[i].hi - lo) / spec.resolution[i];
            CHECK(d[i] >= lo + w * c.coords[i] - 1e-12);
            CHECK(d[i] <= lo + w * (c.coords[i] + 1) + 1e-12);
        }
        Descriptor e = d;
        e[0] = std::min(3.0, e[0] + rng.uniform());
        CHECK(cell_of_uniform(e, spec).coords[0] >= c.coords[0]);
    }
}

TEST_CASE("binary cells") {
    const auto spec = GridSpec::binary(8);
    CHECK(spec.cell_count() == 256);
    const auto zero = cell_of_binary(std::vector<bool>(8, false));
    CHECK(zero == cell(std::vector<std::size_t>(8, 0)));
    CHECK(flat_index(zero, spec.resolution) == 0);
    const auto ones = cell_of_binary(std::vector<bool>(8, true));
    CHECK(ones == cell(std::vector<std::size_t>(8, 1)));
    CHECK(flat_index(ones, spec.resolution) == 255);
    CHECK(cell_of_binary({true, false, true}) == cell({1, 0, 1}));

    Partition p(GridSpec::binary(3));
    CHECK(p.cell_of({0.7, 0.2, 0.5}) == cell({1, 0, 1}));
}

TEST_CASE("flattening round trip") {
    const std::vector<std::size_t> res{3, 4, 2};
    for (std::size_t f = 0; f < 24; ++f) CHECK(flat_index(unflatten(f, res), res) == f);
    CHECK(flat_index(cell({1, 0, 0}), res) == 8);
    CHECK_THROWS_AS(flat_index(cell({3, 0, 0}), res), ContractViolation);
    CHECK_FALSE(within(cell({0, 0}), res));
}

TEST_CASE("grid spec validation") {
    CHECK_THROWS_AS(GridSpec::uniform({}, {}), ContractViolation);
    CHECK_THROWS_AS(GridSpec::uniform({{0, 1}}, {4, 4}), ContractViolation);
    CHECK_THROWS_AS(GridSpec::uniform({{0, 1}}, {0}), ContractViolation);
    CHECK_THROWS_AS(GridSpec::uniform({{1, 1}}, {4}), ContractViolation);
    CHECK_THROWS_AS((GridSpec{PartitionKind::binary, {{0, 1}}, {3}}.validate()), ContractViolation);
    CHECK(partition_kind_from_string("sliding") == PartitionKind::sliding);
    CHECK_THROWS_AS(partition_kind_from_string("hex"), ContractViolation);
}

TEST_CASE("percentile boundaries") {
    std::vector<Descriptor> buffer;
    for (int v = 8; v >= 1; --v) buffer.push_back({double(v)});
    const auto spec = GridSpec::sliding({{0, 10}}, {4});
    const auto b = recompute_boundaries(buffer, spec);
    REQUIRE(b.per_dim.size() == 1);
    CHECK(b.per_dim[0] == std::vector<double>{2, 4, 6});
    std::vector<int> counts(4);
    for (const auto& d : buffer) ++counts[cell_of_sliding(d, b).coords[0]];
    CHECK(counts == std::vector<int>{2, 2, 2, 2});

    SUBCASE("single bin") {
        const auto one = recompute_boundaries(buffer, GridSpec::sliding({{0, 10}}, {1}));
        CHECK(one.per_dim[0].empty());
        for (const auto& d : buffer) CHECK(cell_of_sliding(d, one).coords[0] == 0);
    }
    SUBCASE("identical values") {
        const std::vector<Descriptor> same(10, Descriptor{0.3});
        const auto s = recompute_boundaries(same, spec);
        CHECK(s.per_dim[0] == std::vector<double>{0.3, 0.3, 0.3});
        CHECK(cell_of_sliding({0.3}, s).coords[0] == 0);
    }
    CHECK_THROWS_AS(recompute_boundaries({}, spec), ContractViolation);
}

TEST_CASE("sliding cell lookup") {
    const BoundarySet b{{{2, 4, 6}}};
    CHECK(cell_of_sliding({3}, b).coords[0] == 1);
    CHECK(cell_of_sliding({-100}, b).coords[0] == 0);
    CHECK(cell_of_sliding({100}, b).coords[0] == 3);
    CHECK(cell_of_sliding({2}, b).coords[0] == 0);
    CHECK(cell_of_sliding({2.0000001}, b).coords[0] == 1);
}

TEST_CASE("recomputed boundaries balance bins on random data") {
    Rng rng(4);
    for (std::size_t r : {2u, 3u, 5u, 10u}) {
        for (std::size_t n : {7u, 50u, 333u}) {
            std::vector<Descriptor> buffer;
            for (std::size_t i = 0; i < n; ++i) buffer.push_back({rng.uniform(), rng.uniform() * rng.uniform()});
            const auto spec = GridSpec::sliding({{0, 1}, {0, 1}}, {r, r});
            const auto b = recompute_boundaries(buffer, spec);
            for (std::size_t dim = 0; dim < 2; ++dim) {
                CHECK(std::is_sorted(b.per_dim[dim].begin(), b.per_dim[dim].end()));
                std::vector<std::size_t> counts(r);
                for (const auto& d : buffer) ++counts[cell_of_sliding(d, b).coords[dim]];
                const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
                // Distinct continuous values: spread at most ceil(n/r) - floor(n/r) + 1.
                CHECK(*hi - *lo <= (n + r - 1) / r - n / r + 1);
            }
        }
    }
}

TEST_CASE("partition dispatch and boundary updates") {
    Partition sliding(GridSpec::sliding({{0, 1}}, {4}));
    CHECK(sliding.boundaries().per_dim[0] == std::vector<double>{0.25, 0.5, 0.75});
    CHECK(sliding.flat_cell_of({0.6}) == 2);
    sliding.set_boundaries(BoundarySet{{{0.1, 0.2, 0.3}}});
    CHECK(sliding.flat_cell_of({0.6}) == 3);
    CHECK_THROWS_AS(sliding.set_boundaries(BoundarySet{{{0.1, 0.2}}}), ContractViolation);
    CHECK_THROWS_AS(sliding.set_boundaries(BoundarySet{{{0.3, 0.2, 0.1}}}), ContractViolation);

    Partition uniform(GridSpec::uniform({{0, 1}}, {4}));
    CHECK_THROWS_AS(uniform.set_boundaries(BoundarySet{{{0.1, 0.2, 0.3}}}), ContractViolation);
}
