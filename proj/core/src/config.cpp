#include "illuminate/engines/config.hpp"

#include <cmath>
#include <string>

#include "illuminate/core/error.hpp"

namespace illuminate {

namespace {

struct AlgorithmInfo {
    Algorithm algorithm;
    std::string_view name;
    Components components;  // distance, partition, local competition, constraints
};

constexpr AlgorithmInfo algorithm_table[] = {
    {Algorithm::me, "ME", {false, true, true, false}},
    {Algorithm::me_nov, "ME-NOV", {true, true, true, false}},
    {Algorithm::mesb, "MESB", {false, true, true, false}},
    {Algorithm::cns_fins, "CNS-FINS", {true, false, false, true}},
    {Algorithm::cns_fi2ns, "CNS-FI2NS", {true, false, false, true}},
    {Algorithm::css, "CSS", {true, false, false, true}},
    {Algorithm::cme, "CME", {false, true, true, true}},
    {Algorithm::ns_lc, "NS-LC", {true, false, true, false}},
    {Algorithm::ss_lc, "SS-LC", {true, false, true, false}},
    {Algorithm::ga, "GA", {false, false, false, false}},
};

const AlgorithmInfo& info(Algorithm a) {
    for (const auto& row : algorithm_table)
        if (row.algorithm == a) return row;
    throw ContractViolation("unknown algorithm");
}

} // namespace

std::string_view to_string(Algorithm algorithm) { return info(algorithm).name; }

Algorithm algorithm_from_string(std::string_view name) {
    for (const auto& row : algorithm_table)
        if (row.name == name) return row.algorithm;
    throw ConfigError("algorithm", "unknown algorithm '" + std::string(name) +
                                       "' (expected ME, ME-NOV, MESB, CNS-FINS, CNS-FI2NS, CSS, "
                                       "CME, NS-LC, SS-LC or GA)");
}

Components components_of(Algorithm algorithm) { return info(algorithm).components; }

std::vector<ConfigError> validation_errors(const EngineConfig& c, const Domain& domain) {
    std::vector<ConfigError> errors;
    auto fail = [&](const char* field, std::string message) {
        errors.emplace_back(field, std::move(message));
    };
    const auto name = std::string(to_string(c.algorithm));
    const std::size_t dims = domain.descriptor_dims();

    if (c.budget < 1) fail("budget", "must be at least 1");
    if (c.init_count < 1) fail("init_count", "must be at least 1");
    if (c.budget < c.init_count) fail("budget", "must be at least init_count");

    if (map_based(c.algorithm)) {
        if (c.batch_size < 1) fail("batch_size", "must be at least 1");
        if (!c.grid) {
            fail("grid", name + " needs a feature map");
        } else {
            const auto kind = c.grid->kind;
            if (c.algorithm == Algorithm::mesb && kind != PartitionKind::sliding)
                fail("grid.kind", "MESB needs a sliding grid");
            if (c.algorithm != Algorithm::mesb && kind == PartitionKind::sliding)
                fail("grid.kind", name + " needs a uniform or binary grid");
            const auto& res = c.grid->resolution;
            if (!(kind == PartitionKind::binary && res.empty())) {
                if (res.size() != dims)
                    fail("grid.resolution", "expected " + std::to_string(dims) +
                                                " entries, one per descriptor dimension");
                for (auto r : res) {
                    if (r < 1) fail("grid.resolution", "every entry must be at least 1");
                    if (kind == PartitionKind::binary && r != 2)
                        fail("grid.resolution", "binary grids have two bins per dimension");
                }
            }
        }
        if (c.selection_floor <= 0.0 || !std::isfinite(c.selection_floor))
            fail("selection_floor", "must be a positive number");
    } else {
        if (c.grid) fail("grid", name + " has no feature map; remove the grid");
        if (c.population_size < 2) fail("population_size", "must be at least 2");
        if (!c.reference_resolution.empty()) {
            if (c.reference_resolution.size() != dims)
                fail("reference_resolution", "expected " + std::to_string(dims) + " entries");
            for (auto r : c.reference_resolution)
                if (r < 1) fail("reference_resolution", "every entry must be at least 1");
        }
    }

    if (c.novelty_k < 1) fail("novelty_k", "must be at least 1");
    if (!(c.novelty_threshold >= 0.0) || !std::isfinite(c.novelty_threshold))
        fail("novelty_threshold", "must be a finite value >= 0");
    if (c.surprise_centroids < 1) fail("surprise_centroids", "must be at least 1");
    if (c.kmeans_iterations < 1) fail("kmeans_iterations", "must be at least 1");
    if (c.sliding_interval < 1) fail("sliding_interval", "must be at least 1");
    if (c.competition_k < 1) fail("competition_k", "must be at least 1");
    if (c.cell_capacity < 1) fail("cell_capacity", "must be at least 1");
    if (!(c.crossover_rate >= 0.0 && c.crossover_rate <= 1.0))
        fail("crossover_rate", "must lie in [0, 1]");
    if (c.target_coverage && !(*c.target_coverage > 0.0 && *c.target_coverage <= 1.0))
        fail("target_coverage", "must lie in (0, 1]");
    return errors;
}

void validate(const EngineConfig& config, const Domain& domain) {
    auto errors = validation_errors(config, domain);
    if (!errors.empty()) throw errors.front();
}

} // namespace illuminate
