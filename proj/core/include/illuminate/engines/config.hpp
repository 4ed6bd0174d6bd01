#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "illuminate/core/domain.hpp"
#include "illuminate/partition/grid.hpp"

namespace illuminate {

enum class Algorithm {
    me,         // MAP-Elites
    me_nov,     // MAP-Elites with novelty-proportional selection
    mesb,       // MAP-Elites with sliding boundaries
    cns_fins,   // constrained novelty search, infeasible pop minimizes infeasibility
    cns_fi2ns,  // constrained novelty search, infeasible pop maximizes novelty
    css,        // constrained surprise search
    cme,        // constrained MAP-Elites
    ns_lc,      // novelty search with local competition
    ss_lc,      // surprise search with local competition
    ga,         // objective-only generational GA (comparison baseline, not QD)
};

inline constexpr Algorithm all_algorithms[] = {
    Algorithm::me,  Algorithm::me_nov, Algorithm::mesb,  Algorithm::cns_fins, Algorithm::cns_fi2ns,
    Algorithm::css, Algorithm::cme,    Algorithm::ns_lc, Algorithm::ss_lc,    Algorithm::ga,
};

/// Canonical names: ME, ME-NOV, MESB, CNS-FINS, CNS-FI2NS, CSS, CME, NS-LC, SS-LC, GA.
std::string_view to_string(Algorithm algorithm);
/// Throws ConfigError("algorithm", ...) on unknown names.
Algorithm algorithm_from_string(std::string_view name);

/// Which QD building blocks an algorithm combines.
struct Components {
    bool distance = false;           // novelty / surprise scoring
    bool partition = false;          // feature-map grid
    bool local_competition = false;  // per-cell elitism or k-NN competition
    bool constraints = false;        // feasible / infeasible split

    friend bool operator==(const Components&, const Components&) = default;
};

Components components_of(Algorithm algorithm);

/// Map-based engines keep a feature map and support steering preferences.
inline bool map_based(Algorithm a) { return components_of(a).partition; }

struct GridConfig {
    PartitionKind kind = PartitionKind::uniform;
    std::vector<std::size_t> resolution;
};

/// Run parameters. Fields not used by the chosen algorithm are ignored.
struct EngineConfig {
    Algorithm algorithm = Algorithm::me;
    /// Maximum number of evaluations, initialization included.
    std::size_t budget = 1000;
    /// Random individuals evaluated before the first iteration.
    std::size_t init_count = 100;
    /// Offspring per iteration of map-based engines.
    std::size_t batch_size = 50;
    /// Population size (and offspring per generation) of population-based engines.
    std::size_t population_size = 50;
    /// Required by map-based engines, rejected by the others.
    std::optional<GridConfig> grid;
    /// Grid used to project distance-based runs for reporting. Empty: 10 bins per dimension.
    std::vector<std::size_t> reference_resolution;

    std::size_t novelty_k = 15;
    double novelty_threshold = 0.05;
    std::size_t surprise_centroids = 10;
    std::size_t kmeans_iterations = 100;
    /// MESB: evaluations between boundary recomputations.
    std::size_t sliding_interval = 100;
    /// NS-LC / SS-LC neighborhood size.
    std::size_t competition_k = 15;
    /// CME per-cell capacity of each population.
    std::size_t cell_capacity = 10;
    double crossover_rate = 0.0;
    /// Stop once the (projected) coverage reaches this fraction.
    std::optional<double> target_coverage;
    /// Whether infeasible offspring may enter the novelty archive.
    bool archive_infeasible = false;
    /// ME-NOV: floor on selection weight so zero-novelty elites stay selectable.
    double selection_floor = 1e-6;
};

/// Throws ConfigError naming the first offending field. Checks parameter ranges, the
/// component requirements of the algorithm and agreement with the domain.
void validate(const EngineConfig& config, const Domain& domain);

/// Every problem found, one "field: message" entry each; empty when valid.
std::vector<ConfigError> validation_errors(const EngineConfig& config, const Domain& domain);

} // namespace illuminate
