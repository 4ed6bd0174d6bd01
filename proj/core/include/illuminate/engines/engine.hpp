#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "illuminate/core/domain.hpp"
#include "illuminate/core/history.hpp"
#include "illuminate/core/rng.hpp"
#include "illuminate/core/variation.hpp"
#include "illuminate/divergence/novelty.hpp"
#include "illuminate/divergence/surprise.hpp"
#include "illuminate/engines/config.hpp"
#include "illuminate/partition/grid.hpp"
#include "illuminate/quality/competition.hpp"
#include "illuminate/quality/two_population.hpp"

namespace illuminate {

/// One row of the metrics log, written after every iteration.
struct MetricsRecord {
    std::size_t iteration = 0;
    std::size_t evaluations = 0;
    double coverage = 0.0;
    double qd_score = 0.0;
    /// Highest fitness of any feasible individual evaluated so far.
    double best_fitness = 0.0;
    std::size_t occupied_cells = 0;
    std::size_t novelty_archive = 0;
    std::size_t feasible = 0;
    std::size_t infeasible = 0;

    friend bool operator==(const MetricsRecord&, const MetricsRecord&) = default;
};

/// How a surprise-driven generation selected its feasible parents and survivors.
enum class SelectionMode { uniform, surprise };

/// Everything a run owns. Which optional parts exist follows the algorithm's components.
struct RunState {
    explicit RunState(EngineConfig cfg, std::uint64_t master_seed)
        : config(std::move(cfg)), seed(master_seed), rng(master_seed) {}

    EngineConfig config;
    std::uint64_t seed;
    RngStreams rng;

    /// Completed iterations; initialization is iteration 1.
    std::size_t iteration = 0;
    std::size_t evaluations = 0;
    std::size_t failed_evaluations = 0;
    double best_fitness = 0.0;
    bool finished = false;

    RunHistory history;

    std::optional<Partition> partition;
    std::optional<EliteMap> elites;                        // ME, ME-NOV, MESB
    std::optional<std::vector<TwoPopulations>> cell_pops;  // CME, one per cell
    std::optional<TwoPopulations> pops;                    // CNS, CSS
    std::optional<std::vector<IndividualId>> population;   // NS-LC, SS-LC, GA
    std::optional<NoveltyArchive> novelty;
    std::optional<SurpriseModel> surprise;

    /// MESB: descriptors of every evaluated individual, and completed recomputations.
    std::vector<Descriptor> sliding_buffer;
    std::size_t boundary_epoch = 0;

    /// Map-based engines: per-cell steering weights and parent-selection counts.
    std::vector<double> preference;
    std::vector<std::uint64_t> selection_counts;

    /// CSS / SS-LC: selection mode of each generation (initialization excluded).
    std::vector<SelectionMode> selection_log;

    std::vector<MetricsRecord> metrics;
};

/// Per-cell best individual on the grid used for reporting: the engine's own feature map
/// for map-based runs, a fixed reference grid for the others.
struct CellView {
    const Partition* partition = nullptr;
    std::vector<std::optional<IndividualId>> best;
};

/// Common driver for all algorithms: budget accounting, initialization, metrics and the
/// step contract used by the runner and the steering service.
class Engine {
public:
    Engine(EngineConfig config, std::shared_ptr<const Domain> domain, std::uint64_t seed);
    virtual ~Engine() = default;

    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    /// Runs up to `iterations` more iterations (the first one is initialization).
    /// Returns how many were run; fewer when the stopping rule fires.
    std::size_t step(std::size_t iterations);
    /// Steps until the budget is spent or target coverage reached.
    void run();

    bool finished() const noexcept { return state_.finished; }
    const RunState& state() const noexcept { return state_; }
    const Domain& domain() const noexcept { return *domain_; }
    std::shared_ptr<const Domain> domain_ptr() const noexcept { return domain_; }
    Algorithm algorithm() const noexcept { return state_.config.algorithm; }

    /// Individuals the run currently reports as its result.
    virtual std::vector<IndividualId> retained() const = 0;
    virtual CellView cell_view() const;

    /// Steering weight (>= 1) for a cell of the feature map. Throws ContractViolation for
    /// non-map engines, invalid cells or weights below 1.
    void set_preference(const CellIndex& cell, double weight);

    /// Draws one parent cell among `candidates` (flat indices) with probability
    /// proportional to preference * extra weight, counting the selection event.
    std::size_t select_cell(std::span<const std::size_t> candidates,
                            std::span<const double> extra_weight = {});

    /// Divergence-space point of an individual (cached).
    const Descriptor& point(IndividualId id) const;

protected:
    virtual void initialize(std::vector<IndividualId> seeds) = 0;
    virtual void iterate() = 0;

    /// Evaluations left before the budget is exhausted.
    std::size_t remaining() const noexcept;

    /// Requests offspring of the given parent pairs (second may be null), evaluates them
    /// and commits survivors to the history. Returns the new ids in request order.
    std::vector<IndividualId> breed(std::span<const std::pair<IndividualId, std::optional<IndividualId>>> parents);

    /// Whether parent selection should also draw a crossover partner.
    bool wants_crossover() const noexcept { return state_.config.crossover_rate > 0.0; }

    const Individual& ind(IndividualId id) const { return state_.history[id]; }

    RunState state_;

private:
    std::vector<IndividualId> commit(std::vector<Offspring> offspring);
    void record_metrics();

    std::shared_ptr<const Domain> domain_;
    VariationConfig variation_;
    mutable std::vector<std::optional<Descriptor>> points_;
    std::optional<Partition> reference_;
};

/// Builds the engine for `config.algorithm` after validating the config against the domain.
std::unique_ptr<Engine> make_engine(const EngineConfig& config,
                                    std::shared_ptr<const Domain> domain, std::uint64_t seed);

/// Builds and runs to completion.
std::unique_ptr<Engine> run_engine(const EngineConfig& config,
                                   std::shared_ptr<const Domain> domain, std::uint64_t seed);

std::unique_ptr<Engine> run_map_elites(EngineConfig config, std::shared_ptr<const Domain> domain,
                                       std::uint64_t seed);
std::unique_ptr<Engine> run_map_elites_novelty(EngineConfig config,
                                               std::shared_ptr<const Domain> domain,
                                               std::uint64_t seed);
std::unique_ptr<Engine> run_mesb(EngineConfig config, std::shared_ptr<const Domain> domain,
                                 std::uint64_t seed);
std::unique_ptr<Engine> run_cns(EngineConfig config, std::shared_ptr<const Domain> domain,
                                std::uint64_t seed, InfeasibleMode variant);
std::unique_ptr<Engine> run_css(EngineConfig config, std::shared_ptr<const Domain> domain,
                                std::uint64_t seed);
std::unique_ptr<Engine> run_cme(EngineConfig config, std::shared_ptr<const Domain> domain,
                                std::uint64_t seed);
std::unique_ptr<Engine> run_nslc(EngineConfig config, std::shared_ptr<const Domain> domain,
                                 std::uint64_t seed);
std::unique_ptr<Engine> run_sslc(EngineConfig config, std::shared_ptr<const Domain> domain,
                                 std::uint64_t seed);
std::unique_ptr<Engine> run_objective_ga(EngineConfig config,
                                         std::shared_ptr<const Domain> domain, std::uint64_t seed);

/// Throws ContractViolation when the state's parts disagree with the algorithm's
/// components (for example a grid in a constrained novelty search run).
void check_component_conformance(const RunState& state);

} // namespace illuminate
