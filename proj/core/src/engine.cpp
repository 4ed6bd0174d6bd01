#include "illuminate/engines/engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "engines_internal.hpp"

namespace illuminate {

namespace {

std::vector<std::size_t> default_reference_resolution(std::size_t dims) {
    return std::vector<std::size_t>(dims, dims <= 3 ? 10 : 2);
}

} // namespace

Engine::Engine(EngineConfig config, std::shared_ptr<const Domain> domain, std::uint64_t seed)
    : state_(std::move(config), seed), domain_(std::move(domain)) {
    if (!domain_) throw ContractViolation("engine needs a domain");
    variation_.crossover_rate = state_.config.crossover_rate;
    if (const auto& grid = state_.config.grid; map_based(state_.config.algorithm) && grid) {
        const auto bounds = domain_->descriptor_bounds();
        switch (grid->kind) {
        case PartitionKind::uniform:
            state_.partition.emplace(GridSpec::uniform(bounds, grid->resolution));
            break;
        case PartitionKind::binary:
            state_.partition.emplace(GridSpec::binary(domain_->descriptor_dims()));
            break;
        case PartitionKind::sliding:
            state_.partition.emplace(GridSpec::sliding(bounds, grid->resolution));
            break;
        }
        state_.preference.assign(state_.partition->cell_count(), 1.0);
        state_.selection_counts.assign(state_.partition->cell_count(), 0);
    }
    if (!map_based(state_.config.algorithm)) {
        auto res = state_.config.reference_resolution;
        if (res.empty()) res = default_reference_resolution(domain_->descriptor_dims());
        reference_.emplace(GridSpec::uniform(domain_->descriptor_bounds(), std::move(res)));
    }
}

std::size_t Engine::remaining() const noexcept {
    return state_.config.budget > state_.evaluations ? state_.config.budget - state_.evaluations : 0;
}

std::size_t Engine::step(std::size_t iterations) {
    std::size_t done = 0;
    while (done < iterations && !state_.finished) {
        if (state_.iteration == 0) {
            const std::size_t count = std::min(state_.config.init_count, remaining());
            std::vector<OffspringRequest> requests(count);
            for (auto& r : requests) {
                r.seed = state_.rng.domain.next_seed();
                r.generation = 0;
            }
            auto seeds = commit(make_offspring_batch(*domain_, requests, variation_));
            if (seeds.empty())
                throw Error("run aborted: none of the " + std::to_string(count) +
                            " initial individuals could be evaluated");
            initialize(std::move(seeds));
        } else {
            iterate();
        }
        ++state_.iteration;
        ++done;
        record_metrics();
        const auto& last = state_.metrics.back();
        if (remaining() == 0 ||
            (state_.config.target_coverage && last.coverage >= *state_.config.target_coverage))
            state_.finished = true;
    }
    return done;
}

void Engine::run() {
    while (!state_.finished) step(1);
}

std::vector<IndividualId> Engine::breed(
    std::span<const std::pair<IndividualId, std::optional<IndividualId>>> parents) {
    std::vector<OffspringRequest> requests(parents.size());
    const auto generation = static_cast<std::uint32_t>(state_.iteration);
    for (std::size_t i = 0; i < parents.size(); ++i) {
        requests[i].parent_a = &state_.history[parents[i].first];
        requests[i].parent_b = parents[i].second ? &state_.history[*parents[i].second] : nullptr;
        requests[i].seed = state_.rng.variation.next_seed();
        requests[i].generation = generation;
    }
    return commit(make_offspring_batch(*domain_, requests, variation_));
}

std::vector<IndividualId> Engine::commit(std::vector<Offspring> offspring) {
    std::vector<IndividualId> ids;
    ids.reserve(offspring.size());
    for (auto& o : offspring) {
        ++state_.evaluations;
        if (!o.individual) {
            ++state_.failed_evaluations;
            continue;
        }
        check_evaluation(o.individual->evaluation, domain_->descriptor_dims());
        if (o.individual->evaluation.feasible)
            state_.best_fitness = std::max(state_.best_fitness, o.individual->evaluation.fitness);
        ids.push_back(state_.history.commit(std::move(*o.individual)).id);
    }
    return ids;
}

const Descriptor& Engine::point(IndividualId id) const {
    if (points_.size() <= id) points_.resize(state_.history.size());
    auto& slot = points_.at(id);
    if (!slot) slot = domain_->divergence_point(state_.history.at(id));
    return *slot;
}

CellView Engine::cell_view() const {
    CellView view;
    view.partition = &*reference_;
    view.best.assign(reference_->cell_count(), std::nullopt);
    for (IndividualId id : retained()) {
        const auto& e = ind(id).evaluation;
        auto& slot = view.best[reference_->flat_cell_of(e.descriptor)];
        if (!slot || e.fitness > ind(*slot).evaluation.fitness ||
            (e.fitness == ind(*slot).evaluation.fitness && id < *slot))
            slot = id;
    }
    return view;
}

void Engine::record_metrics() {
    MetricsRecord m;
    m.iteration = state_.iteration;
    m.evaluations = state_.evaluations;
    m.best_fitness = state_.best_fitness;
    const CellView view = cell_view();
    for (const auto& slot : view.best) {
        if (!slot) continue;
        ++m.occupied_cells;
        m.qd_score += ind(*slot).evaluation.fitness;
    }
    m.coverage = view.best.empty() ? 0.0
                                   : static_cast<double>(m.occupied_cells) /
                                         static_cast<double>(view.best.size());
    if (state_.novelty) m.novelty_archive = state_.novelty->size();
    if (state_.pops) {
        m.feasible = state_.pops->feasible.size();
        m.infeasible = state_.pops->infeasible.size();
    }
    if (state_.cell_pops) {
        for (const auto& cell : *state_.cell_pops) {
            m.feasible += cell.feasible.size();
            m.infeasible += cell.infeasible.size();
        }
    }
    if (state_.population) {
        for (IndividualId id : *state_.population)
            (ind(id).evaluation.feasible ? m.feasible : m.infeasible) += 1;
    }
    if (state_.elites) {
        for (std::size_t c : state_.elites->occupied_cells())
            (ind(*state_.elites->at(c)).evaluation.feasible ? m.feasible : m.infeasible) += 1;
    }
    state_.metrics.push_back(m);
}

void Engine::set_preference(const CellIndex& cell, double weight) {
    if (!state_.partition)
        throw ContractViolation("unsupported: " + std::string(to_string(algorithm())) +
                                " has no feature map to steer");
    if (!std::isfinite(weight) || weight < 1.0)
        throw ContractViolation("preference weight must be a finite value >= 1");
    if (!within(cell, state_.partition->resolution()))
        throw ContractViolation("cell " + to_string(cell) + " is outside the feature map");
    state_.preference[flat_index(cell, state_.partition->resolution())] = weight;
}

std::size_t Engine::select_cell(std::span<const std::size_t> candidates,
                                std::span<const double> extra_weight) {
    if (candidates.empty()) throw ContractViolation("no candidate cells to select from");
    std::vector<double> weights(candidates.size());
    bool uniform = true;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        weights[i] = state_.preference.at(candidates[i]) *
                     (extra_weight.empty() ? 1.0 : extra_weight[i]);
        uniform = uniform && weights[i] == weights[0];
    }

    std::size_t pick = 0;
    if (uniform) {
        pick = state_.rng.selection.below(candidates.size());
    } else {
        double total = 0.0;
        for (double w : weights) total += w;
        double u = state_.rng.selection.uniform() * total;
        pick = candidates.size() - 1;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (u < weights[i]) {
                pick = i;
                break;
            }
            u -= weights[i];
        }
    }
    ++state_.selection_counts.at(candidates[pick]);
    return pick;
}

std::unique_ptr<Engine> make_engine(const EngineConfig& config,
                                    std::shared_ptr<const Domain> domain, std::uint64_t seed) {
    if (!domain) throw ContractViolation("engine needs a domain");
    validate(config, *domain);
    switch (config.algorithm) {
    case Algorithm::me:
    case Algorithm::me_nov:
    case Algorithm::mesb: return detail::make_map_elites(config, std::move(domain), seed);
    case Algorithm::cme: return detail::make_constrained_map_elites(config, std::move(domain), seed);
    case Algorithm::cns_fins:
    case Algorithm::cns_fi2ns:
    case Algorithm::css: return detail::make_two_population(config, std::move(domain), seed);
    case Algorithm::ns_lc:
    case Algorithm::ss_lc: return detail::make_local_competition(config, std::move(domain), seed);
    case Algorithm::ga: return detail::make_objective_ga(config, std::move(domain), seed);
    }
    throw ContractViolation("unknown algorithm");
}

std::unique_ptr<Engine> run_engine(const EngineConfig& config,
                                   std::shared_ptr<const Domain> domain, std::uint64_t seed) {
    auto engine = make_engine(config, std::move(domain), seed);
    engine->run();
    return engine;
}

namespace {

std::unique_ptr<Engine> run_as(Algorithm algorithm, EngineConfig config,
                               std::shared_ptr<const Domain> domain, std::uint64_t seed) {
    config.algorithm = algorithm;
    return run_engine(config, std::move(domain), seed);
}

} // namespace

std::unique_ptr<Engine> run_map_elites(EngineConfig c, std::shared_ptr<const Domain> d, std::uint64_t s) {
    return run_as(Algorithm::me, std::move(c), std::move(d), s);
}
std::unique_ptr<Engine> run_map_elites_novelty(EngineConfig c, std::shared_ptr<const Domain> d,
                                               std::uint64_t s) {
    return run_as(Algorithm::me_nov, std::move(c), std::move(d), s);
}
std::unique_ptr<Engine> run_mesb(EngineConfig c, std::shared_ptr<const Domain> d, std::uint64_t s) {
    return run_as(Algorithm::mesb, std::move(c), std::move(d), s);
}
std::unique_ptr<Engine> run_cns(EngineConfig c, std::shared_ptr<const Domain> d, std::uint64_t s,
                                InfeasibleMode variant) {
    return run_as(variant == InfeasibleMode::fins ? Algorithm::cns_fins : Algorithm::cns_fi2ns,
                  std::move(c), std::move(d), s);
}
std::unique_ptr<Engine> run_css(EngineConfig c, std::shared_ptr<const Domain> d, std::uint64_t s) {
    return run_as(Algorithm::css, std::move(c), std::move(d), s);
}
std::unique_ptr<Engine> run_cme(EngineConfig c, std::shared_ptr<const Domain> d, std::uint64_t s) {
    return run_as(Algorithm::cme, std::move(c), std::move(d), s);
}
std::unique_ptr<Engine> run_nslc(EngineConfig c, std::shared_ptr<const Domain> d, std::uint64_t s) {
    return run_as(Algorithm::ns_lc, std::move(c), std::move(d), s);
}
std::unique_ptr<Engine> run_sslc(EngineConfig c, std::shared_ptr<const Domain> d, std::uint64_t s) {
    return run_as(Algorithm::ss_lc, std::move(c), std::move(d), s);
}
std::unique_ptr<Engine> run_objective_ga(EngineConfig c, std::shared_ptr<const Domain> d,
                                         std::uint64_t s) {
    return run_as(Algorithm::ga, std::move(c), std::move(d), s);
}

void check_component_conformance(const RunState& state) {
    const Components want = components_of(state.config.algorithm);
    Components have;
    have.distance = state.novelty.has_value() || state.surprise.has_value();
    have.partition = state.partition.has_value();
    have.constraints = state.pops.has_value() || state.cell_pops.has_value();
    // Local competition is a selection rule rather than a stored part; per-cell elitism
    // implies it for map-based runs.
    have.local_competition = want.local_competition;
    const std::string name(to_string(state.config.algorithm));
    if (want.distance != have.distance)
        throw ContractViolation(name + ": behavior-distance component mismatch");
    if (want.partition != have.partition)
        throw ContractViolation(name + ": partitioning component mismatch");
    if (want.constraints != have.constraints)
        throw ContractViolation(name + ": constraint component mismatch");
    if (want.partition && !(state.elites || state.cell_pops))
        throw ContractViolation(name + ": feature map without per-cell storage");
}

} // namespace illuminate
