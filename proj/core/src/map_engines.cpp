// ME, ME-NOV, MESB and CME: steady-state loops over a feature map.

#include <algorithm>

#include "engines_internal.hpp"

namespace illuminate::detail {

namespace {

class MapElites final : public Engine {
public:
    MapElites(const EngineConfig& config, std::shared_ptr<const Domain> domain, std::uint64_t seed)
        : Engine(config, std::move(domain), seed) {
        state_.elites.emplace(state_.partition->cell_count());
        if (algorithm() == Algorithm::me_nov) state_.novelty.emplace(config.novelty_threshold);
    }

    std::vector<IndividualId> retained() const override {
        std::vector<IndividualId> out;
        for (auto c : state_.elites->occupied_cells()) out.push_back(*state_.elites->at(c));
        return out;
    }

    CellView cell_view() const override {
        CellView view;
        view.partition = &*state_.partition;
        view.best.resize(state_.elites->cell_count());
        for (std::size_t c = 0; c < view.best.size(); ++c) view.best[c] = state_.elites->at(c);
        return view;
    }

protected:
    void initialize(std::vector<IndividualId> seeds) override { place(seeds); }

    void iterate() override {
        std::size_t n = std::min(state_.config.batch_size, remaining());
        if (algorithm() == Algorithm::mesb) {
            // Cut the batch so recomputation lands exactly on multiples of the interval.
            const std::size_t lambda = state_.config.sliding_interval;
            n = std::min(n, lambda - state_.evaluations % lambda);
        }

        const auto cells = state_.elites->occupied_cells();
        std::vector<double> weights;
        if (algorithm() == Algorithm::me_nov) weights = novelty_weights(cells);

        std::vector<ParentPair> parents(n);
        for (auto& p : parents) {
            p.first = *state_.elites->at(cells[select_cell(cells, weights)]);
            if (wants_crossover())
                p.second = *state_.elites->at(cells[select_cell(cells, weights)]);
        }
        place(breed(parents));
    }

private:
    void place(const std::vector<IndividualId>& ids) {
        for (IndividualId id : ids) {
            const Individual& child = ind(id);
            state_.elites->consider(state_.partition->flat_cell_of(child.evaluation.descriptor),
                                    child, state_.history);
            if (state_.novelty) state_.novelty->add(point(id), child.evaluation.fitness, id);
            if (algorithm() == Algorithm::mesb)
                state_.sliding_buffer.push_back(child.evaluation.descriptor);
        }
        if (algorithm() == Algorithm::mesb) maybe_recompute();
    }

    // Each elite's novelty against the archive, which already holds every individual the
    // run has produced (elites included), floored so none drops out of selection.
    std::vector<double> novelty_weights(const std::vector<std::size_t>& cells) const {
        std::vector<double> w(cells.size());
        const Metric metric = domain().divergence_metric();
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const IndividualId id = *state_.elites->at(cells[i]);
            double score = 0.0;
            if (state_.novelty->size() > 1)
                score = novelty_score(point(id), {}, *state_.novelty, state_.config.novelty_k,
                                      metric, SelfReference::exclude_one);
            w[i] = std::max(score, state_.config.selection_floor);
        }
        return w;
    }

    void maybe_recompute() {
        const std::size_t lambda = state_.config.sliding_interval;
        const std::size_t epoch = state_.evaluations / lambda;
        if (epoch <= state_.boundary_epoch || remaining() == 0) return;
        state_.boundary_epoch = epoch;
        state_.partition->set_boundaries(
            recompute_boundaries(state_.sliding_buffer, state_.partition->spec()));
        auto ids = state_.elites->drain();
        std::sort(ids.begin(), ids.end());
        for (IndividualId id : ids)
            state_.elites->consider(state_.partition->flat_cell_of(ind(id).evaluation.descriptor),
                                    ind(id), state_.history);
    }
};

class ConstrainedMapElites final : public Engine {
public:
    ConstrainedMapElites(const EngineConfig& config, std::shared_ptr<const Domain> domain,
                         std::uint64_t seed)
        : Engine(config, std::move(domain), seed) {
        TwoPopulations empty;
        empty.feasible_capacity = config.cell_capacity;
        empty.infeasible_capacity = config.cell_capacity;
        state_.cell_pops.emplace(state_.partition->cell_count(), empty);
    }

    std::vector<IndividualId> retained() const override {
        std::vector<IndividualId> out;
        for (const auto& cell : *state_.cell_pops) {
            out.insert(out.end(), cell.feasible.begin(), cell.feasible.end());
            out.insert(out.end(), cell.infeasible.begin(), cell.infeasible.end());
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    // A cell counts as covered once it holds a feasible member; its best one is the elite.
    CellView cell_view() const override {
        CellView view;
        view.partition = &*state_.partition;
        view.best.resize(state_.cell_pops->size());
        for (std::size_t c = 0; c < view.best.size(); ++c) {
            for (IndividualId id : (*state_.cell_pops)[c].feasible) {
                auto& slot = view.best[c];
                if (!slot || ind(id).evaluation.fitness > ind(*slot).evaluation.fitness) slot = id;
            }
        }
        return view;
    }

protected:
    void initialize(std::vector<IndividualId> seeds) override { place(seeds); }

    void iterate() override {
        const std::size_t n = std::min(state_.config.batch_size, remaining());
        // Candidates are (cell, population) pairs; a cell with both populations appears twice.
        std::vector<std::size_t> cells;
        std::vector<const std::vector<IndividualId>*> members;
        for (std::size_t c = 0; c < state_.cell_pops->size(); ++c) {
            const auto& pops = (*state_.cell_pops)[c];
            if (!pops.feasible.empty()) {
                cells.push_back(c);
                members.push_back(&pops.feasible);
            }
            if (!pops.infeasible.empty()) {
                cells.push_back(c);
                members.push_back(&pops.infeasible);
            }
        }
        auto draw = [&] {
            const auto& group = *members[select_cell(cells)];
            return group[state_.rng.selection.below(group.size())];
        };

        std::vector<ParentPair> parents(n);
        for (auto& p : parents) {
            p.first = draw();
            if (wants_crossover()) p.second = draw();
        }
        place(breed(parents));
    }

private:
    void place(const std::vector<IndividualId>& ids) {
        const Objective fitness = [](const Individual& i) { return i.evaluation.fitness; };
        const Objective closeness = [](const Individual& i) { return infeasible_objective(i); };
        for (IndividualId id : ids) {
            const Individual& child = ind(id);
            auto& pops = (*state_.cell_pops)[state_.partition->flat_cell_of(child.evaluation.descriptor)];
            route_offspring(child, pops, state_.history, fitness, closeness);
        }
    }
};

} // namespace

std::unique_ptr<Engine> make_map_elites(const EngineConfig& config,
                                        std::shared_ptr<const Domain> domain, std::uint64_t seed) {
    return std::make_unique<MapElites>(config, std::move(domain), seed);
}

std::unique_ptr<Engine> make_constrained_map_elites(const EngineConfig& config,
                                                    std::shared_ptr<const Domain> domain,
                                                    std::uint64_t seed) {
    return std::make_unique<ConstrainedMapElites>(config, std::move(domain), seed);
}

} // namespace illuminate::detail
