// Generational population engines: CNS-FINS, CNS-FI2NS, CSS, NS-LC, SS-LC and the
// objective-only GA. Each generation breeds as many offspring as the population holds
// and keeps the best of parents plus offspring.

#include <algorithm>
#include <cmath>
#include <map>

#include "engines_internal.hpp"
#include "illuminate/engines/pareto.hpp"

namespace illuminate::detail {

namespace {

std::vector<IndividualId> sorted_union(std::vector<IndividualId> a,
                                       std::span<const IndividualId> b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

// Binary tournament; the first contestant wins ties.
std::size_t tournament(std::span<const double> score, Rng& rng) {
    const std::size_t a = rng.below(score.size());
    const std::size_t b = rng.below(score.size());
    return score[b] > score[a] ? b : a;
}

class TwoPopulation final : public Engine {
public:
    TwoPopulation(const EngineConfig& config, std::shared_ptr<const Domain> domain,
                  std::uint64_t seed)
        : Engine(config, std::move(domain), seed),
          mode_(config.algorithm == Algorithm::cns_fi2ns ? InfeasibleMode::fi2ns
                                                         : InfeasibleMode::fins) {
        TwoPopulations pops;
        pops.feasible_capacity = config.population_size;
        pops.infeasible_capacity = config.population_size;
        state_.pops.emplace(std::move(pops));
        if (surprise_driven())
            state_.surprise.emplace();
        else
            state_.novelty.emplace(config.novelty_threshold);
    }

    std::vector<IndividualId> retained() const override {
        std::vector<IndividualId> out = state_.pops->feasible;
        if (state_.novelty)
            for (IndividualId id : state_.novelty->ids())
                if (ind(id).evaluation.feasible) out.push_back(id);
        return sorted_union(std::move(out), {});
    }

protected:
    void initialize(std::vector<IndividualId> seeds) override {
        survive(seeds);
        summarize();
    }

    void iterate() override {
        const auto feasible = state_.pops->feasible;
        const auto infeasible = state_.pops->infeasible;
        const std::size_t total = std::min(state_.config.population_size, remaining());
        // Offspring are split in proportion to population sizes; an empty population
        // leaves all of them to the other one.
        std::size_t from_feasible = 0;
        if (infeasible.empty())
            from_feasible = total;
        else if (!feasible.empty())
            from_feasible = static_cast<std::size_t>(std::llround(
                static_cast<double>(total * feasible.size()) /
                static_cast<double>(feasible.size() + infeasible.size())));

        const bool uniform = surprise_driven() && !state_.surprise->ready();
        if (surprise_driven())
            state_.selection_log.push_back(uniform ? SelectionMode::uniform
                                                   : SelectionMode::surprise);

        auto& rng = state_.rng.selection;
        std::vector<ParentPair> parents;
        parents.reserve(total);
        if (from_feasible > 0) {
            const auto score = feasible_scores(feasible);
            auto pick = [&] {
                return feasible[uniform ? rng.below(feasible.size()) : tournament(score, rng)];
            };
            for (std::size_t i = 0; i < from_feasible; ++i) {
                ParentPair p{pick(), std::nullopt};
                if (wants_crossover()) p.second = pick();
                parents.push_back(p);
            }
        }
        if (from_feasible < total) {
            const auto score = infeasible_scores(infeasible);
            for (std::size_t i = from_feasible; i < total; ++i) {
                ParentPair p{infeasible[tournament(score, rng)], std::nullopt};
                if (wants_crossover()) p.second = infeasible[tournament(score, rng)];
                parents.push_back(p);
            }
        }

        survive(breed(parents));
        summarize();
    }

private:
    bool surprise_driven() const { return algorithm() == Algorithm::css; }

    std::vector<Descriptor> points_of(std::span<const IndividualId> ids) const {
        std::vector<Descriptor> out;
        out.reserve(ids.size());
        for (IndividualId id : ids) out.push_back(point(id));
        return out;
    }

    // Novelty among the population and archive (CNS), surprise against the prediction
    // (CSS), or random keys while CSS has no prediction yet.
    std::vector<double> feasible_scores(std::span<const IndividualId> ids) {
        std::vector<double> score(ids.size(), 0.0);
        if (surprise_driven()) {
            if (!state_.surprise->ready()) {
                for (auto& s : score) s = state_.rng.selection.uniform();
                return score;
            }
            const auto predicted = surprise_predict(*state_.surprise);
            for (std::size_t i = 0; i < ids.size(); ++i)
                score[i] = surprise_score(ind(ids[i]).evaluation.descriptor, predicted);
            return score;
        }
        const auto points = points_of(ids);
        if (points.size() + state_.novelty->size() <= 1) return score;
        for (std::size_t i = 0; i < ids.size(); ++i)
            score[i] = novelty_score(points[i], points, *state_.novelty, state_.config.novelty_k,
                                     domain().divergence_metric());
        return score;
    }

    std::vector<double> infeasible_scores(std::span<const IndividualId> ids) const {
        std::vector<double> score(ids.size());
        if (mode_ == InfeasibleMode::fins) {
            for (std::size_t i = 0; i < ids.size(); ++i) score[i] = infeasible_objective(ind(ids[i]));
            return score;
        }
        const auto points = points_of(ids);
        for (std::size_t i = 0; i < ids.size(); ++i)
            score[i] = infeasible_novelty(ind(ids[i]), points[i], points, state_.config.novelty_k,
                                          domain().divergence_metric());
        return score;
    }

    // (mu + lambda) survival: arrivals are routed one by one against objective values frozen
    // over parents plus arrivals, then novel arrivals enter the archive.
    void survive(const std::vector<IndividualId>& arrivals) {
        auto& pops = *state_.pops;
        std::vector<IndividualId> feasible = pops.feasible;
        std::vector<IndividualId> infeasible = pops.infeasible;
        for (IndividualId id : arrivals)
            (ind(id).evaluation.feasible ? feasible : infeasible).push_back(id);

        std::map<IndividualId, double> table;
        const auto fscore = feasible_scores(feasible);
        const auto iscore = infeasible_scores(infeasible);
        for (std::size_t i = 0; i < feasible.size(); ++i) table[feasible[i]] = fscore[i];
        for (std::size_t i = 0; i < infeasible.size(); ++i) table[infeasible[i]] = iscore[i];

        std::vector<IndividualId> admitted;
        if (state_.novelty) {
            const auto feasible_points = points_of(feasible);
            const bool any_refs = feasible_points.size() + state_.novelty->size() > 1;
            for (IndividualId id : arrivals) {
                const bool is_feasible = ind(id).evaluation.feasible;
                if (!is_feasible && !state_.config.archive_infeasible) continue;
                double score = 0.0;
                if (is_feasible)
                    score = table.at(id);
                else if (any_refs || !feasible_points.empty())
                    score = novelty_score(point(id), feasible_points, *state_.novelty,
                                          state_.config.novelty_k, domain().divergence_metric(),
                                          SelfReference::none);
                if (score > state_.novelty->threshold()) admitted.push_back(id);
            }
        }

        const Objective frozen = [&](const Individual& i) { return table.at(i.id); };
        for (IndividualId id : arrivals) route_offspring(ind(id), pops, state_.history, frozen, frozen);
        for (IndividualId id : admitted)
            state_.novelty->add(point(id), ind(id).evaluation.fitness, id);
    }

    void summarize() {
        if (!surprise_driven() || state_.pops->feasible.empty()) return;
        std::vector<Descriptor> descriptors;
        for (IndividualId id : state_.pops->feasible)
            descriptors.push_back(ind(id).evaluation.descriptor);
        state_.surprise->push(summarize_generation(descriptors, state_.config.surprise_centroids,
                                                   state_.rng.summary,
                                                   state_.config.kmeans_iterations));
    }

    InfeasibleMode mode_;
};

class LocalCompetition final : public Engine {
public:
    LocalCompetition(const EngineConfig& config, std::shared_ptr<const Domain> domain,
                     std::uint64_t seed)
        : Engine(config, std::move(domain), seed) {
        state_.population.emplace();
        if (surprise_driven())
            state_.surprise.emplace();
        else
            state_.novelty.emplace(config.novelty_threshold);
    }

    std::vector<IndividualId> retained() const override {
        if (!state_.novelty) return *state_.population;
        return sorted_union(*state_.population, state_.novelty->ids());
    }

protected:
    void initialize(std::vector<IndividualId> seeds) override { advance({}, seeds); }

    void iterate() override {
        if (surprise_driven())
            state_.selection_log.push_back(state_.surprise->ready() ? SelectionMode::surprise
                                                                    : SelectionMode::uniform);
        const auto& population = *state_.population;
        const auto sort = pareto_sort(objectives(population));
        const std::size_t total = std::min(state_.config.population_size, remaining());
        std::vector<ParentPair> parents(total);
        for (auto& p : parents) {
            p.first = population[crowded_tournament(sort, state_.rng.selection)];
            if (wants_crossover())
                p.second = population[crowded_tournament(sort, state_.rng.selection)];
        }
        auto arrivals = breed(parents);
        advance(population, arrivals);
    }

private:
    bool surprise_driven() const { return algorithm() == Algorithm::ss_lc; }

    // Survivors of parents plus arrivals by non-dominated sorting and crowding.
    void advance(std::vector<IndividualId> candidates, std::span<const IndividualId> arrivals) {
        const std::size_t parents = candidates.size();
        candidates.insert(candidates.end(), arrivals.begin(), arrivals.end());
        const auto objs = objectives(candidates);

        if (state_.novelty) {
            for (std::size_t i = parents; i < candidates.size(); ++i)
                if (objs[i][0] > state_.novelty->threshold())
                    state_.novelty->add(point(candidates[i]),
                                        ind(candidates[i]).evaluation.fitness, candidates[i]);
        }

        std::vector<IndividualId> next;
        for (std::size_t i : select_survivors(objs, state_.config.population_size))
            next.push_back(candidates[i]);
        std::sort(next.begin(), next.end());
        *state_.population = std::move(next);

        if (surprise_driven()) {
            std::vector<Descriptor> descriptors;
            for (IndividualId id : *state_.population)
                descriptors.push_back(ind(id).evaluation.descriptor);
            state_.surprise->push(summarize_generation(descriptors,
                                                       state_.config.surprise_centroids,
                                                       state_.rng.summary,
                                                       state_.config.kmeans_iterations));
        }
    }

    // (divergence, local competition) per candidate. NS-LC scores both against the
    // candidates plus the novelty archive in divergence space; SS-LC scores surprise
    // against the prediction and competes among the candidates' descriptors.
    std::vector<Objectives> objectives(std::span<const IndividualId> candidates) const {
        std::vector<Objectives> out(candidates.size(), Objectives(2, 0.0));
        std::vector<Descriptor> pool;
        std::vector<double> pool_fitness;
        Metric metric = Metric::euclidean;

        if (surprise_driven()) {
            for (IndividualId id : candidates) {
                pool.push_back(ind(id).evaluation.descriptor);
                pool_fitness.push_back(ind(id).evaluation.fitness);
            }
            if (state_.surprise->ready()) {
                const auto predicted = surprise_predict(*state_.surprise);
                for (std::size_t i = 0; i < candidates.size(); ++i)
                    out[i][0] = surprise_score(pool[i], predicted);
            }
        } else {
            metric = domain().divergence_metric();
            for (IndividualId id : candidates) {
                pool.push_back(point(id));
                pool_fitness.push_back(ind(id).evaluation.fitness);
            }
            const auto ids = state_.novelty->ids();
            const auto entries = state_.novelty->entries();
            const auto fitness = state_.novelty->fitness();
            for (std::size_t j = 0; j < ids.size(); ++j) {
                if (std::find(candidates.begin(), candidates.end(), ids[j]) != candidates.end())
                    continue;
                pool.push_back(entries[j]);
                pool_fitness.push_back(fitness[j]);
            }
            for (std::size_t i = 0; i < candidates.size(); ++i) {
                if (pool.size() <= 1) break;
                std::vector<double> d;
                d.reserve(pool.size() - 1);
                for (std::size_t j = 0; j < pool.size(); ++j)
                    if (j != i) d.push_back(distance(metric, pool[i], pool[j]));
                out[i][0] = mean_of_k_smallest(std::move(d), state_.config.novelty_k);
            }
        }

        std::vector<double> neighbor_fitness;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            neighbor_fitness.clear();
            for (std::size_t j :
                 nearest_neighbors(pool[i], pool, state_.config.competition_k, metric, i))
                neighbor_fitness.push_back(pool_fitness[j]);
            out[i][1] = static_cast<double>(
                local_competition_score(pool_fitness[i], neighbor_fitness));
        }
        return out;
    }
};

class ObjectiveGa final : public Engine {
public:
    ObjectiveGa(const EngineConfig& config, std::shared_ptr<const Domain> domain,
                std::uint64_t seed)
        : Engine(config, std::move(domain), seed) {
        state_.population.emplace();
    }

    std::vector<IndividualId> retained() const override { return *state_.population; }

protected:
    void initialize(std::vector<IndividualId> seeds) override { truncate(std::move(seeds)); }

    void iterate() override {
        const auto& population = *state_.population;
        std::vector<double> fitness;
        for (IndividualId id : population) fitness.push_back(ind(id).evaluation.fitness);
        const std::size_t total = std::min(state_.config.population_size, remaining());
        std::vector<ParentPair> parents(total);
        for (auto& p : parents) {
            p.first = population[tournament(fitness, state_.rng.selection)];
            if (wants_crossover()) p.second = population[tournament(fitness, state_.rng.selection)];
        }
        auto arrivals = breed(parents);
        auto all = population;
        all.insert(all.end(), arrivals.begin(), arrivals.end());
        truncate(std::move(all));
    }

private:
    // Top population_size by fitness; ties go to the older individual.
    void truncate(std::vector<IndividualId> ids) {
        std::sort(ids.begin(), ids.end(), [&](IndividualId a, IndividualId b) {
            const double fa = ind(a).evaluation.fitness, fb = ind(b).evaluation.fitness;
            return fa != fb ? fa > fb : a < b;
        });
        if (ids.size() > state_.config.population_size) ids.resize(state_.config.population_size);
        std::sort(ids.begin(), ids.end());
        *state_.population = std::move(ids);
    }
};

} // namespace

std::unique_ptr<Engine> make_two_population(const EngineConfig& config,
                                            std::shared_ptr<const Domain> domain,
                                            std::uint64_t seed) {
    return std::make_unique<TwoPopulation>(config, std::move(domain), seed);
}

std::unique_ptr<Engine> make_local_competition(const EngineConfig& config,
                                               std::shared_ptr<const Domain> domain,
                                               std::uint64_t seed) {
    return std::make_unique<LocalCompetition>(config, std::move(domain), seed);
}

std::unique_ptr<Engine> make_objective_ga(const EngineConfig& config,
                                          std::shared_ptr<const Domain> domain,
                                          std::uint64_t seed) {
    return std::make_unique<ObjectiveGa>(config, std::move(domain), seed);
}

} // namespace illuminate::detail
