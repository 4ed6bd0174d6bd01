#include "illuminate/core/variation.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <thread>

namespace illuminate {

Offspring make_offspring(const Domain& domain, const OffspringRequest& request,
                         const VariationConfig& config) {
    Rng rng(request.seed);
    Individual child;
    child.birth_generation = request.generation;
    if (request.parent_a == nullptr) {
        child.genome = domain.random_genome(rng);
    } else if (request.parent_b != nullptr && rng.bernoulli(config.crossover_rate)) {
        child.genome = domain.mutate(
            domain.crossover(request.parent_a->genome, request.parent_b->genome, rng), rng);
        child.parents = {request.parent_a->id, request.parent_b->id};
    } else {
        child.genome = domain.mutate(request.parent_a->genome, rng);
        child.parents = {request.parent_a->id};
    }

    Offspring out;
    try {
        child.evaluation = domain.evaluate(child.genome);
        out.individual = std::move(child);
    } catch (const EvaluationError& e) {
        out.error = e.what();
    }
    return out;
}

std::vector<Offspring> make_offspring_batch(const Domain& domain,
                                            std::span<const OffspringRequest> requests,
                                            const VariationConfig& config) {
    return make_offspring_batch(domain, requests, config, evaluation_threads());
}

std::vector<Offspring> make_offspring_batch(const Domain& domain,
                                            std::span<const OffspringRequest> requests,
                                            const VariationConfig& config, std::size_t threads) {
    std::vector<Offspring> out(requests.size());
    const std::size_t workers = std::min(std::max<std::size_t>(threads, 1), requests.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < requests.size(); ++i)
            out[i] = make_offspring(domain, requests[i], config);
        return out;
    }

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < requests.size(); i = next++)
            out[i] = make_offspring(domain, requests[i], config);
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    return out;
}

Individual spawn_offspring(const Domain& domain, RunHistory& history, const Individual& parent_a,
                           const Individual* parent_b, Rng& rng, const VariationConfig& config,
                           std::uint32_t generation) {
    if (!history.contains(parent_a.id) || (parent_b && !history.contains(parent_b->id)))
        throw ContractViolation("parents must belong to the current run");
    OffspringRequest request{&parent_a, parent_b, rng.next_seed(), generation};
    Offspring child = make_offspring(domain, request, config);
    if (!child.individual) throw EvaluationError(child.error);
    return history.commit(std::move(*child.individual));
}

std::size_t evaluation_threads() {
    std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("ILLUMINATE_THREADS")) {
        std::size_t cap = 0;
        auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), cap);
        if (ec == std::errc() && cap >= 1) return std::min(cap, hw);
    }
    return hw;
}

} // namespace illuminate
