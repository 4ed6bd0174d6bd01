#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "illuminate/core/domain.hpp"
#include "illuminate/core/history.hpp"

namespace illuminate {

struct VariationConfig {
    /// Probability that a request with two parents recombines them before mutation.
    double crossover_rate = 0.0;
};

/// One offspring (or seed, when no parent is given) to be produced. The seed fixes every
/// random draw made while creating it, so requests can be fulfilled in any order.
struct OffspringRequest {
    const Individual* parent_a = nullptr;
    const Individual* parent_b = nullptr;
    std::uint64_t seed = 0;
    std::uint32_t generation = 0;
};

/// Result of fulfilling a request. `individual.id` is left at 0; ids are assigned when the
/// batch is committed to the history.
struct Offspring {
    std::optional<Individual> individual;
    std::string error;  // set when evaluation failed
};

/// Creates and evaluates one offspring. Pure given the request.
Offspring make_offspring(const Domain& domain, const OffspringRequest& request,
                         const VariationConfig& config);

/// Fulfills a batch, in parallel when more than one worker is available. Output order
/// matches request order regardless of scheduling.
std::vector<Offspring> make_offspring_batch(const Domain& domain,
                                            std::span<const OffspringRequest> requests,
                                            const VariationConfig& config);
/// Same, with an explicit worker count.
std::vector<Offspring> make_offspring_batch(const Domain& domain,
                                            std::span<const OffspringRequest> requests,
                                            const VariationConfig& config, std::size_t threads);

/// Creates, evaluates and records a child of `parent_a` (and `parent_b`, for crossover).
Individual spawn_offspring(const Domain& domain, RunHistory& history, const Individual& parent_a,
                           const Individual* parent_b, Rng& rng, const VariationConfig& config,
                           std::uint32_t generation);

/// Worker count for evaluation batches: ILLUMINATE_THREADS when set, else the hardware
/// concurrency.
std::size_t evaluation_threads();

} // namespace illuminate
