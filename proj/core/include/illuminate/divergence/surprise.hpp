#pragma once

#include <cstddef>
#include <deque>
#include <span>
#include <utility>
#include <vector>

#include "illuminate/core/rng.hpp"
#include "illuminate/core/types.hpp"

namespace illuminate {

/// A generation condensed to a handful of k-means centroids.
using GenerationSummary = std::vector<Descriptor>;

/// Sliding window over the most recent generation summaries.
class SurpriseModel {
public:
    static constexpr std::size_t window = 2;

    void push(GenerationSummary summary);

    /// Oldest first.
    const std::deque<GenerationSummary>& history() const noexcept { return history_; }
    bool ready() const noexcept { return history_.size() >= window; }

private:
    std::deque<GenerationSummary> history_;
};

/// Lloyd's k-means with `m` clamped to the population size. The first centroid is drawn
/// from `rng`, the rest by farthest-point seeding; iteration stops at a fixed point or
/// after `max_iterations`.
GenerationSummary summarize_generation(std::span<const Descriptor> population, std::size_t m,
                                       Rng& rng, std::size_t max_iterations = 100);

/// Greedy minimal-distance matching: repeatedly pairs the closest unmatched
/// (older, newer) centroids. Returns (older index, newer index) pairs.
std::vector<std::pair<std::size_t, std::size_t>> pair_centroids(const GenerationSummary& older,
                                                                const GenerationSummary& newer);

/// Two-point linear extrapolation, one prediction per newest centroid:
/// 2 * newer - older for matched pairs. A newest centroid left unmatched (summaries of
/// different sizes) is predicted to stay put.
/// Throws ContractViolation("insufficient history") with fewer than two summaries.
std::vector<Descriptor> surprise_predict(const SurpriseModel& model);

/// Distance from `subject` to the nearest predicted centroid.
double surprise_score(const Descriptor& subject, std::span<const Descriptor> predicted);

} // namespace illuminate
