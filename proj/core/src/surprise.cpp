#include "illuminate/divergence/surprise.hpp"

#include <algorithm>
#include <limits>

namespace illuminate {

void SurpriseModel::push(GenerationSummary summary) {
    history_.push_back(std::move(summary));
    while (history_.size() > window) history_.pop_front();
}

namespace {

double squared_distance(const Descriptor& a, const Descriptor& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

std::size_t nearest(const Descriptor& point, const std::vector<Descriptor>& centroids) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centroids.size(); ++c) {
        const double d = squared_distance(point, centroids[c]);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

} // namespace

GenerationSummary summarize_generation(std::span<const Descriptor> population, std::size_t m,
                                       Rng& rng, std::size_t max_iterations) {
    if (population.empty()) throw ContractViolation("cannot summarize an empty population");
    m = std::clamp<std::size_t>(m, 1, population.size());
    const std::size_t dims = population.front().size();

    std::vector<Descriptor> centroids;
    centroids.reserve(m);
    centroids.push_back(population[rng.below(population.size())]);
    std::vector<double> gap(population.size(), std::numeric_limits<double>::infinity());
    while (centroids.size() < m) {
        std::size_t far = 0;
        for (std::size_t i = 0; i < population.size(); ++i) {
            gap[i] = std::min(gap[i], squared_distance(population[i], centroids.back()));
            if (gap[i] > gap[far]) far = i;
        }
        centroids.push_back(population[far]);
    }

    std::vector<std::size_t> assignment(population.size(), m);
    for (std::size_t iter = 0; iter < max_iterations; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < population.size(); ++i) {
            const std::size_t c = nearest(population[i], centroids);
            changed |= c != assignment[i];
            assignment[i] = c;
        }
        if (!changed) break;

        std::vector<Descriptor> sums(m, Descriptor(dims, 0.0));
        std::vector<std::size_t> counts(m, 0);
        for (std::size_t i = 0; i < population.size(); ++i) {
            auto& s = sums[assignment[i]];
            for (std::size_t d = 0; d < dims; ++d) s[d] += population[i][d];
            ++counts[assignment[i]];
        }
        for (std::size_t c = 0; c < m; ++c) {
            if (counts[c] == 0) continue;  // empty cluster keeps its centroid
            for (std::size_t d = 0; d < dims; ++d)
                centroids[c][d] = sums[c][d] / static_cast<double>(counts[c]);
        }
    }
    return centroids;
}

std::vector<std::pair<std::size_t, std::size_t>> pair_centroids(const GenerationSummary& older,
                                                                const GenerationSummary& newer) {
    struct Candidate {
        double d;
        std::size_t o, n;
    };
    std::vector<Candidate> candidates;
    candidates.reserve(older.size() * newer.size());
    for (std::size_t o = 0; o < older.size(); ++o)
        for (std::size_t n = 0; n < newer.size(); ++n)
            candidates.push_back({squared_distance(older[o], newer[n]), o, n});
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.d != b.d) return a.d < b.d;
        if (a.o != b.o) return a.o < b.o;
        return a.n < b.n;
    });

    std::vector<bool> used_old(older.size(), false), used_new(newer.size(), false);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    const std::size_t wanted = std::min(older.size(), newer.size());
    for (const auto& c : candidates) {
        if (pairs.size() == wanted) break;
        if (used_old[c.o] || used_new[c.n]) continue;
        used_old[c.o] = used_new[c.n] = true;
        pairs.emplace_back(c.o, c.n);
    }
    return pairs;
}

std::vector<Descriptor> surprise_predict(const SurpriseModel& model) {
    if (!model.ready()) throw ContractViolation("insufficient history");
    const auto& history = model.history();
    const GenerationSummary& older = history[history.size() - 2];
    const GenerationSummary& newer = history.back();

    std::vector<Descriptor> predicted = newer;
    for (auto [o, n] : pair_centroids(older, newer)) {
        for (std::size_t d = 0; d < predicted[n].size(); ++d)
            predicted[n][d] = 2.0 * newer[n][d] - older[o][d];
    }
    return predicted;
}

double surprise_score(const Descriptor& subject, std::span<const Descriptor> predicted) {
    if (predicted.empty()) throw ContractViolation("surprise undefined for an empty prediction");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : predicted) best = std::min(best, euclidean_distance(subject, c));
    return best;
}

} // namespace illuminate
