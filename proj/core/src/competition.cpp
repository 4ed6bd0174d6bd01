#include "illuminate/quality/competition.hpp"

#include <algorithm>
#include <numeric>

namespace illuminate {

const Individual& cell_compete(const Individual* incumbent, const Individual& challenger) {
    if (incumbent == nullptr) return challenger;
    return challenger.evaluation.fitness > incumbent->evaluation.fitness ? challenger : *incumbent;
}

std::size_t local_competition_score(double subject_fitness,
                                    std::span<const double> neighbor_fitness) {
    return static_cast<std::size_t>(std::count_if(neighbor_fitness.begin(), neighbor_fitness.end(),
                                                  [&](double f) { return f < subject_fitness; }));
}

std::vector<std::size_t> nearest_neighbors(const Descriptor& subject,
                                           std::span<const Descriptor> references, std::size_t k,
                                           Metric metric, std::optional<std::size_t> skip) {
    std::vector<std::pair<double, std::size_t>> ranked;
    ranked.reserve(references.size());
    for (std::size_t i = 0; i < references.size(); ++i) {
        if (skip && *skip == i) continue;
        ranked.emplace_back(distance(metric, subject, references[i]), i);
    }
    const std::size_t n = std::min(k, ranked.size());
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(n), ranked.end());
    std::vector<std::size_t> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = ranked[i].second;
    return out;
}

bool EliteMap::consider(std::size_t cell, const Individual& challenger, const RunHistory& history) {
    auto& slot = cells_.at(cell);
    const Individual* incumbent = slot ? &history[*slot] : nullptr;
    if (&cell_compete(incumbent, challenger) != &challenger) return false;
    if (!slot) ++occupied_;
    slot = challenger.id;
    return true;
}

std::vector<IndividualId> EliteMap::drain() {
    std::vector<IndividualId> out;
    out.reserve(occupied_);
    for (auto& slot : cells_) {
        if (slot) out.push_back(*slot);
        slot.reset();
    }
    occupied_ = 0;
    return out;
}

std::vector<std::size_t> EliteMap::occupied_cells() const {
    std::vector<std::size_t> out;
    out.reserve(occupied_);
    for (std::size_t i = 0; i < cells_.size(); ++i)
        if (cells_[i]) out.push_back(i);
    return out;
}

} // namespace illuminate
