#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "illuminate/core/domain.hpp"
#include "illuminate/core/history.hpp"
#include "illuminate/core/types.hpp"

namespace illuminate {

/// Per-cell replacement rule: an empty cell takes the challenger; otherwise strictly higher
/// fitness wins and an exact tie keeps the incumbent.
const Individual& cell_compete(const Individual* incumbent, const Individual& challenger);

/// Number of neighbors whose fitness is strictly below the subject's.
std::size_t local_competition_score(double subject_fitness,
                                    std::span<const double> neighbor_fitness);

/// Indices of the `k` references closest to `subject` (all of them when fewer exist),
/// ordered by distance then index. `skip` excludes one reference, typically the subject.
std::vector<std::size_t> nearest_neighbors(const Descriptor& subject,
                                           std::span<const Descriptor> references, std::size_t k,
                                           Metric metric = Metric::euclidean,
                                           std::optional<std::size_t> skip = std::nullopt);

/// One elite per cell, stored by individual id.
class EliteMap {
public:
    explicit EliteMap(std::size_t cells = 0) : cells_(cells) {}

    std::size_t cell_count() const noexcept { return cells_.size(); }
    std::size_t occupied() const noexcept { return occupied_; }
    const std::optional<IndividualId>& at(std::size_t cell) const { return cells_.at(cell); }

    /// Runs cell_compete against the current occupant. Returns whether the challenger
    /// took the cell.
    bool consider(std::size_t cell, const Individual& challenger, const RunHistory& history);

    /// Empties every cell (used before re-binning under new boundaries).
    std::vector<IndividualId> drain();

    /// Flat indices of occupied cells, ascending.
    std::vector<std::size_t> occupied_cells() const;

private:
    std::vector<std::optional<IndividualId>> cells_;
    std::size_t occupied_ = 0;
};

} // namespace illuminate
