#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "illuminate/core/history.hpp"

namespace illuminate {

/// Edge annotation of a lineage node: how it was produced from its parents.
using Operation = Origin;

struct LineageNode {
    IndividualId id = 0;
    std::uint32_t generation = 0;
    double fitness = 0.0;
    bool feasible = true;
    /// Edge annotation: the operation that produced this node from its parents.
    Operation operation = Operation::seed;
    std::vector<IndividualId> parents;
};

/// Ancestor closure of one individual, itself included.
struct LineageTree {
    IndividualId root = 0;
    /// Ascending by id, so every parent precedes its children.
    std::vector<LineageNode> nodes;
};

/// Throws NotFound for an unknown id.
LineageTree lineage_trace(const RunHistory& history, IndividualId id);

/// Individuals that are ancestors (or the individual itself) of every id in `ids`,
/// most recent first. Throws NotFound for an unknown id.
std::vector<IndividualId> common_ancestors(const RunHistory& history,
                                           std::span<const IndividualId> ids);

} // namespace illuminate
