#include "illuminate/analysis/lineage.hpp"

#include <algorithm>
#include <set>

namespace illuminate {

namespace {

std::set<IndividualId> ancestry(const RunHistory& history, IndividualId id) {
    history.at(id);  // NotFound for unknown ids
    std::set<IndividualId> seen{id};
    std::vector<IndividualId> stack{id};
    while (!stack.empty()) {
        const IndividualId cur = stack.back();
        stack.pop_back();
        for (IndividualId p : history[cur].parents)
            if (seen.insert(p).second) stack.push_back(p);
    }
    return seen;
}

} // namespace

LineageTree lineage_trace(const RunHistory& history, IndividualId id) {
    LineageTree tree;
    tree.root = id;
    for (IndividualId a : ancestry(history, id)) {
        const Individual& ind = history[a];
        LineageNode node;
        node.id = a;
        node.generation = ind.birth_generation;
        node.fitness = ind.evaluation.fitness;
        node.feasible = ind.evaluation.feasible;
        node.parents = ind.parents;
        node.operation = ind.origin();
        tree.nodes.push_back(std::move(node));
    }
    return tree;
}

std::vector<IndividualId> common_ancestors(const RunHistory& history,
                                           std::span<const IndividualId> ids) {
    if (ids.empty()) return {};
    std::set<IndividualId> shared = ancestry(history, ids.front());
    for (std::size_t i = 1; i < ids.size(); ++i) {
        const auto next = ancestry(history, ids[i]);
        std::set<IndividualId> keep;
        std::set_intersection(shared.begin(), shared.end(), next.begin(), next.end(),
                              std::inserter(keep, keep.end()));
        shared = std::move(keep);
    }
    return {shared.rbegin(), shared.rend()};
}

} // namespace illuminate
