#include "illuminate/quality/two_population.hpp"

#include <string>

#include "illuminate/divergence/novelty.hpp"

namespace illuminate {

double infeasible_objective(const Individual& ind) {
    if (ind.evaluation.feasible)
        throw ContractViolation("infeasible objective requested for feasible individual " +
                                std::to_string(ind.id));
    return -ind.evaluation.infeasibility;
}

double infeasible_novelty(const Individual& ind, const Descriptor& point,
                          std::span<const Descriptor> infeasible_points, std::size_t k,
                          Metric metric) {
    if (ind.evaluation.feasible)
        throw ContractViolation("infeasible objective requested for feasible individual " +
                                std::to_string(ind.id));
    static const NoveltyArchive no_archive;
    if (infeasible_points.size() <= 1) return 0.0;  // alone in its population
    return novelty_score(point, infeasible_points, no_archive, k, metric);
}

RouteResult route_offspring(const Individual& child, TwoPopulations& pops,
                            const RunHistory& history, const Objective& feasible_objective,
                            const Objective& infeasible_objective) {
    const bool feasible = child.evaluation.feasible;
    RouteResult result;
    result.placement = feasible ? Placement::feasible : Placement::infeasible;
    auto& members = feasible ? pops.feasible : pops.infeasible;
    const std::size_t capacity = feasible ? pops.feasible_capacity : pops.infeasible_capacity;
    const Objective& objective = feasible ? feasible_objective : infeasible_objective;

    if (members.size() < capacity) {
        members.push_back(child.id);
        result.stored = true;
        return result;
    }
    if (members.empty()) return result;  // zero capacity

    std::size_t worst = 0;
    double worst_value = objective(history[members[0]]);
    for (std::size_t i = 1; i < members.size(); ++i) {
        const double v = objective(history[members[i]]);
        if (v < worst_value) {
            worst_value = v;
            worst = i;
        }
    }
    if (objective(child) <= worst_value) return result;
    result.evicted = members[worst];
    members[worst] = child.id;
    result.stored = true;
    return result;
}

void check_purity(const TwoPopulations& pops, const RunHistory& history) {
    for (auto id : pops.feasible)
        if (!history.at(id).evaluation.feasible)
            throw ContractViolation("infeasible individual " + std::to_string(id) +
                                    " found in the feasible population");
    for (auto id : pops.infeasible)
        if (history.at(id).evaluation.feasible)
            throw ContractViolation("feasible individual " + std::to_string(id) +
                                    " found in the infeasible population");
}

} // namespace illuminate
