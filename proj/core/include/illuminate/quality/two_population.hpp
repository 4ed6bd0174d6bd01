#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "illuminate/core/domain.hpp"
#include "illuminate/core/history.hpp"

namespace illuminate {

/// Objective of the infeasible population.
enum class InfeasibleMode {
    /// Minimize distance to feasibility.
    fins,
    /// Maximize novelty among the infeasible population.
    fi2ns,
};

/// -infeasibility, so selection always maximizes. Throws ContractViolation on a feasible
/// individual.
double infeasible_objective(const Individual& ind);

/// FI2NS objective: novelty of `ind` among the infeasible population's divergence points
/// (the subject's own entry is excluded once). Throws ContractViolation on a feasible
/// individual.
double infeasible_novelty(const Individual& ind, const Descriptor& point,
                          std::span<const Descriptor> infeasible_points, std::size_t k,
                          Metric metric);

/// Feasible and infeasible populations, each bounded by its capacity.
struct TwoPopulations {
    std::vector<IndividualId> feasible;
    std::vector<IndividualId> infeasible;
    std::size_t feasible_capacity = 0;
    std::size_t infeasible_capacity = 0;

    std::size_t size() const noexcept { return feasible.size() + infeasible.size(); }
    bool empty() const noexcept { return feasible.empty() && infeasible.empty(); }
};

enum class Placement { feasible, infeasible };

struct RouteResult {
    Placement placement = Placement::feasible;
    /// False when the population was full and the child was its worst member.
    bool stored = false;
    std::optional<IndividualId> evicted;
};

using Objective = std::function<double(const Individual&)>;

/// Sends the child to the population matching its feasibility flag, regardless of where
/// its parents lived. A full population drops its worst member under that population's
/// objective; the child is the one dropped when it does not beat the current worst.
RouteResult route_offspring(const Individual& child, TwoPopulations& pops,
                            const RunHistory& history, const Objective& feasible_objective,
                            const Objective& infeasible_objective);

/// Throws ContractViolation when a member's feasibility disagrees with its population.
void check_purity(const TwoPopulations& pops, const RunHistory& history);

} // namespace illuminate
