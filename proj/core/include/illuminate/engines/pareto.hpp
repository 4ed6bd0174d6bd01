#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "illuminate/core/rng.hpp"

namespace illuminate {

/// Objective vector; every objective is maximized.
using Objectives = std::vector<double>;

/// a dominates b: no worse in every objective and strictly better in at least one.
bool dominates(const Objectives& a, const Objectives& b);

/// Non-dominated sorting. rank 0 is the non-dominated front; equal vectors share a rank.
std::vector<std::size_t> pareto_ranks(std::span<const Objectives> points);

/// Crowding distance of each member of `front` (indices into `points`), aligned with
/// `front`. Boundary members of every objective get +infinity.
std::vector<double> crowding_distance(std::span<const Objectives> points,
                                      std::span<const std::size_t> front);

/// Rank and crowding for a whole population.
struct ParetoSort {
    std::vector<std::size_t> rank;
    std::vector<double> crowding;
};

ParetoSort pareto_sort(std::span<const Objectives> points);

/// (rank ascending, crowding descending) order; ties broken by lower index.
bool crowded_less(const ParetoSort& sort, std::size_t a, std::size_t b);

/// Binary tournament under crowded comparison.
std::size_t crowded_tournament(const ParetoSort& sort, Rng& rng);

/// Indices of `count` survivors: whole fronts in rank order, the last partial front
/// filled by descending crowding distance.
std::vector<std::size_t> select_survivors(std::span<const Objectives> points, std::size_t count);

} // namespace illuminate
