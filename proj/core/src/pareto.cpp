#include "illuminate/engines/pareto.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "illuminate/core/error.hpp"

namespace illuminate {

bool dominates(const Objectives& a, const Objectives& b) {
    bool strictly = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return false;
        if (a[i] > b[i]) strictly = true;
    }
    return strictly;
}

std::vector<std::size_t> pareto_ranks(std::span<const Objectives> points) {
    const std::size_t n = points.size();
    std::vector<std::vector<std::size_t>> dominated_by_me(n);
    std::vector<std::size_t> domination_count(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dominates(points[i], points[j])) {
                dominated_by_me[i].push_back(j);
                ++domination_count[j];
            } else if (dominates(points[j], points[i])) {
                dominated_by_me[j].push_back(i);
                ++domination_count[i];
            }
        }
    }

    std::vector<std::size_t> rank(n, 0);
    std::vector<std::size_t> front;
    for (std::size_t i = 0; i < n; ++i)
        if (domination_count[i] == 0) front.push_back(i);
    for (std::size_t r = 0; !front.empty(); ++r) {
        std::vector<std::size_t> next;
        for (std::size_t i : front) {
            rank[i] = r;
            for (std::size_t j : dominated_by_me[i])
                if (--domination_count[j] == 0) next.push_back(j);
        }
        front = std::move(next);
    }
    return rank;
}

std::vector<double> crowding_distance(std::span<const Objectives> points,
                                      std::span<const std::size_t> front) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> crowd(front.size(), 0.0);
    if (front.size() <= 2) {
        std::fill(crowd.begin(), crowd.end(), inf);
        return crowd;
    }
    const std::size_t m = points[front[0]].size();
    std::vector<std::size_t> order(front.size());
    for (std::size_t obj = 0; obj < m; ++obj) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return points[front[a]][obj] < points[front[b]][obj];
        });
        const double lo = points[front[order.front()]][obj];
        const double hi = points[front[order.back()]][obj];
        crowd[order.front()] = crowd[order.back()] = inf;
        if (hi == lo) continue;
        for (std::size_t k = 1; k + 1 < order.size(); ++k) {
            if (crowd[order[k]] == inf) continue;
            crowd[order[k]] += (points[front[order[k + 1]]][obj] - points[front[order[k - 1]]][obj]) /
                               (hi - lo);
        }
    }
    return crowd;
}

ParetoSort pareto_sort(std::span<const Objectives> points) {
    ParetoSort out;
    out.rank = pareto_ranks(points);
    out.crowding.assign(points.size(), 0.0);
    const std::size_t max_rank =
        out.rank.empty() ? 0 : *std::max_element(out.rank.begin(), out.rank.end());
    for (std::size_t r = 0; r <= max_rank && !points.empty(); ++r) {
        std::vector<std::size_t> front;
        for (std::size_t i = 0; i < points.size(); ++i)
            if (out.rank[i] == r) front.push_back(i);
        const auto crowd = crowding_distance(points, front);
        for (std::size_t k = 0; k < front.size(); ++k) out.crowding[front[k]] = crowd[k];
    }
    return out;
}

bool crowded_less(const ParetoSort& sort, std::size_t a, std::size_t b) {
    if (sort.rank[a] != sort.rank[b]) return sort.rank[a] < sort.rank[b];
    if (sort.crowding[a] != sort.crowding[b]) return sort.crowding[a] > sort.crowding[b];
    return a < b;
}

std::size_t crowded_tournament(const ParetoSort& sort, Rng& rng) {
    if (sort.rank.empty()) throw ContractViolation("tournament over an empty population");
    const std::size_t a = rng.below(sort.rank.size());
    const std::size_t b = rng.below(sort.rank.size());
    return crowded_less(sort, a, b) ? a : b;
}

std::vector<std::size_t> select_survivors(std::span<const Objectives> points, std::size_t count) {
    const ParetoSort sort = pareto_sort(points);
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return crowded_less(sort, a, b); });
    order.resize(std::min(count, order.size()));
    return order;
}

} // namespace illuminate
