#pragma once

// Small fixtures shared by the unit tests.

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "illuminate/core/domain.hpp"
#include "illuminate/core/rng.hpp"
#include "illuminate/domains/tile_level.hpp"

namespace illuminate::testing {

/// Two-gene toy domain: genome (x, y) in [0, 1]^2, descriptor = genome, fitness supplied by
/// a function. Mutation nudges both genes; constraint optionally marks x > limit infeasible.
class ToyDomain : public Domain {
public:
    using FitnessFn = double (*)(double, double);

    explicit ToyDomain(FitnessFn fitness = nullptr, double infeasible_above = 2.0,
                       double step = 0.1)
        : fitness_(fitness), limit_(infeasible_above), step_(step) {}

    std::string name() const override { return "toy"; }
    std::size_t descriptor_dims() const override { return 2; }
    std::vector<Bounds> descriptor_bounds() const override { return {{0, 1}, {0, 1}}; }
    bool constrained() const override { return limit_ < 1.0; }

    Genome random_genome(Rng& rng) const override {
        return Genome::make(std::vector<double>{rng.uniform(), rng.uniform()});
    }
    Genome mutate(const Genome& parent, Rng& rng) const override {
        auto g = parent.as<std::vector<double>>();
        for (auto& x : g) x = std::clamp(x + rng.uniform(-step_, step_), 0.0, 1.0);
        return Genome::make(std::move(g));
    }
    Genome crossover(const Genome& a, const Genome& b, Rng&) const override {
        return Genome::make(
            std::vector<double>{a.as<std::vector<double>>()[0], b.as<std::vector<double>>()[1]});
    }
    Evaluation evaluate(const Genome& genome) const override {
        const auto& g = genome.as<std::vector<double>>();
        Evaluation e;
        e.descriptor = g;
        e.fitness = fitness_ ? fitness_(g[0], g[1]) : 0.5;
        if (g[0] > limit_) {
            e.feasible = false;
            e.infeasibility = g[0] - limit_;
            e.fitness = 0.0;
        }
        return e;
    }
    std::string render(const Genome& genome) const override {
        const auto& g = genome.as<std::vector<double>>();
        return std::to_string(g[0]) + " " + std::to_string(g[1]);
    }
    Genome parse(std::string_view) const override { throw EvaluationError("not supported"); }

private:
    FitnessFn fitness_;
    double limit_;
    double step_;
};

inline std::vector<double> random_point(Rng& rng, std::size_t dims) {
    std::vector<double> p(dims);
    for (auto& x : p) x = rng.uniform();
    return p;
}

/// Independent feasibility check: union-find over 4-connected open tiles, then every exit
/// and treasure must share the start's component.
inline bool oracle_feasible(const domains::TileLevel& level) {
    using domains::Tile;
    std::vector<std::size_t> parent(level.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    auto open = [&](std::size_t i) { return level.tiles[i] != Tile::wall; };
    for (std::size_t y = 0; y < level.height; ++y) {
        for (std::size_t x = 0; x < level.width; ++x) {
            const std::size_t i = y * level.width + x;
            if (!open(i)) continue;
            if (x + 1 < level.width && open(i + 1)) parent[find(i)] = find(i + 1);
            if (y + 1 < level.height && open(i + level.width)) parent[find(i)] = find(i + level.width);
        }
    }
    std::size_t start = level.size();
    for (std::size_t i = 0; i < level.size(); ++i)
        if (level.tiles[i] == Tile::start) start = i;
    if (start == level.size()) return false;
    for (std::size_t i = 0; i < level.size(); ++i)
        if ((level.tiles[i] == Tile::exit || level.tiles[i] == Tile::treasure) && find(i) != find(start))
            return false;
    return true;
}

/// Ranks by repeated peeling: each round removes every point no remaining point dominates.
inline std::vector<std::size_t> oracle_ranks(const std::vector<std::vector<double>>& pts) {
    auto dom = [](const std::vector<double>& a, const std::vector<double>& b) {
        bool better = false;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] < b[i]) return false;
            better = better || a[i] > b[i];
        }
        return better;
    };
    std::vector<std::size_t> rank(pts.size(), 0);
    std::vector<bool> done(pts.size(), false);
    std::size_t left = pts.size();
    for (std::size_t r = 0; left > 0; ++r) {
        std::vector<std::size_t> front;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (done[i]) continue;
            bool dominated = false;
            for (std::size_t j = 0; j < pts.size() && !dominated; ++j)
                dominated = !done[j] && dom(pts[j], pts[i]);
            if (!dominated) front.push_back(i);
        }
        for (auto i : front) {
            rank[i] = r;
            done[i] = true;
        }
        left -= front.size();
    }
    return rank;
}

} // namespace illuminate::testing
