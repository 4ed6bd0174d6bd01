#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "illuminate/core/domain.hpp"

namespace illuminate::domains {

enum class Tile : char {
    wall = '#',
    floor = '.',
    start = 'S',
    exit = 'E',
    treasure = 'T',
};

/// Rectangular tile map with exactly one start and one exit.
///
/// Text form: one character per tile (`#`, `.`, `S`, `E`, `T`), one row per line.
struct TileLevel {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<Tile> tiles;  // row-major

    TileLevel() = default;
    TileLevel(std::size_t w, std::size_t h, Tile fill = Tile::floor)
        : width(w), height(h), tiles(w * h, fill) {}

    Tile at(std::size_t x, std::size_t y) const { return tiles[y * width + x]; }
    Tile& at(std::size_t x, std::size_t y) { return tiles[y * width + x]; }
    std::size_t size() const noexcept { return tiles.size(); }

    /// Throws EvaluationError naming the violated structural rule.
    void validate() const;

    std::string render() const;
    /// Throws EvaluationError on unknown characters or ragged rows.
    static TileLevel parse(std::string_view text);

    friend bool operator==(const TileLevel&, const TileLevel&) = default;
};

struct Feasibility {
    bool feasible = false;
    double infeasibility = 0.0;
};

/// Feasible iff the exit and every treasure are reachable from the start through
/// 4-connected non-wall tiles. infeasibility = unreachable / (1 + required), where the
/// required tiles are the exit plus all treasures.
Feasibility level_feasibility(const TileLevel& level);

/// Tiles visited (start and exit included) on a shortest start-to-exit path.
std::optional<std::size_t> shortest_path_tiles(const TileLevel& level);

double wall_fraction(const TileLevel& level);

/// Fraction of left-right mirror tile pairs with the same passability (wall vs. open).
/// The middle column of an odd-width level has no partner and is not counted.
double mirror_symmetry(const TileLevel& level);

/// (wall fraction, shortest path tiles / (W*H) or 0 when infeasible, mirror symmetry).
Descriptor level_descriptor(const TileLevel& level);

/// Eight boolean level traits, for binary feature maps.
std::vector<bool> level_traits(const TileLevel& level);
inline constexpr std::size_t level_trait_count = 8;

/// Number of differing tiles. Throws ContractViolation on a size mismatch.
std::size_t level_distance(const TileLevel& a, const TileLevel& b);

/// 1 - wall fraction for feasible levels, 0 otherwise.
double level_fitness(const TileLevel& level);

enum class LevelFeatures { continuous, binary };

struct LevelDomainConfig {
    std::size_t width = 10;
    std::size_t height = 10;
    double wall_probability = 0.35;
    double treasure_probability = 0.02;
    /// Tiles redrawn per mutation.
    std::size_t mutation_flips = 3;
    /// Redraw weights for wall / floor / treasure.
    double flip_wall = 0.40;
    double flip_floor = 0.55;
    double flip_treasure = 0.05;
    LevelFeatures features = LevelFeatures::continuous;
};

class LevelDomain final : public Domain {
public:
    explicit LevelDomain(LevelDomainConfig config = {});

    const LevelDomainConfig& config() const noexcept { return config_; }

    std::string name() const override { return "level"; }
    std::size_t descriptor_dims() const override;
    std::vector<Bounds> descriptor_bounds() const override;
    bool constrained() const override { return true; }

    Genome random_genome(Rng& rng) const override;
    /// Redraws `mutation_flips` random tiles other than start and exit.
    Genome mutate(const Genome& parent, Rng& rng) const override;
    /// Copies a random rectangle of `b` into `a`, keeping `a`'s start and exit.
    Genome crossover(const Genome& a, const Genome& b, Rng& rng) const override;
    Evaluation evaluate(const Genome& genome) const override;

    std::string render(const Genome& genome) const override;
    Genome parse(std::string_view text) const override;

    /// Tile codes; compared with normalized Hamming distance.
    Descriptor divergence_point(const Individual& ind) const override;
    Metric divergence_metric() const override { return Metric::normalized_hamming; }

private:
    Tile draw_tile(Rng& rng) const;
    const TileLevel& level_of(const Genome& genome) const;

    LevelDomainConfig config_;
};

} // namespace illuminate::domains
