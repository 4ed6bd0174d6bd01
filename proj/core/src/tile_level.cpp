#include "illuminate/domains/tile_level.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

namespace illuminate::domains {

namespace {

bool passable(Tile t) { return t != Tile::wall; }

bool valid_tile_char(char c) {
    return c == '#' || c == '.' || c == 'S' || c == 'E' || c == 'T';
}

/// Breadth-first distances (in steps) from the start; max() marks unreachable tiles.
std::vector<std::size_t> distances_from_start(const TileLevel& level) {
    constexpr auto unreached = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> dist(level.size(), unreached);
    const auto start = static_cast<std::size_t>(
        std::find(level.tiles.begin(), level.tiles.end(), Tile::start) - level.tiles.begin());
    if (start == level.size()) return dist;

    std::deque<std::size_t> frontier{start};
    dist[start] = 0;
    while (!frontier.empty()) {
        const std::size_t cur = frontier.front();
        frontier.pop_front();
        const std::size_t x = cur % level.width, y = cur / level.width;
        const std::size_t next_steps = dist[cur] + 1;
        auto visit = [&](std::size_t nx, std::size_t ny) {
            const std::size_t n = ny * level.width + nx;
            if (dist[n] != unreached || !passable(level.tiles[n])) return;
            dist[n] = next_steps;
            frontier.push_back(n);
        };
        if (x > 0) visit(x - 1, y);
        if (x + 1 < level.width) visit(x + 1, y);
        if (y > 0) visit(x, y - 1);
        if (y + 1 < level.height) visit(x, y + 1);
    }
    return dist;
}

std::size_t position_of(const TileLevel& level, Tile t) {
    return static_cast<std::size_t>(std::find(level.tiles.begin(), level.tiles.end(), t) -
                                    level.tiles.begin());
}

} // namespace

void TileLevel::validate() const {
    if (width == 0 || height == 0) throw EvaluationError("level must have positive dimensions");
    if (tiles.size() != width * height)
        throw EvaluationError("level tile count must equal width * height");
    const auto starts = std::count(tiles.begin(), tiles.end(), Tile::start);
    const auto exits = std::count(tiles.begin(), tiles.end(), Tile::exit);
    if (starts != 1)
        throw EvaluationError("level must contain exactly one start tile, found " +
                              std::to_string(starts));
    if (exits != 1)
        throw EvaluationError("level must contain exactly one exit tile, found " +
                              std::to_string(exits));
    for (Tile t : tiles)
        if (!valid_tile_char(static_cast<char>(t)))
            throw EvaluationError("level contains an unknown tile kind");
}

std::string TileLevel::render() const {
    std::string out;
    out.reserve((width + 1) * height);
    for (std::size_t y = 0; y < height; ++y) {
        for (std::size_t x = 0; x < width; ++x) out.push_back(static_cast<char>(at(x, y)));
        out.push_back('\n');
    }
    return out;
}

TileLevel TileLevel::parse(std::string_view text) {
    TileLevel level;
    std::size_t row_start = 0;
    while (row_start < text.size()) {
        std::size_t row_end = text.find('\n', row_start);
        if (row_end == std::string_view::npos) row_end = text.size();
        std::string_view row = text.substr(row_start, row_end - row_start);
        if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
        row_start = row_end + 1;
        if (row.empty()) continue;
        if (level.width == 0) level.width = row.size();
        if (row.size() != level.width)
            throw EvaluationError("level rows must all have the same width");
        for (char c : row) {
            if (!valid_tile_char(c))
                throw EvaluationError(std::string("unknown tile character '") + c + "'");
            level.tiles.push_back(static_cast<Tile>(c));
        }
        ++level.height;
    }
    if (level.tiles.empty()) throw EvaluationError("level text is empty");
    return level;
}

Feasibility level_feasibility(const TileLevel& level) {
    const auto dist = distances_from_start(level);
    std::size_t required = 0, unreachable = 0;
    for (std::size_t i = 0; i < level.size(); ++i) {
        if (level.tiles[i] != Tile::exit && level.tiles[i] != Tile::treasure) continue;
        ++required;
        if (dist[i] == std::numeric_limits<std::size_t>::max()) ++unreachable;
    }
    Feasibility out;
    out.feasible = unreachable == 0;
    out.infeasibility = static_cast<double>(unreachable) / static_cast<double>(1 + required);
    return out;
}

std::optional<std::size_t> shortest_path_tiles(const TileLevel& level) {
    const auto dist = distances_from_start(level);
    const std::size_t exit = position_of(level, Tile::exit);
    if (exit == level.size() || dist[exit] == std::numeric_limits<std::size_t>::max())
        return std::nullopt;
    return dist[exit] + 1;
}

double wall_fraction(const TileLevel& level) {
    const auto walls = std::count(level.tiles.begin(), level.tiles.end(), Tile::wall);
    return static_cast<double>(walls) / static_cast<double>(level.size());
}

double mirror_symmetry(const TileLevel& level) {
    const std::size_t half = level.width / 2;
    if (half == 0) return 1.0;
    std::size_t equal = 0;
    for (std::size_t y = 0; y < level.height; ++y)
        for (std::size_t x = 0; x < half; ++x)
            equal += passable(level.at(x, y)) == passable(level.at(level.width - 1 - x, y));
    return static_cast<double>(equal) / static_cast<double>(half * level.height);
}

Descriptor level_descriptor(const TileLevel& level) {
    double path_ratio = 0.0;
    if (level_feasibility(level).feasible) {
        if (auto tiles = shortest_path_tiles(level))
            path_ratio = static_cast<double>(*tiles) / static_cast<double>(level.size());
    }
    return {wall_fraction(level), path_ratio, mirror_symmetry(level)};
}

std::vector<bool> level_traits(const TileLevel& level) {
    const auto d = level_descriptor(level);
    const auto treasures = std::count(level.tiles.begin(), level.tiles.end(), Tile::treasure);
    const std::size_t start = position_of(level, Tile::start);
    const std::size_t exit = position_of(level, Tile::exit);
    const std::size_t ex = exit % level.width, ey = exit / level.width;
    return {
        treasures > 0,
        d[0] >= 0.3,
        d[1] >= 0.15,
        d[2] >= 0.75,
        start % level.width < level.width / 2,
        ex >= level.width / 2,
        treasures >= 3,
        ex == 0 || ey == 0 || ex + 1 == level.width || ey + 1 == level.height,
    };
}

std::size_t level_distance(const TileLevel& a, const TileLevel& b) {
    if (a.width != b.width || a.height != b.height)
        throw ContractViolation("level distance requires equal dimensions");
    std::size_t differing = 0;
    for (std::size_t i = 0; i < a.size(); ++i) differing += a.tiles[i] != b.tiles[i];
    return differing;
}

double level_fitness(const TileLevel& level) {
    if (!level_feasibility(level).feasible) return 0.0;
    return 1.0 - wall_fraction(level);
}

LevelDomain::LevelDomain(LevelDomainConfig config) : config_(config) {
    if (config_.width * config_.height < 2)
        throw ContractViolation("level needs room for a start and an exit");
    if (config_.flip_wall < 0 || config_.flip_floor < 0 || config_.flip_treasure < 0 ||
        config_.flip_wall + config_.flip_floor + config_.flip_treasure <= 0)
        throw ContractViolation("tile redraw weights must be non-negative with a positive sum");
    auto probability = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!probability(config_.wall_probability) || !probability(config_.treasure_probability) ||
        config_.wall_probability + config_.treasure_probability > 1.0)
        throw ContractViolation("wall and treasure probabilities must lie in [0, 1] and sum to at most 1");
}

std::size_t LevelDomain::descriptor_dims() const {
    return config_.features == LevelFeatures::binary ? level_trait_count : 3;
}

std::vector<Bounds> LevelDomain::descriptor_bounds() const {
    return std::vector<Bounds>(descriptor_dims(), Bounds{0.0, 1.0});
}

Tile LevelDomain::draw_tile(Rng& rng) const {
    const double total = config_.flip_wall + config_.flip_floor + config_.flip_treasure;
    const double u = rng.uniform() * total;
    if (u < config_.flip_wall) return Tile::wall;
    if (u < config_.flip_wall + config_.flip_floor) return Tile::floor;
    return Tile::treasure;
}

const TileLevel& LevelDomain::level_of(const Genome& genome) const {
    const auto& level = genome.as<TileLevel>();
    if (level.width != config_.width || level.height != config_.height)
        throw EvaluationError("level dimensions differ from the configured " +
                              std::to_string(config_.width) + "x" + std::to_string(config_.height));
    return level;
}

Genome LevelDomain::random_genome(Rng& rng) const {
    TileLevel level(config_.width, config_.height);
    for (auto& t : level.tiles) {
        const double u = rng.uniform();
        t = u < config_.wall_probability                                 ? Tile::wall
            : u < config_.wall_probability + config_.treasure_probability ? Tile::treasure
                                                                          : Tile::floor;
    }
    const std::size_t start = rng.below(level.size());
    std::size_t exit = rng.below(level.size() - 1);
    if (exit >= start) ++exit;
    level.tiles[start] = Tile::start;
    level.tiles[exit] = Tile::exit;
    return Genome::make(std::move(level));
}

Genome LevelDomain::mutate(const Genome& parent, Rng& rng) const {
    TileLevel level = level_of(parent);
    for (std::size_t i = 0; i < config_.mutation_flips; ++i) {
        const std::size_t pos = rng.below(level.size());
        const Tile tile = draw_tile(rng);
        if (level.tiles[pos] == Tile::start || level.tiles[pos] == Tile::exit) continue;
        level.tiles[pos] = tile;
    }
    return Genome::make(std::move(level));
}

Genome LevelDomain::crossover(const Genome& a, const Genome& b, Rng& rng) const {
    TileLevel child = level_of(a);
    const TileLevel& donor = level_of(b);
    std::size_t x0 = rng.below(child.width), x1 = rng.below(child.width);
    std::size_t y0 = rng.below(child.height), y1 = rng.below(child.height);
    if (x0 > x1) std::swap(x0, x1);
    if (y0 > y1) std::swap(y0, y1);
    for (std::size_t y = y0; y <= y1; ++y) {
        for (std::size_t x = x0; x <= x1; ++x) {
            Tile& dst = child.at(x, y);
            if (dst == Tile::start || dst == Tile::exit) continue;
            const Tile src = donor.at(x, y);
            dst = (src == Tile::start || src == Tile::exit) ? Tile::floor : src;
        }
    }
    return Genome::make(std::move(child));
}

Evaluation LevelDomain::evaluate(const Genome& genome) const {
    const TileLevel& level = level_of(genome);
    level.validate();
    const Feasibility f = level_feasibility(level);
    Evaluation eval;
    eval.feasible = f.feasible;
    eval.infeasibility = f.infeasibility;
    eval.fitness = f.feasible ? 1.0 - wall_fraction(level) : 0.0;
    if (config_.features == LevelFeatures::binary) {
        for (bool flag : level_traits(level)) eval.descriptor.push_back(flag ? 1.0 : 0.0);
    } else {
        eval.descriptor = level_descriptor(level);
    }
    return eval;
}

std::string LevelDomain::render(const Genome& genome) const { return level_of(genome).render(); }

Genome LevelDomain::parse(std::string_view text) const {
    TileLevel level = TileLevel::parse(text);
    level.validate();
    Genome g = Genome::make(std::move(level));
    level_of(g);
    return g;
}

Descriptor LevelDomain::divergence_point(const Individual& ind) const {
    const TileLevel& level = level_of(ind.genome);
    Descriptor out(level.size());
    for (std::size_t i = 0; i < level.size(); ++i) out[i] = static_cast<double>(level.tiles[i]);
    return out;
}

} // namespace illuminate::domains
