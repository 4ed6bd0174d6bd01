#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "illuminate/engines/engine.hpp"
#include "illuminate/partition/grid.hpp"

namespace illuminate {

/// Version tag written into every exported report.
inline constexpr const char* report_schema = "illuminate.report/1";

struct CellRecord {
    CellIndex cell;
    std::size_t flat = 0;
    IndividualId elite = 0;
    double fitness = 0.0;
};

/// Counts of elite descriptor values over `bins` equal-width bins of the domain bounds.
struct Histogram {
    Bounds bounds;
    std::vector<std::size_t> counts;
};

struct ExpressivityReport {
    std::string algorithm;
    std::size_t iteration = 0;
    std::size_t evaluations = 0;
    PartitionKind kind = PartitionKind::uniform;
    std::vector<std::size_t> resolution;
    /// True when the grid is a reporting projection rather than the engine's feature map.
    bool projected = false;
    std::size_t total_cells = 0;
    double coverage = 0.0;
    double qd_score = 0.0;
    /// Occupied cells only, ascending by flat index.
    std::vector<CellRecord> cells;
    std::vector<Histogram> histograms;
};

/// Report of the engine's current cell view. Reads only; the run is not touched.
ExpressivityReport snapshot(const Engine& engine, std::size_t histogram_bins = 10);

/// Report of the engine's retained individuals binned on `grid` (best fitness per cell,
/// ties to the lower id). Used to compare runs on one shared reference grid.
ExpressivityReport project(const Engine& engine, const Partition& grid,
                           std::size_t histogram_bins = 10);

/// Best-fitness matrix over two axes, other dimensions marginalized by max.
struct Heatmap {
    std::size_t axis_a = 0;
    std::size_t axis_b = 1;
    /// values[i][j] for cell i on axis a and j on axis b; nullopt marks an empty fiber.
    std::vector<std::vector<std::optional<double>>> values;
};

/// Throws ContractViolation for fewer than two dimensions or an axis out of range
/// (including a == b).
Heatmap heatmap_export(const ExpressivityReport& report, std::size_t a, std::size_t b);

/// Marker written for empty cells in CSV output.
inline constexpr const char* missing_marker = "NA";

std::string heatmap_csv(const Heatmap& heatmap);
std::string report_json(const ExpressivityReport& report);
/// One row per occupied cell: flat index, coordinates, elite id, fitness.
std::string report_csv(const ExpressivityReport& report);

} // namespace illuminate
