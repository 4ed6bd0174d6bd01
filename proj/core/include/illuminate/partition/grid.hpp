#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "illuminate/core/types.hpp"

namespace illuminate {

enum class PartitionKind { uniform, binary, sliding };

const char* to_string(PartitionKind kind);
PartitionKind partition_kind_from_string(const std::string& name);

/// Discretization of an N-dimensional behavior space.
struct GridSpec {
    PartitionKind kind = PartitionKind::uniform;
    std::vector<Bounds> bounds;
    std::vector<std::size_t> resolution;

    static GridSpec uniform(std::vector<Bounds> bounds, std::vector<std::size_t> resolution);
    /// N boolean dimensions, two bins each: 2^N cells.
    static GridSpec binary(std::size_t dims);
    static GridSpec sliding(std::vector<Bounds> bounds, std::vector<std::size_t> resolution);

    std::size_t dims() const noexcept { return resolution.size(); }
    std::size_t cell_count() const noexcept;

    /// Throws ContractViolation on empty, mismatched or degenerate specs.
    void validate() const;
};

struct CellIndex {
    std::vector<std::size_t> coords;

    friend auto operator<=>(const CellIndex&, const CellIndex&) = default;
    friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

std::string to_string(const CellIndex& cell);

/// Row-major flattening; the first dimension varies slowest.
std::size_t flat_index(const CellIndex& cell, std::span<const std::size_t> resolution);
CellIndex unflatten(std::size_t flat, std::span<const std::size_t> resolution);
bool within(const CellIndex& cell, std::span<const std::size_t> resolution);

/// Interior boundaries per dimension (R_i - 1 sorted values each).
struct BoundarySet {
    std::vector<std::vector<double>> per_dim;

    friend bool operator==(const BoundarySet&, const BoundarySet&) = default;
};

/// c_i = floor((d_i - lo_i) / (hi_i - lo_i) * R_i), clipped into [0, R_i - 1]. Values at or
/// above hi_i land in the last bin. Throws ContractViolation for non-finite input.
CellIndex cell_of_uniform(const Descriptor& descriptor, const GridSpec& spec);

CellIndex cell_of_binary(const std::vector<bool>& flags);

/// Nearest-rank percentiles: the j-th boundary of a dimension with resolution R over B
/// sorted values is the value at 1-based rank ceil(j * B / R).
BoundarySet recompute_boundaries(std::span<const Descriptor> buffer, const GridSpec& spec);

/// Evenly spaced boundaries over the declared bounds; the starting point of a sliding grid.
BoundarySet even_boundaries(const GridSpec& spec);

/// c_i = number of boundaries of dimension i strictly below d_i.
CellIndex cell_of_sliding(const Descriptor& descriptor, const BoundarySet& boundaries);

/// A grid spec plus its current boundaries; dispatches on the partition kind.
class Partition {
public:
    explicit Partition(GridSpec spec);

    const GridSpec& spec() const noexcept { return spec_; }
    std::size_t cell_count() const noexcept { return spec_.cell_count(); }
    std::span<const std::size_t> resolution() const noexcept { return spec_.resolution; }

    /// Binary grids treat a descriptor entry >= 0.5 as a set flag.
    CellIndex cell_of(const Descriptor& descriptor) const;
    std::size_t flat_cell_of(const Descriptor& descriptor) const;

    const BoundarySet& boundaries() const noexcept { return boundaries_; }
    /// Sliding grids only.
    void set_boundaries(BoundarySet boundaries);

private:
    GridSpec spec_;
    BoundarySet boundaries_;
};

} // namespace illuminate
