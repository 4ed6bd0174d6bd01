#include "illuminate/partition/grid.hpp"

#include <algorithm>
#include <cmath>

namespace illuminate {

const char* to_string(PartitionKind kind) {
    switch (kind) {
    case PartitionKind::uniform: return "uniform";
    case PartitionKind::binary: return "binary";
    case PartitionKind::sliding: return "sliding";
    }
    return "unknown";
}

PartitionKind partition_kind_from_string(const std::string& name) {
    if (name == "uniform") return PartitionKind::uniform;
    if (name == "binary") return PartitionKind::binary;
    if (name == "sliding") return PartitionKind::sliding;
    throw ContractViolation("unknown partition kind '" + name + "'");
}

GridSpec GridSpec::uniform(std::vector<Bounds> bounds, std::vector<std::size_t> resolution) {
    GridSpec spec{PartitionKind::uniform, std::move(bounds), std::move(resolution)};
    spec.validate();
    return spec;
}

GridSpec GridSpec::binary(std::size_t dims) {
    GridSpec spec{PartitionKind::binary, std::vector<Bounds>(dims, Bounds{0.0, 1.0}),
                  std::vector<std::size_t>(dims, 2)};
    spec.validate();
    return spec;
}

GridSpec GridSpec::sliding(std::vector<Bounds> bounds, std::vector<std::size_t> resolution) {
    GridSpec spec{PartitionKind::sliding, std::move(bounds), std::move(resolution)};
    spec.validate();
    return spec;
}

std::size_t GridSpec::cell_count() const noexcept {
    std::size_t n = 1;
    for (auto r : resolution) n *= r;
    return n;
}

void GridSpec::validate() const {
    if (resolution.empty()) throw ContractViolation("grid needs at least one dimension");
    if (bounds.size() != resolution.size())
        throw ContractViolation("grid bounds and resolution differ in dimensionality");
    for (std::size_t i = 0; i < resolution.size(); ++i) {
        if (resolution[i] < 1) throw ContractViolation("grid resolution must be >= 1");
        if (!(bounds[i].hi > bounds[i].lo) || !std::isfinite(bounds[i].lo) ||
            !std::isfinite(bounds[i].hi))
            throw ContractViolation("grid bounds must be finite with lo < hi");
        if (kind == PartitionKind::binary && resolution[i] != 2)
            throw ContractViolation("binary grids have exactly two bins per dimension");
    }
}

std::string to_string(const CellIndex& cell) {
    std::string out = "(";
    for (std::size_t i = 0; i < cell.coords.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(cell.coords[i]);
    }
    return out + ")";
}

std::size_t flat_index(const CellIndex& cell, std::span<const std::size_t> resolution) {
    if (!within(cell, resolution)) throw ContractViolation("cell " + to_string(cell) + " out of range");
    std::size_t flat = 0;
    for (std::size_t i = 0; i < resolution.size(); ++i) flat = flat * resolution[i] + cell.coords[i];
    return flat;
}

CellIndex unflatten(std::size_t flat, std::span<const std::size_t> resolution) {
    CellIndex cell{std::vector<std::size_t>(resolution.size())};
    for (std::size_t i = resolution.size(); i-- > 0;) {
        cell.coords[i] = flat % resolution[i];
        flat /= resolution[i];
    }
    return cell;
}

bool within(const CellIndex& cell, std::span<const std::size_t> resolution) {
    if (cell.coords.size() != resolution.size()) return false;
    for (std::size_t i = 0; i < resolution.size(); ++i)
        if (cell.coords[i] >= resolution[i]) return false;
    return true;
}

namespace {

void require_finite(const Descriptor& d) {
    for (double v : d)
        if (!std::isfinite(v)) throw ContractViolation("descriptor entries must be finite");
}

} // namespace

CellIndex cell_of_uniform(const Descriptor& descriptor, const GridSpec& spec) {
    if (descriptor.size() != spec.dims())
        throw ContractViolation("descriptor dimensionality does not match the grid");
    require_finite(descriptor);
    CellIndex cell{std::vector<std::size_t>(spec.dims())};
    for (std::size_t i = 0; i < spec.dims(); ++i) {
        const auto r = static_cast<double>(spec.resolution[i]);
        const double pos =
            std::floor((descriptor[i] - spec.bounds[i].lo) / (spec.bounds[i].hi - spec.bounds[i].lo) * r);
        cell.coords[i] = static_cast<std::size_t>(std::clamp(pos, 0.0, r - 1.0));
    }
    return cell;
}

CellIndex cell_of_binary(const std::vector<bool>& flags) {
    CellIndex cell{std::vector<std::size_t>(flags.size())};
    for (std::size_t i = 0; i < flags.size(); ++i) cell.coords[i] = flags[i] ? 1 : 0;
    return cell;
}

BoundarySet recompute_boundaries(std::span<const Descriptor> buffer, const GridSpec& spec) {
    if (buffer.empty()) throw ContractViolation("cannot recompute boundaries from an empty buffer");
    BoundarySet out;
    out.per_dim.resize(spec.dims());
    const std::size_t b = buffer.size();
    std::vector<double> column(b);
    for (std::size_t dim = 0; dim < spec.dims(); ++dim) {
        for (std::size_t i = 0; i < b; ++i) column[i] = buffer[i].at(dim);
        std::sort(column.begin(), column.end());
        const std::size_t r = spec.resolution[dim];
        auto& bounds = out.per_dim[dim];
        bounds.reserve(r - 1);
        for (std::size_t j = 1; j < r; ++j) {
            const std::size_t rank = (j * b + r - 1) / r;  // ceil(j * b / r), 1-based
            bounds.push_back(column[rank - 1]);
        }
    }
    return out;
}

BoundarySet even_boundaries(const GridSpec& spec) {
    BoundarySet out;
    out.per_dim.resize(spec.dims());
    for (std::size_t dim = 0; dim < spec.dims(); ++dim) {
        const auto r = spec.resolution[dim];
        const auto [lo, hi] = spec.bounds[dim];
        for (std::size_t j = 1; j < r; ++j)
            out.per_dim[dim].push_back(lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(r));
    }
    return out;
}

CellIndex cell_of_sliding(const Descriptor& descriptor, const BoundarySet& boundaries) {
    if (descriptor.size() != boundaries.per_dim.size())
        throw ContractViolation("descriptor dimensionality does not match the boundaries");
    require_finite(descriptor);
    CellIndex cell{std::vector<std::size_t>(descriptor.size())};
    for (std::size_t i = 0; i < descriptor.size(); ++i) {
        const auto& b = boundaries.per_dim[i];
        cell.coords[i] = static_cast<std::size_t>(
            std::lower_bound(b.begin(), b.end(), descriptor[i]) - b.begin());
    }
    return cell;
}

Partition::Partition(GridSpec spec) : spec_(std::move(spec)) {
    spec_.validate();
    if (spec_.kind == PartitionKind::sliding) boundaries_ = even_boundaries(spec_);
}

CellIndex Partition::cell_of(const Descriptor& descriptor) const {
    switch (spec_.kind) {
    case PartitionKind::uniform: return cell_of_uniform(descriptor, spec_);
    case PartitionKind::sliding: return cell_of_sliding(descriptor, boundaries_);
    case PartitionKind::binary: {
        if (descriptor.size() != spec_.dims())
            throw ContractViolation("descriptor dimensionality does not match the grid");
        require_finite(descriptor);
        std::vector<bool> flags(descriptor.size());
        for (std::size_t i = 0; i < descriptor.size(); ++i) flags[i] = descriptor[i] >= 0.5;
        return cell_of_binary(flags);
    }
    }
    throw ContractViolation("unknown partition kind");
}

std::size_t Partition::flat_cell_of(const Descriptor& descriptor) const {
    return flat_index(cell_of(descriptor), spec_.resolution);
}

void Partition::set_boundaries(BoundarySet boundaries) {
    if (spec_.kind != PartitionKind::sliding)
        throw ContractViolation("only sliding grids have movable boundaries");
    if (boundaries.per_dim.size() != spec_.dims())
        throw ContractViolation("boundary set dimensionality does not match the grid");
    for (std::size_t i = 0; i < spec_.dims(); ++i) {
        if (boundaries.per_dim[i].size() + 1 != spec_.resolution[i])
            throw ContractViolation("boundary count must be resolution - 1");
        if (!std::is_sorted(boundaries.per_dim[i].begin(), boundaries.per_dim[i].end()))
            throw ContractViolation("boundaries must be non-decreasing");
    }
    boundaries_ = std::move(boundaries);
}

} // namespace illuminate
