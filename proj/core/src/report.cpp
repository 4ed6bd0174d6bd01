#include "illuminate/analysis/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace illuminate {

namespace {

using json = nlohmann::json;

ExpressivityReport build(const Engine& engine, const Partition& grid,
                         const std::vector<std::optional<IndividualId>>& best, bool projected,
                         std::size_t bins) {
    const auto& state = engine.state();
    ExpressivityReport r;
    r.algorithm = std::string(to_string(engine.algorithm()));
    r.iteration = state.iteration;
    r.evaluations = state.evaluations;
    r.kind = grid.spec().kind;
    r.resolution = grid.spec().resolution;
    r.projected = projected;
    r.total_cells = grid.cell_count();

    const auto bounds = engine.domain().descriptor_bounds();
    for (const auto& b : bounds) r.histograms.push_back({b, std::vector<std::size_t>(bins, 0)});

    for (std::size_t flat = 0; flat < best.size(); ++flat) {
        if (!best[flat]) continue;
        const Individual& elite = state.history[*best[flat]];
        r.cells.push_back({unflatten(flat, r.resolution), flat, elite.id, elite.evaluation.fitness});
        r.qd_score += elite.evaluation.fitness;
        for (std::size_t d = 0; d < r.histograms.size() && bins > 0; ++d) {
            const auto& h = r.histograms[d];
            const double t = (elite.evaluation.descriptor[d] - h.bounds.lo) / (h.bounds.hi - h.bounds.lo);
            const auto bin = static_cast<std::size_t>(
                std::clamp(std::floor(t * static_cast<double>(bins)), 0.0, static_cast<double>(bins - 1)));
            ++r.histograms[d].counts[bin];
        }
    }
    r.coverage = r.total_cells == 0 ? 0.0
                                    : static_cast<double>(r.cells.size()) /
                                          static_cast<double>(r.total_cells);
    return r;
}

} // namespace

ExpressivityReport snapshot(const Engine& engine, std::size_t histogram_bins) {
    const CellView view = engine.cell_view();
    return build(engine, *view.partition, view.best, !engine.state().partition.has_value(),
                 histogram_bins);
}

ExpressivityReport project(const Engine& engine, const Partition& grid,
                           std::size_t histogram_bins) {
    const auto& history = engine.state().history;
    std::vector<std::optional<IndividualId>> best(grid.cell_count());
    for (IndividualId id : engine.retained()) {
        const auto& e = history[id].evaluation;
        if (!e.feasible) continue;
        auto& slot = best[grid.flat_cell_of(e.descriptor)];
        const double incumbent = slot ? history[*slot].evaluation.fitness : 0.0;
        if (!slot || e.fitness > incumbent || (e.fitness == incumbent && id < *slot)) slot = id;
    }
    return build(engine, grid, best, true, histogram_bins);
}

Heatmap heatmap_export(const ExpressivityReport& report, std::size_t a, std::size_t b) {
    const std::size_t dims = report.resolution.size();
    if (dims < 2) throw ContractViolation("heatmap needs at least two dimensions");
    if (a >= dims || b >= dims)
        throw ContractViolation("heatmap axis out of range (grid has " + std::to_string(dims) +
                                " dimensions)");
    if (a == b) throw ContractViolation("heatmap axes must differ");

    Heatmap h;
    h.axis_a = a;
    h.axis_b = b;
    h.values.assign(report.resolution[a],
                    std::vector<std::optional<double>>(report.resolution[b]));
    for (const auto& c : report.cells) {
        auto& v = h.values[c.cell.coords[a]][c.cell.coords[b]];
        if (!v || c.fitness > *v) v = c.fitness;
    }
    return h;
}

std::string heatmap_csv(const Heatmap& heatmap) {
    std::ostringstream out;
    for (const auto& row : heatmap.values) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out << ',';
            if (row[j])
                out << json(*row[j]).dump();
            else
                out << missing_marker;
        }
        out << '\n';
    }
    return out.str();
}

std::string report_json(const ExpressivityReport& r) {
    json cells = json::array();
    for (const auto& c : r.cells)
        cells.push_back({{"cell", c.cell.coords}, {"flat", c.flat}, {"elite", c.elite},
                         {"fitness", c.fitness}});
    json histograms = json::array();
    for (const auto& h : r.histograms)
        histograms.push_back({{"lo", h.bounds.lo}, {"hi", h.bounds.hi}, {"counts", h.counts}});
    json j = {
        {"schema", report_schema},
        {"algorithm", r.algorithm},
        {"iteration", r.iteration},
        {"evaluations", r.evaluations},
        {"grid", {{"kind", to_string(r.kind)}, {"resolution", r.resolution}, {"projected", r.projected}}},
        {"total_cells", r.total_cells},
        {"occupied_cells", r.cells.size()},
        {"coverage", r.coverage},
        {"qd_score", r.qd_score},
        {"cells", std::move(cells)},
        {"histograms", std::move(histograms)},
    };
    return j.dump(2) + "\n";
}

std::string report_csv(const ExpressivityReport& r) {
    std::ostringstream out;
    out << "flat";
    for (std::size_t d = 0; d < r.resolution.size(); ++d) out << ",c" << d;
    out << ",elite,fitness\n";
    for (const auto& c : r.cells) {
        out << c.flat;
        for (auto x : c.cell.coords) out << ',' << x;
        out << ',' << c.elite << ',' << json(c.fitness).dump() << '\n';
    }
    return out.str();
}

} // namespace illuminate
