#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "illuminate/analysis/lineage.hpp"
#include "illuminate/analysis/report.hpp"
#include "illuminate/runner/config.hpp"
#include "illuminate/runner/runner.hpp"

namespace illuminate::service {

using json = nlohmann::json;

/// Raised when a run is asked to step while another step is in progress.
class Conflict : public Error {
public:
    using Error::Error;
};

/// Raised for requests the run's algorithm cannot honor (steering a non-map engine).
class Unsupported : public Error {
public:
    using Error::Error;
};

/// Read-only view of a run taken at an iteration boundary.
struct RunSnapshot {
    std::string run_id;
    std::string algorithm;
    bool map_based = false;
    bool finished = false;
    std::size_t iteration = 0;
    std::size_t evaluations = 0;
    ExpressivityReport report;
    std::vector<MetricsRecord> metrics;
    /// Map-based runs: per-cell weights and selection counts (flat index order).
    std::vector<double> preference;
    std::vector<std::uint64_t> selection_counts;
    /// Individuals committed up to this boundary.
    std::size_t history_size = 0;
};

/// Hosts paused-by-default runs that advance only on explicit step requests.
///
/// One stepping controller per run; readers get the latest immutable snapshot and never
/// block on a step in progress. Preference updates are validated on arrival, queued, and
/// applied at the next iteration boundary.
class SteeringService {
public:
    SteeringService() = default;
    SteeringService(const SteeringService&) = delete;
    SteeringService& operator=(const SteeringService&) = delete;

    /// Throws ConfigError when the config is invalid. The run starts paused at iteration 0.
    std::string start_run(const runner::RunConfig& config);
    std::string start_run(const json& config);

    /// Runs exactly n iterations (fewer once the run finishes); returns the new iteration
    /// count. Throws NotFound, or Conflict when the run is already stepping.
    std::size_t step_run(const std::string& run_id, std::size_t n);

    /// Throws NotFound, Unsupported for non-map runs, ContractViolation for an invalid cell
    /// or a weight below 1.
    void set_preference(const std::string& run_id, const CellIndex& cell, double weight);

    std::shared_ptr<const RunSnapshot> snapshot(const std::string& run_id) const;

    /// Heatmap payload over two axes plus per-cell elite summaries.
    json archive_payload(const std::string& run_id, std::size_t axis_a, std::size_t axis_b) const;
    /// Genome text, evaluation and lineage of one individual. NotFound for unknown ids or
    /// individuals not yet visible at the latest boundary.
    json individual_payload(const std::string& run_id, IndividualId id) const;
    json metrics_payload(const std::string& run_id) const;

    std::vector<std::string> run_ids() const;

private:
    struct Session;
    std::shared_ptr<Session> find(const std::string& run_id) const;
    static void publish(Session& s);

    mutable std::mutex runs_mutex_;
    std::map<std::string, std::shared_ptr<Session>> runs_;
    std::uint64_t next_id_ = 1;
};

} // namespace illuminate::service
