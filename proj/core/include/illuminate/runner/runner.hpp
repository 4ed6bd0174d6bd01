#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "illuminate/analysis/report.hpp"
#include "illuminate/engines/engine.hpp"
#include "illuminate/runner/config.hpp"

namespace illuminate::runner {

/// Exit codes of the command-line tool.
enum ExitCode : int { exit_ok = 0, exit_run_failed = 1, exit_bad_config = 2 };

/// One JSON record per retained individual, ascending by id: id, genome (domain text
/// form), evaluation, cell, parents, generation.
std::string archive_dump(const Engine& engine);
/// One JSON record per iteration.
std::string metrics_dump(const Engine& engine);
/// One JSON record per individual in the run history: id, parents, operation, generation.
std::string lineage_dump(const Engine& engine);

json to_json(const MetricsRecord& m);
json to_json(const Evaluation& e);
Evaluation evaluation_from_json(const json& j);

struct RunResult {
    int exit_code = exit_ok;
    std::string message;
    std::unique_ptr<Engine> engine;
};

/// Runs to completion and writes every artifact into `config.out`:
/// config.json, archive.jsonl, metrics.jsonl, lineage.jsonl, report.json, report.csv,
/// heatmap.csv (two or more descriptor dimensions) and status.json. A failure mid-run still
/// writes what exists and marks status.json as failed.
RunResult execute_run(const RunConfig& config, std::ostream& log);

/// Per (algorithm, seed) result of a comparison.
struct CompareRow {
    std::string algorithm;
    std::uint64_t seed = 0;
    double coverage = 0.0;
    double qd_score = 0.0;
    double best_fitness = 0.0;
    bool operator==(const CompareRow&) const = default;
};

/// Runs every config under every seed and projects each result onto one shared reference
/// grid (`reference` bins per dimension over the domain bounds; empty picks 10 per
/// dimension). Throws ConfigError when the configs disagree on domain or budget.
std::vector<CompareRow> compare(const std::vector<RunConfig>& configs,
                                const std::vector<std::uint64_t>& seeds,
                                std::vector<std::size_t> reference = {});

/// CSV with one row per run followed by one "median" row per algorithm.
std::string compare_csv(const std::vector<CompareRow>& rows);

double median(std::vector<double> values);

/// Reads back a report written by report_json. Throws ConfigError on schema mismatch.
ExpressivityReport report_from_json(const json& j);

} // namespace illuminate::runner
