#include "illuminate/runner/runner.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "illuminate/analysis/lineage.hpp"

namespace illuminate::runner {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
}

std::string number(double v) { return json(v).dump(); }

} // namespace

json to_json(const Evaluation& e) {
    return {{"fitness", e.fitness},
            {"descriptor", e.descriptor},
            {"feasible", e.feasible},
            {"infeasibility", e.infeasibility}};
}

Evaluation evaluation_from_json(const json& j) {
    Evaluation e;
    e.fitness = j.at("fitness").get<double>();
    e.descriptor = j.at("descriptor").get<Descriptor>();
    e.feasible = j.at("feasible").get<bool>();
    e.infeasibility = j.at("infeasibility").get<double>();
    return e;
}

json to_json(const MetricsRecord& m) {
    return {{"iteration", m.iteration},       {"evaluations", m.evaluations},
            {"coverage", m.coverage},         {"qd_score", m.qd_score},
            {"best_fitness", m.best_fitness}, {"occupied_cells", m.occupied_cells},
            {"novelty_archive", m.novelty_archive}, {"feasible", m.feasible},
            {"infeasible", m.infeasible}};
}

std::string archive_dump(const Engine& engine) {
    auto ids = engine.retained();
    std::sort(ids.begin(), ids.end());
    const CellView view = engine.cell_view();
    const auto& history = engine.state().history;
    std::string out;
    for (IndividualId id : ids) {
        const Individual& ind = history[id];
        json j = {{"id", id},
                  {"genome", engine.domain().render(ind.genome)},
                  {"evaluation", to_json(ind.evaluation)},
                  {"cell", view.partition->cell_of(ind.evaluation.descriptor).coords},
                  {"parents", ind.parents},
                  {"generation", ind.birth_generation}};
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::string metrics_dump(const Engine& engine) {
    std::string out;
    for (const auto& m : engine.state().metrics) {
        out += to_json(m).dump();
        out += '\n';
    }
    return out;
}

std::string lineage_dump(const Engine& engine) {
    std::string out;
    for (const Individual& ind : engine.state().history) {
        json j = {{"id", ind.id},
                  {"parents", ind.parents},
                  {"operation", to_string(ind.origin())},
                  {"generation", ind.birth_generation}};
        out += j.dump();
        out += '\n';
    }
    return out;
}

RunResult execute_run(const RunConfig& config, std::ostream& log) {
    RunResult result;
    const fs::path out = config.out;
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) {
        result.exit_code = exit_run_failed;
        result.message = "cannot create output directory " + out.string() + ": " + ec.message();
        return result;
    }
    write_file(out / "config.json", to_json(config).dump(2) + "\n");

    std::string failure;
    try {
        result.engine = make_engine(config.engine, make_domain(config.domain), config.seed);
        Engine& engine = *result.engine;
        while (!engine.finished()) {
            engine.step(1);
            if (config.report_every > 0 && engine.state().iteration % config.report_every == 0) {
                fs::create_directories(out / "reports");
                write_file(out / "reports" /
                               ("report-" + std::to_string(engine.state().iteration) + ".json"),
                           report_json(snapshot(engine)));
            }
        }
    } catch (const Error& e) {
        failure = e.what();
    }

    json status = {{"status", failure.empty() ? "complete" : "failed"}};
    if (result.engine) {
        const Engine& engine = *result.engine;
        write_file(out / "archive.jsonl", archive_dump(engine));
        write_file(out / "metrics.jsonl", metrics_dump(engine));
        write_file(out / "lineage.jsonl", lineage_dump(engine));
        const auto report = snapshot(engine);
        write_file(out / "report.json", report_json(report));
        write_file(out / "report.csv", report_csv(report));
        if (report.resolution.size() >= 2)
            write_file(out / "heatmap.csv", heatmap_csv(heatmap_export(report, 0, 1)));
        status["iteration"] = engine.state().iteration;
        status["evaluations"] = engine.state().evaluations;
        status["failed_evaluations"] = engine.state().failed_evaluations;
        status["coverage"] = report.coverage;
        status["qd_score"] = report.qd_score;
    }
    if (!failure.empty()) {
        status["error"] = failure;
        status["partial"] = true;
    }
    write_file(out / "status.json", status.dump(2) + "\n");

    if (!failure.empty()) {
        result.exit_code = exit_run_failed;
        result.message = failure;
        log << "run failed: " << failure << " (partial artifacts in " << out.string() << ")\n";
        return result;
    }
    const auto& m = result.engine->state().metrics.back();
    log << to_string(result.engine->algorithm()) << " seed " << config.seed << ": "
        << m.iteration << " iterations, " << m.evaluations << " evaluations, coverage "
        << number(m.coverage) << ", qd-score " << number(m.qd_score) << ", best fitness "
        << number(m.best_fitness) << "\n";
    return result;
}

ExpressivityReport report_from_json(const json& j) {
    if (!j.is_object() || j.value("schema", "") != report_schema)
        throw ConfigError("report", std::string("expected a report with schema ") + report_schema);
    try {
        ExpressivityReport r;
        r.algorithm = j.at("algorithm").get<std::string>();
        r.iteration = j.at("iteration").get<std::size_t>();
        r.evaluations = j.at("evaluations").get<std::size_t>();
        const auto& grid = j.at("grid");
        r.kind = partition_kind_from_string(grid.at("kind").get<std::string>());
        r.resolution = grid.at("resolution").get<std::vector<std::size_t>>();
        r.projected = grid.at("projected").get<bool>();
        r.total_cells = j.at("total_cells").get<std::size_t>();
        r.coverage = j.at("coverage").get<double>();
        r.qd_score = j.at("qd_score").get<double>();
        for (const auto& c : j.at("cells"))
            r.cells.push_back({CellIndex{c.at("cell").get<std::vector<std::size_t>>()},
                               c.at("flat").get<std::size_t>(), c.at("elite").get<IndividualId>(),
                               c.at("fitness").get<double>()});
        for (const auto& h : j.at("histograms"))
            r.histograms.push_back({Bounds{h.at("lo").get<double>(), h.at("hi").get<double>()},
                                    h.at("counts").get<std::vector<std::size_t>>()});
        return r;
    } catch (const json::exception& e) {
        throw ConfigError("report", std::string("malformed report: ") + e.what());
    } catch (const ContractViolation& e) {
        throw ConfigError("report", std::string("malformed report: ") + e.what());
    }
}

double median(std::vector<double> values) {
    if (values.empty()) throw ContractViolation("median of an empty set");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::vector<CompareRow> compare(const std::vector<RunConfig>& configs,
                                const std::vector<std::uint64_t>& seeds,
                                std::vector<std::size_t> reference) {
    if (configs.empty()) throw ConfigError("config", "compare needs at least one config");
    if (seeds.empty()) throw ConfigError("seeds", "compare needs at least one seed");
    for (const auto& c : configs) {
        if (c.domain.name != configs[0].domain.name || c.domain.params != configs[0].domain.params)
            throw ConfigError("domain", "all compared configs must use the same domain");
        if (c.engine.budget != configs[0].engine.budget)
            throw ConfigError("engine.budget", "all compared configs must share one budget");
    }
    const auto domain = make_domain(configs[0].domain);
    if (reference.empty()) reference.assign(domain->descriptor_dims(), 10);
    if (reference.size() != domain->descriptor_dims())
        throw ConfigError("reference", "expected one entry per descriptor dimension");
    const Partition grid(GridSpec::uniform(domain->descriptor_bounds(), reference));

    std::vector<CompareRow> rows;
    for (const auto& c : configs) {
        for (auto seed : seeds) {
            auto engine = run_engine(c.engine, domain, seed);
            const auto report = project(*engine, grid);
            rows.push_back({std::string(to_string(c.engine.algorithm)), seed, report.coverage,
                            report.qd_score, engine->state().best_fitness});
        }
    }
    return rows;
}

std::string compare_csv(const std::vector<CompareRow>& rows) {
    std::ostringstream out;
    out << "algorithm,seed,coverage,qd_score,best_fitness\n";
    std::vector<std::string> order;
    std::map<std::string, std::vector<const CompareRow*>> groups;
    for (const auto& r : rows) {
        out << r.algorithm << ',' << r.seed << ',' << number(r.coverage) << ','
            << number(r.qd_score) << ',' << number(r.best_fitness) << '\n';
        if (!groups.count(r.algorithm)) order.push_back(r.algorithm);
        groups[r.algorithm].push_back(&r);
    }
    for (const auto& name : order) {
        std::vector<double> cov, qd, best;
        for (const auto* r : groups[name]) {
            cov.push_back(r->coverage);
            qd.push_back(r->qd_score);
            best.push_back(r->best_fitness);
        }
        out << name << ",median," << number(median(cov)) << ',' << number(median(qd)) << ','
            << number(median(best)) << '\n';
    }
    return out.str();
}

} // namespace illuminate::runner
