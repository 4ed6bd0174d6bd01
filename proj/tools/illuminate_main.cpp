// illuminate: run, compare, report and serve quality-diversity searches.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "illuminate/runner/runner.hpp"
#include "illuminate/service/http.hpp"

using namespace illuminate;
using runner::json;

namespace {

void print_errors(const std::vector<ConfigError>& errors) {
    for (const auto& e : errors) std::cerr << "config error: " << e.what() << "\n";
}

// Loads a config file and applies command-line overrides before validation, so an override
// that breaks the config is reported like any other field.
std::optional<json> load_with_overrides(const std::string& path, std::optional<std::uint64_t> seed,
                                        std::optional<std::string> out,
                                        std::optional<std::size_t> budget) {
    json doc;
    try {
        doc = runner::load_json_file(path);
    } catch (const ConfigError& e) {
        print_errors({e});
        return std::nullopt;
    }
    if (doc.is_object()) {
        if (seed) doc["seed"] = *seed;
        if (out) doc["out"] = *out;
        if (budget && doc.contains("engine") && doc["engine"].is_object())
            doc["engine"]["budget"] = *budget;
    }
    if (auto errors = runner::config_errors(doc); !errors.empty()) {
        std::cerr << path << ":\n";
        print_errors(errors);
        return std::nullopt;
    }
    return doc;
}

std::vector<std::size_t> parse_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(std::stoull(item));
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quality-diversity search over procedural content"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::size_t> budget;

    auto* run = app.add_subcommand("run", "Run one search and write its artifacts");
    run->add_option("--config", config_path, "JSON run config")->required();
    run->add_option("--seed", seed, "Master seed (overrides the config)");
    run->add_option("--out", out, "Output directory (overrides the config)");
    run->add_option("--budget", budget, "Evaluation budget (overrides the config)");

    std::vector<std::string> compare_configs;
    std::string seeds_text = "1";
    std::string reference_text;
    std::optional<std::string> compare_out;
    auto* cmp = app.add_subcommand("compare", "Run configs over several seeds and tabulate");
    cmp->add_option("--config", compare_configs, "JSON run configs (repeatable)")->required();
    cmp->add_option("--seeds", seeds_text, "Comma-separated seeds, e.g. 1,2,3");
    cmp->add_option("--budget", budget, "Evaluation budget applied to every config");
    cmp->add_option("--reference", reference_text,
                    "Shared reference grid, bins per dimension (e.g. 20,20)");
    cmp->add_option("--out", compare_out, "Write the CSV here instead of stdout");

    std::string report_dir;
    std::string axes_text = "0,1";
    auto* rep = app.add_subcommand("report", "Summarize a finished run directory");
    rep->add_option("--out", report_dir, "Run output directory")->required();
    rep->add_option("--axes", axes_text, "Heatmap axes, e.g. 0,2");

    std::string host = "127.0.0.1";
    int port = 8080;
    auto* srv = app.add_subcommand("serve", "Serve the steering HTTP/JSON API");
    srv->add_option("--host", host, "Bind address");
    srv->add_option("--port", port, "Port");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            auto doc = load_with_overrides(config_path, seed, out, budget);
            if (!doc) return runner::exit_bad_config;
            return runner::execute_run(runner::parse_run_config(*doc), std::cout).exit_code;
        }
        if (*cmp) {
            std::vector<runner::RunConfig> configs;
            for (const auto& path : compare_configs) {
                auto doc = load_with_overrides(path, std::nullopt, std::nullopt, budget);
                if (!doc) return runner::exit_bad_config;
                configs.push_back(runner::parse_run_config(*doc));
            }
            std::vector<std::uint64_t> seeds;
            std::vector<std::size_t> reference;
            try {
                for (auto s : parse_list(seeds_text)) seeds.push_back(s);
                if (!reference_text.empty()) reference = parse_list(reference_text);
            } catch (const std::exception&) {
                std::cerr << "config error: --seeds and --reference take comma-separated integers\n";
                return runner::exit_bad_config;
            }
            const auto csv = runner::compare_csv(runner::compare(configs, seeds, reference));
            if (compare_out) {
                std::ofstream f(*compare_out);
                f << csv;
            } else {
                std::cout << csv;
            }
            return runner::exit_ok;
        }
        if (*rep) {
            const auto report = runner::report_from_json(
                runner::load_json_file(report_dir + "/report.json"));
            std::vector<std::size_t> axes;
            try {
                axes = parse_list(axes_text);
            } catch (const std::exception&) {
            }
            if (axes.size() != 2) {
                std::cerr << "config error: --axes takes two comma-separated indices\n";
                return runner::exit_bad_config;
            }
            std::cout << report.algorithm << " at iteration " << report.iteration << " ("
                      << report.evaluations << " evaluations)\n"
                      << "coverage " << json(report.coverage).dump() << " ("
                      << report.cells.size() << "/" << report.total_cells << " cells"
                      << (report.projected ? ", projected" : "") << ")\n"
                      << "qd-score " << json(report.qd_score).dump() << "\n";
            if (report.resolution.size() >= 2) {
                std::cout << "heatmap over axes " << axes[0] << "," << axes[1] << ":\n"
                          << heatmap_csv(heatmap_export(report, axes[0], axes[1]));
            }
            return runner::exit_ok;
        }
        if (*srv) {
            service::SteeringService steering;
            std::cout << "serving on http://" << host << ":" << port << "\n" << std::flush;
            return service::serve(steering, host, port) ? runner::exit_ok : runner::exit_run_failed;
        }
    } catch (const ConfigError& e) {
        print_errors({e});
        return runner::exit_bad_config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return runner::exit_run_failed;
    }
    return runner::exit_ok;
}
