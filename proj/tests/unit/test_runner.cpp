#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "illuminate/runner/runner.hpp"

using namespace illuminate;
using namespace illuminate::runner;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("illuminate-test-runner-" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<json> lines(const fs::path& p) {
    std::vector<json> out;
    std::ifstream in(p);
    for (std::string line; std::getline(in, line);)
        if (!line.empty()) out.push_back(json::parse(line));
    return out;
}

json minimal_me(std::size_t budget = 1000) {
    return json{{"domain", {{"name", "level"}, {"width", 8}, {"height", 8}}},
                {"engine",
                 {{"algorithm", "ME"},
                  {"budget", budget},
                  {"init_count", 100},
                  {"batch_size", 50},
                  {"grid", {{"kind", "uniform"}, {"resolution", {5, 5, 5}}}}}},
                {"seed", 3}};
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(ILLUMINATE_CLI) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

bool has_field(const std::vector<ConfigError>& errors, const std::string& field) {
    for (const auto& e : errors)
        if (e.field() == field) return true;
    return false;
}

} // namespace

TEST_CASE("config parsing fills defaults and round-trips") {
    const auto c = parse_run_config(minimal_me());
    CHECK(c.domain.name == "level");
    CHECK(c.engine.algorithm == Algorithm::me);
    CHECK(c.engine.grid->resolution == std::vector<std::size_t>{5, 5, 5});
    CHECK(c.seed == 3);
    CHECK(c.engine.novelty_k == 15);
    const auto again = parse_run_config(to_json(c));
    CHECK(to_json(again) == to_json(c));
}

TEST_CASE("config errors name their fields") {
    auto doc = minimal_me();
    doc["engine"]["algorithm"] = "CNS-FINS";
    CHECK(has_field(config_errors(doc), "engine.grid"));

    doc = minimal_me();
    doc["engine"]["budget"] = -3;
    CHECK(has_field(config_errors(doc), "engine.budget"));

    doc = minimal_me();
    doc["colour"] = "blue";
    CHECK(has_field(config_errors(doc), "colour"));

    doc = minimal_me();
    doc["domain"]["name"] = "maze";
    CHECK_FALSE(config_errors(doc).empty());

    doc = minimal_me();
    doc["domain"]["wall_probability"] = 1.5;
    CHECK_FALSE(config_errors(doc).empty());

    doc = minimal_me();
    doc["engine"]["grid"]["resolution"] = {5, 5};
    CHECK(has_field(config_errors(doc), "engine.grid.resolution"));

    CHECK_FALSE(config_errors(json::array()).empty());
    CHECK(config_errors(minimal_me()).empty());
    CHECK_THROWS_AS(load_json_file("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("a run writes every artifact") {
    auto config = parse_run_config(minimal_me());
    config.out = scratch("artifacts").string();
    config.report_every = 5;
    std::ostringstream log;
    const auto result = execute_run(config, log);
    REQUIRE(result.exit_code == exit_ok);
    const fs::path out = config.out;
    for (const char* f : {"config.json", "archive.jsonl", "metrics.jsonl", "lineage.jsonl", "report.json",
                          "report.csv", "heatmap.csv", "status.json"})
        CHECK(fs::exists(out / f));
    CHECK(fs::exists(out / "reports" / "report-5.json"));

    const auto& engine = *result.engine;
    CHECK(lines(out / "metrics.jsonl").size() == engine.state().iteration);
    CHECK(lines(out / "lineage.jsonl").size() == engine.state().history.size());
    CHECK(lines(out / "archive.jsonl").size() == engine.retained().size());
    const auto status = json::parse(slurp(out / "status.json"));
    CHECK(status["status"] == "complete");
    CHECK(status["evaluations"] == 1000);

    const auto report = report_from_json(json::parse(slurp(out / "report.json")));
    CHECK(report.coverage == engine.state().metrics.back().coverage);
    CHECK(report.cells.size() == engine.retained().size());
}

TEST_CASE("archived genomes re-evaluate to their recorded evaluation") {
    auto config = parse_run_config(minimal_me(600));
    config.out = scratch("reeval").string();
    std::ostringstream log;
    REQUIRE(execute_run(config, log).exit_code == exit_ok);
    const auto domain = make_domain(config.domain);
    const auto records = lines(fs::path(config.out) / "archive.jsonl");
    REQUIRE_FALSE(records.empty());
    for (const auto& r : records) {
        const auto genome = domain->parse(r["genome"].get<std::string>());
        CHECK(domain->evaluate(genome) == evaluation_from_json(r["evaluation"]));
    }
}

TEST_CASE("an unusable output directory fails the run") {
    const auto blocker = scratch("blocker");
    std::ofstream(blocker.string()) << "file";
    auto config = parse_run_config(minimal_me(200));
    config.out = (blocker / "inner").string();
    std::ostringstream log;
    CHECK(execute_run(config, log).exit_code == exit_run_failed);
    fs::remove(blocker);
}

TEST_CASE("compare tabulates and checks compatibility") {
    auto me = parse_run_config(minimal_me(300));
    auto doc = minimal_me(300);
    doc["engine"] = {{"algorithm", "NS-LC"}, {"budget", 300}, {"init_count", 40}, {"population_size", 20}};
    auto ns = parse_run_config(doc);

    const auto one = compare({me}, {1});
    REQUIRE(one.size() == 1);
    CHECK(one[0].algorithm == "ME");

    const auto twice = compare({me, me}, {4});
    REQUIRE(twice.size() == 2);
    CHECK(twice[0] == twice[1]);

    const auto rows = compare({me, ns}, {1, 2, 3}, {4, 4, 4});
    CHECK(rows.size() == 6);
    const auto csv = compare_csv(rows);
    CHECK(csv.rfind("algorithm,seed,coverage,qd_score,best_fitness\n", 0) == 0);
    std::vector<double> cov;
    for (const auto& r : rows)
        if (r.algorithm == "NS-LC") cov.push_back(r.coverage);
    std::sort(cov.begin(), cov.end());
    std::ostringstream median_row;
    median_row << "NS-LC,median," << json(cov[1]).dump();
    CHECK(csv.find(median_row.str()) != std::string::npos);

    auto other = me;
    other.domain.name = "deceptive";
    other.domain.params = json::object();
    other.engine.grid->resolution = {5, 5};
    CHECK_THROWS_AS(compare({me, other}, {1}), ConfigError);
    auto longer = me;
    longer.engine.budget = 400;
    CHECK_THROWS_AS(compare({me, longer}, {1}), ConfigError);
}

TEST_CASE("median") {
    CHECK(median({3, 1, 2}) == 2);
    CHECK(median({4, 1, 2, 3}) == 2.5);
    CHECK_THROWS_AS(median({}), ContractViolation);
}

TEST_CASE("command-line exit codes and reproducibility") {
    const auto dir = scratch("cli");
    fs::create_directories(dir);
    std::ofstream(dir / "good.json") << minimal_me(400).dump();
    auto cns = minimal_me(400);
    cns["engine"]["algorithm"] = "CNS-FINS";
    std::ofstream(dir / "cns_grid.json") << cns.dump();
    std::ofstream(dir / "broken.json") << "{ not json";

    CHECK(run_cli("run --config " + (dir / "good.json").string() + " --out " + (dir / "a").string()) == 0);
    CHECK(run_cli("run --config " + (dir / "good.json").string() + " --out " + (dir / "b").string()) == 0);
    CHECK(slurp(dir / "a" / "archive.jsonl") == slurp(dir / "b" / "archive.jsonl"));
    CHECK_FALSE(slurp(dir / "a" / "archive.jsonl").empty());

    CHECK(run_cli("run --config " + (dir / "cns_grid.json").string()) == exit_bad_config);
    CHECK(run_cli("run --config " + (dir / "broken.json").string()) == exit_bad_config);
    CHECK(run_cli("run --config " + (dir / "good.json").string() + " --budget 10") == exit_bad_config);
    CHECK(run_cli("report --out " + (dir / "a").string()) == 0);
    CHECK(run_cli("compare --config " + (dir / "good.json").string() + " --seeds 1,2 --budget 200 --out " +
                  (dir / "cmp.csv").string()) == 0);
    CHECK(fs::exists(dir / "cmp.csv"));
}

TEST_CASE("shipped example configs validate") {
    for (const auto& entry : fs::directory_iterator(ILLUMINATE_CONFIGS)) {
        CAPTURE(entry.path().string());
        CHECK(config_errors(load_json_file(entry.path().string())).empty());
    }
}
