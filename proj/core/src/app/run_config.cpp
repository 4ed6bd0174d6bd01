#include "illuminate/runner/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "illuminate/domains/deceptive.hpp"
#include "illuminate/domains/tile_level.hpp"

namespace illuminate::runner {

namespace {

// Collects field-level problems while reading a JSON object into typed fields.
class Reader {
public:
    explicit Reader(std::vector<ConfigError>& errors) : errors_(errors) {}

    void fail(const std::string& field, const std::string& message) {
        errors_.emplace_back(field, message);
    }

    void no_unknown_keys(const json& obj, const std::string& prefix,
                         std::initializer_list<const char*> known) {
        std::set<std::string> allowed(known.begin(), known.end());
        for (const auto& [key, _] : obj.items())
            if (!allowed.count(key)) fail(prefix + key, "unknown field");
    }

    void read(const json& obj, const char* key, const std::string& path, std::size_t& out) {
        if (!obj.contains(key)) return;
        const auto& v = obj[key];
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
            return fail(path, "expected a non-negative integer");
        out = v.get<std::size_t>();
    }
    void read(const json& obj, const char* key, const std::string& path, double& out) {
        if (!obj.contains(key)) return;
        if (!obj[key].is_number()) return fail(path, "expected a number");
        out = obj[key].get<double>();
    }
    void read(const json& obj, const char* key, const std::string& path, bool& out) {
        if (!obj.contains(key)) return;
        if (!obj[key].is_boolean()) return fail(path, "expected true or false");
        out = obj[key].get<bool>();
    }
    void read(const json& obj, const char* key, const std::string& path, std::string& out) {
        if (!obj.contains(key)) return;
        if (!obj[key].is_string()) return fail(path, "expected a string");
        out = obj[key].get<std::string>();
    }
    void read(const json& obj, const char* key, const std::string& path,
              std::vector<std::size_t>& out) {
        if (!obj.contains(key)) return;
        const auto& v = obj[key];
        if (!v.is_array()) return fail(path, "expected an array of non-negative integers");
        std::vector<std::size_t> tmp;
        for (const auto& x : v) {
            if (!x.is_number_integer() || x.get<std::int64_t>() < 0)
                return fail(path, "expected an array of non-negative integers");
            tmp.push_back(x.get<std::size_t>());
        }
        out = std::move(tmp);
    }

    bool object(const json& parent, const char* key, const std::string& path) {
        if (!parent.contains(key)) return false;
        if (!parent[key].is_object()) {
            fail(path, "expected an object");
            return false;
        }
        return true;
    }

private:
    std::vector<ConfigError>& errors_;
};

EngineConfig read_engine(const json& e, Reader& r) {
    EngineConfig c;
    r.no_unknown_keys(e, "engine.",
                      {"algorithm", "budget", "init_count", "batch_size", "population_size",
                       "grid", "reference_resolution", "novelty_k", "novelty_threshold",
                       "surprise_centroids", "kmeans_iterations", "sliding_interval",
                       "competition_k", "cell_capacity", "crossover_rate", "target_coverage",
                       "archive_infeasible", "selection_floor"});
    if (!e.contains("algorithm")) {
        r.fail("engine.algorithm", "required");
    } else if (!e["algorithm"].is_string()) {
        r.fail("engine.algorithm", "expected a string");
    } else {
        try {
            c.algorithm = algorithm_from_string(e["algorithm"].get<std::string>());
        } catch (const ConfigError& err) {
            const std::string what = err.what();
            r.fail("engine.algorithm", what.substr(err.field().size() + 2));
        }
    }
    r.read(e, "budget", "engine.budget", c.budget);
    r.read(e, "init_count", "engine.init_count", c.init_count);
    r.read(e, "batch_size", "engine.batch_size", c.batch_size);
    r.read(e, "population_size", "engine.population_size", c.population_size);
    r.read(e, "reference_resolution", "engine.reference_resolution", c.reference_resolution);
    r.read(e, "novelty_k", "engine.novelty_k", c.novelty_k);
    r.read(e, "novelty_threshold", "engine.novelty_threshold", c.novelty_threshold);
    r.read(e, "surprise_centroids", "engine.surprise_centroids", c.surprise_centroids);
    r.read(e, "kmeans_iterations", "engine.kmeans_iterations", c.kmeans_iterations);
    r.read(e, "sliding_interval", "engine.sliding_interval", c.sliding_interval);
    r.read(e, "competition_k", "engine.competition_k", c.competition_k);
    r.read(e, "cell_capacity", "engine.cell_capacity", c.cell_capacity);
    r.read(e, "crossover_rate", "engine.crossover_rate", c.crossover_rate);
    r.read(e, "archive_infeasible", "engine.archive_infeasible", c.archive_infeasible);
    r.read(e, "selection_floor", "engine.selection_floor", c.selection_floor);
    if (e.contains("target_coverage") && !e["target_coverage"].is_null()) {
        double t = 0.0;
        r.read(e, "target_coverage", "engine.target_coverage", t);
        c.target_coverage = t;
    }
    if (r.object(e, "grid", "engine.grid")) {
        const auto& g = e["grid"];
        r.no_unknown_keys(g, "engine.grid.", {"kind", "resolution"});
        GridConfig grid;
        std::string kind = "uniform";
        r.read(g, "kind", "engine.grid.kind", kind);
        try {
            grid.kind = partition_kind_from_string(kind);
        } catch (const Error&) {
            r.fail("engine.grid.kind", "expected uniform, binary or sliding");
        }
        r.read(g, "resolution", "engine.grid.resolution", grid.resolution);
        c.grid = std::move(grid);
    }
    return c;
}

} // namespace

std::vector<ConfigError> config_errors(const json& doc) {
    std::vector<ConfigError> errors;
    Reader r(errors);
    if (!doc.is_object()) {
        r.fail("config", "expected a JSON object");
        return errors;
    }
    r.no_unknown_keys(doc, "", {"domain", "engine", "seed", "out", "report_every"});

    RunConfig c;
    if (r.object(doc, "domain", "domain")) {
        c.domain.params = doc["domain"];
        if (!c.domain.params.contains("name"))
            r.fail("domain.name", "required");
        else
            r.read(c.domain.params, "name", "domain.name", c.domain.name);
        c.domain.params.erase("name");
    } else if (!doc.contains("domain")) {
        r.fail("domain", "required");
    }
    if (r.object(doc, "engine", "engine"))
        c.engine = read_engine(doc["engine"], r);
    else if (!doc.contains("engine"))
        r.fail("engine", "required");
    r.read(doc, "seed", "seed", c.seed);
    r.read(doc, "out", "out", c.out);
    r.read(doc, "report_every", "report_every", c.report_every);
    if (!errors.empty()) return errors;

    std::shared_ptr<const Domain> domain;
    try {
        domain = make_domain(c.domain);
    } catch (const ConfigError& e) {
        errors.push_back(e);
        return errors;
    }
    for (const auto& e : validation_errors(c.engine, *domain)) {
        const std::string what = e.what();
        errors.emplace_back("engine." + e.field(), what.substr(e.field().size() + 2));
    }
    return errors;
}

RunConfig parse_run_config(const json& doc) {
    auto errors = config_errors(doc);
    if (!errors.empty()) throw errors.front();
    std::vector<ConfigError> none;
    Reader r(none);
    RunConfig c;
    c.domain.params = doc["domain"];
    c.domain.name = c.domain.params["name"].get<std::string>();
    c.domain.params.erase("name");
    c.engine = read_engine(doc["engine"], r);
    r.read(doc, "seed", "seed", c.seed);
    r.read(doc, "out", "out", c.out);
    r.read(doc, "report_every", "report_every", c.report_every);
    return c;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot read '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw ConfigError("config", std::string("malformed JSON: ") + e.what());
    }
}

json to_json(const EngineConfig& c) {
    json j = {
        {"algorithm", to_string(c.algorithm)},
        {"budget", c.budget},
        {"init_count", c.init_count},
        {"batch_size", c.batch_size},
        {"population_size", c.population_size},
        {"reference_resolution", c.reference_resolution},
        {"novelty_k", c.novelty_k},
        {"novelty_threshold", c.novelty_threshold},
        {"surprise_centroids", c.surprise_centroids},
        {"kmeans_iterations", c.kmeans_iterations},
        {"sliding_interval", c.sliding_interval},
        {"competition_k", c.competition_k},
        {"cell_capacity", c.cell_capacity},
        {"crossover_rate", c.crossover_rate},
        {"target_coverage", c.target_coverage ? json(*c.target_coverage) : json(nullptr)},
        {"archive_infeasible", c.archive_infeasible},
        {"selection_floor", c.selection_floor},
    };
    if (c.grid)
        j["grid"] = {{"kind", to_string(c.grid->kind)}, {"resolution", c.grid->resolution}};
    return j;
}

json to_json(const RunConfig& c) {
    json domain = c.domain.params;
    domain["name"] = c.domain.name;
    return {{"domain", domain},
            {"engine", to_json(c.engine)},
            {"seed", c.seed},
            {"out", c.out},
            {"report_every", c.report_every}};
}

std::shared_ptr<const Domain> make_domain(const DomainSpec& spec) {
    std::vector<ConfigError> errors;
    Reader r(errors);
    const json& p = spec.params;
    if (!p.is_object()) throw ConfigError("domain", "expected an object");

    std::shared_ptr<const Domain> domain;
    try {
        if (spec.name == "deceptive") {
            r.no_unknown_keys(p, "domain.",
                              {"dims", "target", "moat_inner", "moat_outer", "moat_factor",
                               "scale", "gene_mutation_rate", "mutation_sigma", "start_corner"});
            domains::DeceptiveConfig c;
            r.read(p, "dims", "domain.dims", c.dims);
            r.read(p, "target", "domain.target", c.target);
            r.read(p, "moat_inner", "domain.moat_inner", c.moat_inner);
            r.read(p, "moat_outer", "domain.moat_outer", c.moat_outer);
            r.read(p, "moat_factor", "domain.moat_factor", c.moat_factor);
            r.read(p, "scale", "domain.scale", c.scale);
            r.read(p, "gene_mutation_rate", "domain.gene_mutation_rate", c.gene_mutation_rate);
            r.read(p, "mutation_sigma", "domain.mutation_sigma", c.mutation_sigma);
            r.read(p, "start_corner", "domain.start_corner", c.start_corner);
            if (errors.empty()) domain = std::make_shared<domains::DeceptiveDomain>(c);
        } else if (spec.name == "level") {
            r.no_unknown_keys(p, "domain.",
                              {"width", "height", "wall_probability", "treasure_probability",
                               "mutation_flips", "flip_wall", "flip_floor", "flip_treasure",
                               "features"});
            domains::LevelDomainConfig c;
            r.read(p, "width", "domain.width", c.width);
            r.read(p, "height", "domain.height", c.height);
            r.read(p, "wall_probability", "domain.wall_probability", c.wall_probability);
            r.read(p, "treasure_probability", "domain.treasure_probability",
                   c.treasure_probability);
            r.read(p, "mutation_flips", "domain.mutation_flips", c.mutation_flips);
            r.read(p, "flip_wall", "domain.flip_wall", c.flip_wall);
            r.read(p, "flip_floor", "domain.flip_floor", c.flip_floor);
            r.read(p, "flip_treasure", "domain.flip_treasure", c.flip_treasure);
            std::string features = "continuous";
            r.read(p, "features", "domain.features", features);
            if (features == "binary")
                c.features = domains::LevelFeatures::binary;
            else if (features != "continuous")
                r.fail("domain.features", "expected continuous or binary");
            if (errors.empty()) domain = std::make_shared<domains::LevelDomain>(c);
        } else {
            r.fail("domain.name", "unknown domain '" + spec.name + "' (expected level or deceptive)");
        }
    } catch (const ContractViolation& e) {
        throw ConfigError("domain", e.what());
    }
    if (!errors.empty()) throw errors.front();
    return domain;
}

} // namespace illuminate::runner
