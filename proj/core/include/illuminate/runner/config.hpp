#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

#include "illuminate/core/domain.hpp"
#include "illuminate/core/error.hpp"
#include "illuminate/engines/config.hpp"

namespace illuminate::runner {

using json = nlohmann::json;

/// Domain name ("level" or "deceptive") plus its parameters, as given in the config file.
struct DomainSpec {
    std::string name = "deceptive";
    json params = json::object();
};

struct RunConfig {
    DomainSpec domain;
    EngineConfig engine;
    std::uint64_t seed = 1;
    std::string out = "illuminate-out";
    /// Write an intermediate report every this many iterations; 0 writes only the final one.
    std::size_t report_every = 0;
};

/// Every field-level problem in a config document; empty when it parses and validates.
std::vector<ConfigError> config_errors(const json& doc);

/// Parses and validates. Throws the first ConfigError found.
RunConfig parse_run_config(const json& doc);

/// Reads a JSON file. Throws ConfigError("config", ...) when unreadable or malformed.
json load_json_file(const std::string& path);

/// Canonical JSON form (all defaults filled in); parse_run_config(to_json(c)) == c.
json to_json(const RunConfig& config);
json to_json(const EngineConfig& config);

/// Builds a built-in domain. Throws ConfigError naming the offending "domain.*" field.
std::shared_ptr<const Domain> make_domain(const DomainSpec& spec);

} // namespace illuminate::runner
