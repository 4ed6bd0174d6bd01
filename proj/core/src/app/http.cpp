#include "illuminate/service/http.hpp"

#include <charconv>

#include "httplib.h"

namespace illuminate::service {

namespace {

void reply(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void reply_error(httplib::Response& res, int status, const std::string& code,
                 const std::string& message, const std::string& field = {}) {
    json err = {{"code", code}, {"message", message}};
    if (!field.empty()) err["field"] = field;
    reply(res, status, {{"error", std::move(err)}});
}

// Runs a handler and maps exceptions onto error payloads.
template <class F>
void guarded(httplib::Response& res, F&& f) {
    try {
        f();
    } catch (const NotFound& e) {
        reply_error(res, 404, "not_found", e.what());
    } catch (const Conflict& e) {
        reply_error(res, 409, "conflict", e.what());
    } catch (const ConfigError& e) {
        reply_error(res, 400, "invalid_config", e.what(), e.field());
    } catch (const Unsupported& e) {
        reply_error(res, 422, "unsupported", e.what());
    } catch (const ContractViolation& e) {
        reply_error(res, 400, "invalid_argument", e.what());
    } catch (const json::exception& e) {
        reply_error(res, 400, "invalid_argument", std::string("bad request body: ") + e.what());
    } catch (const Error& e) {
        reply_error(res, 500, "run_failed", e.what());
    }
}

json parse_body(const httplib::Request& req) {
    if (req.body.empty()) return json::object();
    return json::parse(req.body);
}

std::size_t parse_index(std::string_view text, const char* what) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || p != text.data() + text.size() || text.empty())
        throw ContractViolation(std::string("invalid ") + what + " '" + std::string(text) + "'");
    return v;
}

} // namespace

void register_routes(httplib::Server& server, SteeringService& service) {
    server.Post("/runs", [&](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            json body;
            try {
                body = parse_body(req);
            } catch (const json::exception& e) {
                throw ConfigError("config", std::string("malformed JSON: ") + e.what());
            }
            const auto id = service.start_run(body);
            reply(res, 201, {{"id", id}, {"iteration", service.snapshot(id)->iteration}});
        });
    });

    server.Post(R"(/runs/([^/]+)/step)", [&](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            const auto body = parse_body(req);
            if (!body.contains("generations") || !body["generations"].is_number_integer() ||
                body["generations"].get<std::int64_t>() < 0)
                throw ContractViolation("'generations' must be a non-negative integer");
            const auto id = req.matches[1].str();
            const auto iteration = service.step_run(id, body["generations"].get<std::size_t>());
            reply(res, 200, {{"id", id}, {"iteration", iteration},
                             {"finished", service.snapshot(id)->finished}});
        });
    });

    server.Post(R"(/runs/([^/]+)/preferences)",
                [&](const httplib::Request& req, httplib::Response& res) {
                    guarded(res, [&] {
                        const auto body = parse_body(req);
                        if (!body.contains("cell") || !body["cell"].is_array())
                            throw ContractViolation("'cell' must be an array of indices");
                        if (!body.contains("weight") || !body["weight"].is_number())
                            throw ContractViolation("'weight' must be a number");
                        CellIndex cell;
                        for (const auto& c : body["cell"]) {
                            if (!c.is_number_integer() || c.get<std::int64_t>() < 0)
                                throw ContractViolation("cell indices must be non-negative integers");
                            cell.coords.push_back(c.get<std::size_t>());
                        }
                        const auto id = req.matches[1].str();
                        service.set_preference(id, cell, body["weight"].get<double>());
                        reply(res, 200, {{"acknowledged", true},
                                         {"applies_after_iteration", service.snapshot(id)->iteration}});
                    });
                });

    server.Get(R"(/runs/([^/]+)/archive)", [&](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            std::size_t a = 0, b = 1;
            if (req.has_param("ax")) {
                const std::string ax = req.get_param_value("ax");
                const auto comma = ax.find(',');
                if (comma == std::string::npos)
                    throw ContractViolation("ax must be two comma-separated axis indices");
                a = parse_index(std::string_view(ax).substr(0, comma), "axis");
                b = parse_index(std::string_view(ax).substr(comma + 1), "axis");
            }
            reply(res, 200, service.archive_payload(req.matches[1].str(), a, b));
        });
    });

    server.Get(R"(/runs/([^/]+)/individuals/([^/]+))",
               [&](const httplib::Request& req, httplib::Response& res) {
                   guarded(res, [&] {
                       const auto id = req.matches[1].str();
                       std::size_t iid = 0;
                       try {
                           iid = parse_index(req.matches[2].str(), "individual id");
                       } catch (const ContractViolation& e) {
                           throw NotFound(e.what());
                       }
                       reply(res, 200, service.individual_payload(id, iid));
                   });
               });

    server.Get(R"(/runs/([^/]+)/metrics)", [&](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] { reply(res, 200, service.metrics_payload(req.matches[1].str())); });
    });
}

bool serve(SteeringService& service, const std::string& host, int port) {
    httplib::Server server;
    register_routes(server, service);
    return server.listen(host, port);
}

} // namespace illuminate::service
