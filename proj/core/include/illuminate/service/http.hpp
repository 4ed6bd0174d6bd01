#pragma once

#include <string>

#include "illuminate/service/steering.hpp"

namespace httplib {
class Server;
}

namespace illuminate::service {

/// Registers the JSON endpoints on `server`:
///
///   POST /runs                         run config -> {"id", "iteration"}
///   POST /runs/{id}/step               {"generations": n} -> {"iteration", "finished"}
///   POST /runs/{id}/preferences        {"cell": [..], "weight": w} -> {"acknowledged"}
///   GET  /runs/{id}/archive?ax=i,j     heatmap payload
///   GET  /runs/{id}/individuals/{iid}  genome, evaluation, lineage
///   GET  /runs/{id}/metrics            metrics log, selection counts, preferences
///
/// Errors answer {"error": {"code", "message"[, "field"]}} with codes not_found (404),
/// conflict (409), invalid_config (400), invalid_argument (400), unsupported (422).
void register_routes(httplib::Server& server, SteeringService& service);

/// Blocks serving on host:port until the server is stopped.
bool serve(SteeringService& service, const std::string& host, int port);

} // namespace illuminate::service
