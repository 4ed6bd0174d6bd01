#include "doctest.h"

#include <thread>

#include "httplib.h"
#include "illuminate/service/http.hpp"
#include "illuminate/service/steering.hpp"

using namespace illuminate;
using namespace illuminate::service;

namespace {

json me_config(std::size_t budget = 5000) {
    return json{{"domain", {{"name", "level"}, {"width", 8}, {"height", 8}}},
                {"engine",
                 {{"algorithm", "ME"},
                  {"budget", budget},
                  {"init_count", 50},
                  {"batch_size", 20},
                  {"grid", {{"kind", "uniform"}, {"resolution", {4, 4, 4}}}}}},
                {"seed", 2}};
}

json ns_config() {
    auto c = me_config();
    c["engine"] = {{"algorithm", "NS-LC"}, {"budget", 2000}, {"init_count", 30}, {"population_size", 20}};
    return c;
}

} // namespace

TEST_CASE("runs start paused and step on request") {
    SteeringService svc;
    const auto id = svc.start_run(me_config());
    CHECK(id == "1");
    CHECK(svc.snapshot(id)->iteration == 0);
    CHECK(svc.step_run(id, 0) == 0);
    CHECK(svc.step_run(id, 5) == 5);
    CHECK(svc.step_run(id, 5) == 10);
    CHECK(svc.snapshot(id)->iteration == 10);
    CHECK(svc.snapshot(id)->metrics.size() == 10);
    CHECK(svc.start_run(ns_config()) == "2");
    CHECK(svc.run_ids() == std::vector<std::string>{"1", "2"});
}

TEST_CASE("unknown runs and individuals") {
    SteeringService svc;
    CHECK_THROWS_AS(svc.step_run("7", 1), NotFound);
    CHECK_THROWS_AS(svc.snapshot("7"), NotFound);
    const auto id = svc.start_run(me_config());
    CHECK_THROWS_AS(svc.individual_payload(id, 0), NotFound);
    svc.step_run(id, 1);
    CHECK_NOTHROW(svc.individual_payload(id, 0));
    CHECK_THROWS_AS(svc.individual_payload(id, 100000), NotFound);
}

TEST_CASE("invalid configs are rejected at start") {
    SteeringService svc;
    auto bad = me_config();
    bad["engine"]["algorithm"] = "CSS";
    CHECK_THROWS_AS(svc.start_run(bad), ConfigError);
    CHECK(svc.run_ids().empty());
}

TEST_CASE("a second step while stepping conflicts") {
    SteeringService svc;
    const auto id = svc.start_run(me_config(400000));
    std::thread worker([&] { svc.step_run(id, 3000); });
    while (svc.snapshot(id)->iteration == 0) std::this_thread::yield();
    CHECK_THROWS_AS(svc.step_run(id, 1), Conflict);
    worker.join();
    CHECK_NOTHROW(svc.step_run(id, 1));
}

TEST_CASE("preferences") {
    SteeringService svc;
    const auto me = svc.start_run(me_config());
    const auto ns = svc.start_run(ns_config());
    CHECK_THROWS_AS(svc.set_preference(ns, CellIndex{{0, 0}}, 2.0), Unsupported);
    CHECK_THROWS_AS(svc.set_preference(me, CellIndex{{0, 0, 0}}, 0.5), ContractViolation);
    CHECK_THROWS_AS(svc.set_preference(me, CellIndex{{9, 0, 0}}, 2.0), ContractViolation);

    svc.step_run(me, 1);
    // Pick a cell no elite occupies: accepted and inert.
    const auto snap = svc.snapshot(me);
    std::size_t empty = 0;
    for (const auto& c : snap->report.cells)
        if (c.flat == empty) ++empty;
    const auto cell = unflatten(empty, snap->report.resolution);
    CHECK_NOTHROW(svc.set_preference(me, cell, 5.0));
    CHECK(svc.snapshot(me)->preference[empty] == 1.0);  // queued until the next boundary
    svc.step_run(me, 1);
    CHECK(svc.snapshot(me)->preference[empty] == 5.0);

    const auto m = svc.metrics_payload(me);
    CHECK(m["preferences"].size() == 1);
    CHECK(m["selection_total"].get<std::uint64_t>() == 20);
}

TEST_CASE("archive and individual payloads") {
    SteeringService svc;
    const auto id = svc.start_run(me_config());
    auto payload = svc.archive_payload(id, 0, 1);
    CHECK(payload["coverage"] == 0.0);
    CHECK(payload["cells"].empty());
    CHECK(payload["shape"] == json({4, 4}));
    for (const auto& row : payload["heatmap"])
        for (const auto& v : row) CHECK(v.is_null());

    svc.step_run(id, 20);
    payload = svc.archive_payload(id, 0, 2);
    CHECK(payload["coverage"].get<double>() == svc.snapshot(id)->report.coverage);
    CHECK(payload["coverage"].get<double>() == svc.snapshot(id)->metrics.back().coverage);
    CHECK_THROWS_AS(svc.archive_payload(id, 0, 3), ContractViolation);

    for (const auto& cell : payload["cells"]) {
        const auto ind = svc.individual_payload(id, cell["elite"].get<IndividualId>());
        const auto& nodes = ind["lineage"]["nodes"];
        REQUIRE_FALSE(nodes.empty());
        std::size_t seeds = 0;
        for (const auto& n : nodes) {
            if (n["parents"].empty()) {
                ++seeds;
                CHECK(n["operation"] == "seed");
                CHECK(n["generation"] == 0);
            }
        }
        CHECK(seeds >= 1);
        CHECK(nodes.back()["id"] == cell["elite"]);
    }
}

TEST_CASE("HTTP endpoints") {
    SteeringService svc;
    httplib::Server server;
    register_routes(server, svc);
    const int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();
    httplib::Client client("127.0.0.1", port);

    auto res = client.Post("/runs", me_config().dump(), "application/json");
    REQUIRE(res);
    CHECK(res->status == 201);
    const auto id = json::parse(res->body)["id"].get<std::string>();

    res = client.Get("/runs/" + id + "/archive");
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(json::parse(res->body)["cells"].empty());

    res = client.Post("/runs/" + id + "/step", R"({"generations": 4})", "application/json");
    REQUIRE(res);
    CHECK(json::parse(res->body)["iteration"] == 4);

    res = client.Post("/runs/" + id + "/preferences", R"({"cell": [1, 1, 1], "weight": 3})",
                      "application/json");
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(json::parse(res->body)["acknowledged"] == true);

    res = client.Post("/runs/" + id + "/preferences", R"({"cell": [1, 1, 1], "weight": 0.2})",
                      "application/json");
    REQUIRE(res);
    CHECK(res->status == 400);
    CHECK(json::parse(res->body)["error"]["code"] == "invalid_argument");

    res = client.Get("/runs/" + id + "/archive?ax=0,2");
    REQUIRE(res);
    const auto archive = json::parse(res->body);
    CHECK(archive["axes"] == json({0, 2}));
    REQUIRE_FALSE(archive["cells"].empty());

    const auto elite = archive["cells"][0]["elite"].get<IndividualId>();
    res = client.Get("/runs/" + id + "/individuals/" + std::to_string(elite));
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(json::parse(res->body)["lineage"]["root"] == elite);

    res = client.Get("/runs/" + id + "/metrics");
    REQUIRE(res);
    CHECK(json::parse(res->body)["records"].size() == 4);

    res = client.Get("/runs/404/metrics");
    REQUIRE(res);
    CHECK(res->status == 404);
    CHECK(json::parse(res->body)["error"]["code"] == "not_found");

    res = client.Get("/runs/" + id + "/individuals/abc");
    REQUIRE(res);
    CHECK(res->status == 404);

    auto bad = me_config();
    bad["engine"]["algorithm"] = "CNS-FINS";
    res = client.Post("/runs", bad.dump(), "application/json");
    REQUIRE(res);
    CHECK(res->status == 400);
    const auto err = json::parse(res->body)["error"];
    CHECK(err["code"] == "invalid_config");
    CHECK(err["field"] == "engine.grid");

    res = client.Post("/runs", ns_config().dump(), "application/json");
    const auto ns = json::parse(res->body)["id"].get<std::string>();
    res = client.Post("/runs/" + ns + "/preferences", R"({"cell": [0, 0], "weight": 2})", "application/json");
    REQUIRE(res);
    CHECK(res->status == 422);
    CHECK(json::parse(res->body)["error"]["code"] == "unsupported");

    res = client.Post("/runs", "{oops", "application/json");
    REQUIRE(res);
    CHECK(res->status == 400);

    server.stop();
    thread.join();
}
