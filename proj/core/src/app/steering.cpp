#include "illuminate/service/steering.hpp"

#include <algorithm>

namespace illuminate::service {

struct SteeringService::Session {
    std::string id;
    std::unique_ptr<Engine> engine;  // touched only by the stepping controller
    std::shared_ptr<const Domain> domain;
    bool map_based = false;
    std::vector<std::size_t> resolution;

    std::atomic<bool> stepping{false};

    std::mutex pending_mutex;
    std::vector<std::pair<std::size_t, double>> pending;  // flat cell, weight

    mutable std::shared_mutex snapshot_mutex;
    std::shared_ptr<const RunSnapshot> latest;
    RunHistory mirror;  // individuals visible at the latest boundary
};

namespace {

// Clears the stepping flag however the step ends.
struct SteppingGuard {
    std::atomic<bool>& flag;
    ~SteppingGuard() { flag = false; }
};

} // namespace

void SteeringService::publish(Session& s) {
    const Engine& engine = *s.engine;
    const auto& state = engine.state();
    auto snap = std::make_shared<RunSnapshot>();
    snap->run_id = s.id;
    snap->algorithm = std::string(to_string(engine.algorithm()));
    snap->map_based = s.map_based;
    snap->finished = state.finished;
    snap->iteration = state.iteration;
    snap->evaluations = state.evaluations;
    snap->report = illuminate::snapshot(engine);
    snap->metrics = state.metrics;
    snap->preference = state.preference;
    snap->selection_counts = state.selection_counts;
    snap->history_size = state.history.size();

    std::unique_lock lock(s.snapshot_mutex);
    for (std::size_t id = s.mirror.size(); id < state.history.size(); ++id)
        s.mirror.commit(state.history[id]);
    s.latest = std::move(snap);
}

std::string SteeringService::start_run(const json& config) {
    return start_run(runner::parse_run_config(config));
}

std::string SteeringService::start_run(const runner::RunConfig& config) {
    auto session = std::make_shared<Session>();
    session->domain = runner::make_domain(config.domain);
    validate(config.engine, *session->domain);
    session->engine = make_engine(config.engine, session->domain, config.seed);
    if (const auto& p = session->engine->state().partition) {
        session->map_based = true;
        session->resolution.assign(p->resolution().begin(), p->resolution().end());
    }

    std::lock_guard lock(runs_mutex_);
    session->id = std::to_string(next_id_++);
    publish(*session);
    runs_[session->id] = session;
    return session->id;
}

std::shared_ptr<SteeringService::Session> SteeringService::find(const std::string& run_id) const {
    std::lock_guard lock(runs_mutex_);
    auto it = runs_.find(run_id);
    if (it == runs_.end()) throw NotFound("no run with id '" + run_id + "'");
    return it->second;
}

std::vector<std::string> SteeringService::run_ids() const {
    std::lock_guard lock(runs_mutex_);
    std::vector<std::string> ids;
    for (const auto& [id, _] : runs_) ids.push_back(id);
    return ids;
}

std::size_t SteeringService::step_run(const std::string& run_id, std::size_t n) {
    auto s = find(run_id);
    if (s->stepping.exchange(true)) throw Conflict("run " + run_id + " is already stepping");
    SteppingGuard guard{s->stepping};

    for (std::size_t i = 0; i < n && !s->engine->finished(); ++i) {
        {
            std::lock_guard lock(s->pending_mutex);
            for (const auto& [flat, weight] : s->pending)
                s->engine->set_preference(unflatten(flat, s->resolution), weight);
            s->pending.clear();
        }
        s->engine->step(1);
        publish(*s);
    }
    return s->engine->state().iteration;
}

void SteeringService::set_preference(const std::string& run_id, const CellIndex& cell,
                                     double weight) {
    auto s = find(run_id);
    if (!s->map_based)
        throw Unsupported("run " + run_id + " (" + std::string(to_string(s->engine->algorithm())) +
                          ") has no feature map to steer");
    if (!std::isfinite(weight) || weight < 1.0)
        throw ContractViolation("preference weight must be a finite value >= 1");
    if (!within(cell, s->resolution))
        throw ContractViolation("cell " + to_string(cell) + " is outside the feature map");
    std::lock_guard lock(s->pending_mutex);
    s->pending.emplace_back(flat_index(cell, s->resolution), weight);
}

std::shared_ptr<const RunSnapshot> SteeringService::snapshot(const std::string& run_id) const {
    auto s = find(run_id);
    std::shared_lock lock(s->snapshot_mutex);
    return s->latest;
}

json SteeringService::archive_payload(const std::string& run_id, std::size_t axis_a,
                                      std::size_t axis_b) const {
    const auto snap = snapshot(run_id);
    const auto& report = snap->report;
    const Heatmap heatmap = heatmap_export(report, axis_a, axis_b);

    json matrix = json::array();
    for (const auto& row : heatmap.values) {
        json r = json::array();
        for (const auto& v : row) r.push_back(v ? json(*v) : json(nullptr));
        matrix.push_back(std::move(r));
    }
    json cells = json::array();
    for (const auto& c : report.cells) {
        json cell = {{"cell", c.cell.coords}, {"flat", c.flat}, {"elite", c.elite},
                     {"fitness", c.fitness}};
        if (snap->map_based) cell["preference"] = snap->preference.at(c.flat);
        cells.push_back(std::move(cell));
    }
    return {{"run", snap->run_id},
            {"algorithm", snap->algorithm},
            {"iteration", snap->iteration},
            {"axes", {axis_a, axis_b}},
            {"resolution", report.resolution},
            {"shape", {report.resolution[axis_a], report.resolution[axis_b]}},
            {"projected", report.projected},
            {"coverage", report.coverage},
            {"qd_score", report.qd_score},
            {"heatmap", std::move(matrix)},
            {"cells", std::move(cells)}};
}

json SteeringService::individual_payload(const std::string& run_id, IndividualId id) const {
    auto s = find(run_id);
    std::shared_lock lock(s->snapshot_mutex);
    if (!s->mirror.contains(id))
        throw NotFound("run " + run_id + " has no individual " + std::to_string(id));
    const Individual& ind = s->mirror[id];
    const LineageTree tree = lineage_trace(s->mirror, id);
    json nodes = json::array();
    for (const auto& n : tree.nodes)
        nodes.push_back({{"id", n.id},
                         {"generation", n.generation},
                         {"fitness", n.fitness},
                         {"feasible", n.feasible},
                         {"operation", to_string(n.operation)},
                         {"parents", n.parents}});
    return {{"id", id},
            {"genome", s->domain->render(ind.genome)},
            {"evaluation", runner::to_json(ind.evaluation)},
            {"parents", ind.parents},
            {"generation", ind.birth_generation},
            {"lineage", {{"root", tree.root}, {"nodes", std::move(nodes)}}}};
}

json SteeringService::metrics_payload(const std::string& run_id) const {
    const auto snap = snapshot(run_id);
    json records = json::array();
    for (const auto& m : snap->metrics) records.push_back(runner::to_json(m));
    json counts = json::array();
    json prefs = json::array();
    const auto& res = snap->report.resolution;
    for (std::size_t c = 0; c < snap->selection_counts.size(); ++c)
        if (snap->selection_counts[c] > 0)
            counts.push_back({{"cell", unflatten(c, res).coords}, {"flat", c},
                              {"count", snap->selection_counts[c]}});
    for (std::size_t c = 0; c < snap->preference.size(); ++c)
        if (snap->preference[c] != 1.0)
            prefs.push_back({{"cell", unflatten(c, res).coords}, {"flat", c},
                             {"weight", snap->preference[c]}});
    std::uint64_t total = 0;
    for (auto n : snap->selection_counts) total += n;
    return {{"run", snap->run_id},
            {"algorithm", snap->algorithm},
            {"iteration", snap->iteration},
            {"evaluations", snap->evaluations},
            {"finished", snap->finished},
            {"records", std::move(records)},
            {"selection_total", total},
            {"selection_counts", std::move(counts)},
            {"preferences", std::move(prefs)}};
}

} // namespace illuminate::service
