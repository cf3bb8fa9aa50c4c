#include "battdispatch/network.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <queue>
#include <sstream>

#include "battdispatch/log.hpp"
#include "battdispatch/provenance.hpp"

namespace battd::dispatch {

using nlohmann::json;
namespace fs = std::filesystem;

int NetworkCase::node_index(const std::string& id) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].id == id) return static_cast<int>(i);
    return -1;
}

int NetworkCase::reference_node() const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].reference) return static_cast<int>(i);
    return -1;
}

ValidationReport NetworkCase::validate() const {
    ValidationReport r;
    auto fail = [&](const std::string& field, const std::string& msg) {
        r.issues.push_back({true, field, msg});
    };
    if (nodes.empty()) fail("nodes", "case has no nodes");
    if (horizon < 1) fail("horizon", "horizon must be at least 1");
    if (!(delta_hours > 0)) fail("delta_hours", "time step must be positive");

    int refs = 0;
    for (const auto& n : nodes) {
        refs += n.reference ? 1 : 0;
        if (!(n.angle_min_rad <= n.angle_max_rad))
            fail("nodes", n.id + ": angle bounds reversed");
    }
    if (refs != 1) fail("nodes", "exactly one reference node required, found " +
                                     std::to_string(refs));

    std::vector<std::string> ids;
    for (const auto& n : nodes) ids.push_back(n.id);
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
        fail("nodes", "duplicate node id");

    const int N = static_cast<int>(nodes.size());
    for (const auto& l : lines) {
        if (l.from < 0 || l.from >= N || l.to < 0 || l.to >= N || l.from == l.to)
            fail("lines", l.id + ": bad endpoints");
        if (!(l.reactance_pu > 0)) fail("lines", l.id + ": reactance must be positive");
        if (!(l.flow_limit_W > 0)) fail("lines", l.id + ": flow limit must be positive");
    }
    for (const auto& g : generators) {
        if (g.node < 0 || g.node >= N) fail("generators", g.id + ": bad node");
        if (!(g.p_min_W <= g.p_max_W)) fail("generators", g.id + ": p_min exceeds p_max");
        if (g.p_min_W < 0) fail("generators", g.id + ": negative p_min");
    }
    for (const auto& b : batteries) {
        if (b.node < 0 || b.node >= N) fail("batteries", b.id + ": bad node");
        if (b.initial_energy_Wh < 0 || b.initial_energy_Wh > b.params.energy_capacity_Wh)
            fail("batteries", b.id + ": initial energy outside [0, capacity]");
    }
    if (demand_W.rows() != N || demand_W.cols() != horizon)
        fail("demand", "demand matrix must be nodes x horizon");
    else if ((demand_W.array() < 0).any())
        fail("demand", "negative demand entry");

    if (N > 1) {
        std::vector<char> seen(N, 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (const auto& l : lines) {
                int v = -1;
                if (l.from == u) v = l.to;
                if (l.to == u) v = l.from;
                if (v >= 0 && !seen[v]) {
                    seen[v] = 1;
                    q.push(v);
                }
            }
        }
        if (std::count(seen.begin(), seen.end(), 1) != N)
            r.issues.push_back({false, "lines", "network is islanded"});
    }
    return r;
}

namespace {

Eigen::MatrixXd load_demand_csv(const std::string& path, const std::vector<Node>& nodes,
                                int horizon) {
    const std::string text = read_file(path);
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::vector<int> col_to_node;
    Eigen::MatrixXd demand = Eigen::MatrixXd::Zero(static_cast<int>(nodes.size()), horizon);
    int t = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (col_to_node.empty()) {
            if (cells.empty() || cells[0] != "time")
                throw ValidationError("demand CSV: first header column must be 'time'", {});
            for (std::size_t k = 1; k < cells.size(); ++k) {
                int idx = -1;
                for (std::size_t i = 0; i < nodes.size(); ++i)
                    if (nodes[i].id == cells[k]) idx = static_cast<int>(i);
                if (idx < 0)
                    throw ValidationError("demand CSV: unknown node id '" + cells[k] + "'", {});
                col_to_node.push_back(idx);
            }
            continue;
        }
        if (t >= horizon)
            throw ValidationError("demand CSV has more rows than the case horizon", {});
        if (cells.size() != col_to_node.size() + 1)
            throw ValidationError("demand CSV line " + std::to_string(lineno) +
                                      ": wrong number of columns", {});
        for (std::size_t k = 0; k < col_to_node.size(); ++k)
            demand(col_to_node[k], t) = std::stod(cells[k + 1]);
        ++t;
    }
    if (t != horizon)
        throw ValidationError("demand CSV has " + std::to_string(t) + " rows, expected " +
                                  std::to_string(horizon), {});
    return demand;
}

}  // namespace

NetworkCase load_network_case(const std::string& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("case file is not valid JSON: ") + e.what(), {});
    }
    NetworkCase c;
    const fs::path dir = fs::path(path).parent_path();
    try {
        c.name = j.value("name", "case");
        c.delta_hours = j.at("delta_hours").get<double>();
        c.horizon = j.at("horizon").get<int>();
        for (const auto& n : j.at("nodes")) {
            Node node;
            node.id = n.at("id").get<std::string>();
            node.angle_min_rad = n.value("angle_min_rad", -0.6);
            node.angle_max_rad = n.value("angle_max_rad", 0.6);
            node.reference = n.value("reference", false);
            c.nodes.push_back(node);
        }
        for (const auto& l : j.at("lines")) {
            Line line;
            line.id = l.at("id").get<std::string>();
            line.from = c.node_index(l.at("from").get<std::string>());
            line.to = c.node_index(l.at("to").get<std::string>());
            line.reactance_pu = l.at("reactance_pu").get<double>();
            line.flow_limit_W = l.at("flow_limit_W").get<double>();
            c.lines.push_back(line);
        }
        for (const auto& g : j.at("generators")) {
            Generator gen;
            gen.id = g.at("id").get<std::string>();
            gen.node = c.node_index(g.at("node").get<std::string>());
            gen.p_min_W = g.at("p_min_W").get<double>();
            gen.p_max_W = g.at("p_max_W").get<double>();
            gen.cost_per_Wh = g.at("cost_per_Wh").get<double>();
            c.generators.push_back(gen);
        }
        for (const auto& b : j.value("batteries", json::array())) {
            BatteryPlacement bp;
            bp.id = b.at("id").get<std::string>();
            bp.node = c.node_index(b.at("node").get<std::string>());
            bp.params_path = (dir / b.at("params_file").get<std::string>()).string();
            bp.params = load_battery_params(bp.params_path);
            bp.initial_energy_Wh = b.value("initial_energy_Wh", 0.5 * bp.params.energy_capacity_Wh);
            c.batteries.push_back(bp);
        }
        const std::string demand_csv = (dir / j.at("demand_csv").get<std::string>()).string();
        c.demand_W = load_demand_csv(demand_csv, c.nodes, c.horizon);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("case file missing or malformed field: ") + e.what(), {});
    }
    ValidationReport rep = c.validate();
    for (const auto& issue : rep.issues)
        if (!issue.fatal) log::warn("case " + c.name + ": " + issue.message);
    if (!rep.ok())
        throw ValidationError("network case validation failed:\n" + rep.to_string(), rep);
    return c;
}

void save_network_case(const NetworkCase& c, const std::string& case_path,
                       const std::string& demand_csv_name, const std::string& battery_file_name) {
    json j;
    j["name"] = c.name;
    j["delta_hours"] = c.delta_hours;
    j["horizon"] = c.horizon;
    j["demand_csv"] = demand_csv_name;
    json nodes = json::array();
    for (const auto& n : c.nodes)
        nodes.push_back({{"id", n.id},
                         {"angle_min_rad", n.angle_min_rad},
                         {"angle_max_rad", n.angle_max_rad},
                         {"reference", n.reference}});
    j["nodes"] = nodes;
    json lines = json::array();
    for (const auto& l : c.lines)
        lines.push_back({{"id", l.id},
                         {"from", c.nodes[l.from].id},
                         {"to", c.nodes[l.to].id},
                         {"reactance_pu", l.reactance_pu},
                         {"flow_limit_W", l.flow_limit_W}});
    j["lines"] = lines;
    json gens = json::array();
    for (const auto& g : c.generators)
        gens.push_back({{"id", g.id},
                        {"node", c.nodes[g.node].id},
                        {"p_min_W", g.p_min_W},
                        {"p_max_W", g.p_max_W},
                        {"cost_per_Wh", g.cost_per_Wh}});
    j["generators"] = gens;
    json bats = json::array();
    for (const auto& b : c.batteries)
        bats.push_back({{"id", b.id},
                        {"node", c.nodes[b.node].id},
                        {"params_file", battery_file_name},
                        {"initial_energy_Wh", b.initial_energy_Wh}});
    j["batteries"] = bats;
    write_file(case_path, j.dump(2) + "\n");

    std::ostringstream csv;
    csv << "time";
    for (const auto& n : c.nodes) csv << "," << n.id;
    csv << "\n";
    for (int t = 0; t < c.horizon; ++t) {
        csv << (t + 1);
        for (int n = 0; n < static_cast<int>(c.nodes.size()); ++n) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.6f", c.demand_W(n, t));
            csv << "," << buf;
        }
        csv << "\n";
    }
    const fs::path dir = fs::path(case_path).parent_path();
    write_file((dir / demand_csv_name).string(), csv.str());
}

NetworkCase truncate_horizon(const NetworkCase& c, int steps) {
    if (steps < 1 || steps > c.horizon)
        throw ValidationError("truncate_horizon: bad step count", {});
    NetworkCase out = c;
    out.horizon = steps;
    out.demand_W = c.demand_W.leftCols(steps).eval();
    return out;
}

}  // namespace battd::dispatch
