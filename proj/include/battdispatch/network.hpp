#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "battdispatch/battery.hpp"

namespace battd::dispatch {

struct Node {
    std::string id;
    double angle_min_rad = -0.6;
    double angle_max_rad = 0.6;
    bool reference = false;
};

struct Line {
    std::string id;
    int from = -1;  // node indices
    int to = -1;
    double reactance_pu = 0.0;
    double flow_limit_W = 0.0;
};

struct Generator {
    std::string id;
    int node = -1;
    double p_min_W = 0.0;
    double p_max_W = 0.0;
    double cost_per_Wh = 0.0;
};

struct BatteryPlacement {
    std::string id;
    int node = -1;
    std::string params_path;  // as referenced by the case file
    BatteryParams params;
    double initial_energy_Wh = 0.0;
};

struct NetworkCase {
    std::string name;
    double delta_hours = 0.0;
    int horizon = 0;
    std::vector<Node> nodes;
    std::vector<Line> lines;
    std::vector<Generator> generators;
    std::vector<BatteryPlacement> batteries;
    Eigen::MatrixXd demand_W;  // nodes x horizon

    int node_index(const std::string& id) const;
    int reference_node() const;

    // Fatal issues stop model building; an islanded network is a warning.
    ValidationReport validate() const;
};

// Reads case JSON plus the demand CSV and battery parameter files it
// references (paths resolve relative to the case file's directory).
NetworkCase load_network_case(const std::string& path);

// Writers used by the test-case generator; demand goes to a separate CSV.
void save_network_case(const NetworkCase& c, const std::string& case_path,
                       const std::string& demand_csv_name, const std::string& battery_file_name);

// First `steps` time steps of the case (cyclic constraint re-ties to the
// shorter horizon).
NetworkCase truncate_horizon(const NetworkCase& c, int steps);

}  // namespace battd::dispatch
