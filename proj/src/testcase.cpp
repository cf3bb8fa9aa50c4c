#include "battdispatch/testcase.hpp"

#include <cmath>
#include <filesystem>

#include "battdispatch/provenance.hpp"

namespace battd::testcase {

BatteryParams synthetic_battery_params() {
    BatteryParams p;
    p.U_bat0 = 140.0;
    p.A_and = {-200000.0, -30000.0, 0.0, 0.0, 0.0, 0.0, 2000.0};
    p.A_ctd = {-300000.0, 40000.0, 12000.0, 0.0, 0.0, 0.0, 0.0};
    p.R_ohm_0 = 0.12;
    p.R_ohm_T = -1.0e-4;
    p.R_ohm_SOC = -0.02;
    p.E_A = 30.0;
    p.A_SEI = 807.35;
    p.k_0 = 2.0e-3;
    p.K_dif_mem = 0.008;
    p.b_dif_mem = 250.0;
    p.T0_dif_mem = 160.0;
    p.K_dif_elec = 6.0e-4;
    p.b_dif_elec = 150.0;
    p.T0_dif_elec = 158.15;
    p.eta_c0 = 1.02;
    p.eta_cT = -1.0e-4;
    p.eta_ci = -5.0e-5;
    p.capacity_Ah = 40.0;
    p.rated_voltage = 110.0;
    p.energy_capacity_Wh = 5320.0;
    p.c_rate_dis = 5.0;
    p.c_rate_cha = 1.0;
    p.T_ref = 298.15;
    return p;
}

namespace {

struct LineSpec {
    int from, to;
};

// Meshed 24-node topology skeleton (38 corridors, a few doubled).
const LineSpec kLines[] = {
    {1, 2},   {1, 3},   {1, 5},   {2, 4},   {2, 6},   {3, 9},   {3, 24},  {4, 9},
    {5, 10},  {6, 10},  {7, 8},   {8, 9},   {8, 10},  {9, 11},  {9, 12},  {10, 11},
    {10, 12}, {11, 13}, {11, 14}, {12, 13}, {12, 23}, {13, 23}, {14, 16}, {15, 16},
    {15, 21}, {15, 21}, {15, 24}, {16, 17}, {16, 19}, {17, 18}, {17, 22}, {18, 21},
    {18, 21}, {19, 20}, {19, 20}, {20, 23}, {20, 23}, {21, 22}};

// Relative nodal load weights, zero at pure transfer/generation nodes.
const double kLoadWeight[24] = {108, 97, 180, 74, 71, 136, 125, 171, 175, 195, 0, 0,
                                265, 194, 317, 100, 0,   333, 181, 128, 0,  0, 0,  0};

struct GenSpec {
    int bus;
    double kw;
    double usd_per_kwh;
};
const GenSpec kGens[] = {{18, 120, 0.085}, {21, 120, 0.095}, {22, 80, 0.065}, {23, 100, 0.110},
                         {16, 60, 0.200},  {15, 60, 0.230},  {1, 50, 0.310},  {2, 50, 0.330},
                         {7, 60, 0.520},   {13, 80, 0.560}};

double load_shape(double hour, bool stressed) {
    auto bump = [](double h, double center, double width) {
        const double z = (h - center) / width;
        return std::exp(-z * z);
    };
    if (stressed) return 0.42 + 0.45 * bump(hour, 7.5, 1.4) + 0.65 * bump(hour, 19.5, 1.5);
    return 0.52 + 0.20 * bump(hour, 8.5, 2.0) + 0.48 * bump(hour, 19.0, 2.2);
}

}  // namespace

dispatch::NetworkCase make_testcase(bool stressed) {
    dispatch::NetworkCase c;
    c.name = stressed ? "analog24-stressed" : "analog24";
    c.delta_hours = 1.0 / 6.0;
    c.horizon = 144;

    for (int n = 1; n <= 24; ++n) {
        dispatch::Node node;
        node.id = "n" + std::to_string(n);
        node.angle_min_rad = -1.0;
        node.angle_max_rad = 1.0;
        node.reference = (n == 13);
        c.nodes.push_back(node);
    }

    int lid = 0;
    for (const auto& ls : kLines) {
        dispatch::Line l;
        l.id = "l" + std::to_string(++lid);
        l.from = ls.from - 1;
        l.to = ls.to - 1;
        l.reactance_pu = 2.0e-6;
        l.flow_limit_W = 2.5e5;
        c.lines.push_back(l);
    }

    int gid = 0;
    for (const auto& gs : kGens) {
        dispatch::Generator g;
        g.id = "g" + std::to_string(++gid);
        g.node = gs.bus - 1;
        g.p_min_W = 0.0;
        g.p_max_W = gs.kw * 1000.0;
        g.cost_per_Wh = gs.usd_per_kwh / 1000.0;
        if (stressed && g.cost_per_Wh >= 4e-4) g.cost_per_Wh *= 1.4;  // pricier peakers
        c.generators.push_back(g);
    }

    dispatch::BatteryPlacement b;
    b.id = "b1";
    b.node = 10;  // n11, unloaded hub
    b.params = synthetic_battery_params();
    b.params_path = "default_battery.json";
    b.initial_energy_Wh =
        stressed ? 0.25 * b.params.energy_capacity_Wh : 0.50 * b.params.energy_capacity_Wh;
    c.batteries.push_back(b);

    double wsum = 0.0;
    for (double w : kLoadWeight) wsum += w;
    const double peak_total_W = 6.0e5;
    c.demand_W.resize(24, c.horizon);
    for (int t = 0; t < c.horizon; ++t) {
        const double h = (t + 0.5) * c.delta_hours;
        const double s = load_shape(h, stressed);
        for (int n = 0; n < 24; ++n)
            c.demand_W(n, t) = peak_total_W * s * (kLoadWeight[n] / wsum);
    }
    return c;
}

TestcaseFiles write_testcase(const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    TestcaseFiles files;
    files.battery_path = (fs::path(out_dir) / "default_battery.json").string();
    save_battery_params(synthetic_battery_params(), files.battery_path);

    const auto base = make_testcase(false);
    files.case_path = (fs::path(out_dir) / "case.json").string();
    dispatch::save_network_case(base, files.case_path, "demand.csv", "default_battery.json");

    const auto stressed = make_testcase(true);
    files.stressed_case_path = (fs::path(out_dir) / "case_stressed.json").string();
    dispatch::save_network_case(stressed, files.stressed_case_path, "demand_stressed.csv",
                                "default_battery.json");
    return files;
}

}  // namespace battd::testcase
