#include "battdispatch/reliability.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "battdispatch/characterization.hpp"
#include "battdispatch/provenance.hpp"

namespace battd::reliability {

namespace {

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

// Cell-side powers for a feasible terminal request at the given soc.
double internal_out(double soc, double p_dis, double T, const BatteryParams& p) {
    if (p_dis <= 0.0) return 0.0;
    return charac::terminal_to_internal(soc, p_dis, T, charac::Mode::discharge, p).p_internal_W;
}
double internal_in(double soc, double p_cha, double T, const BatteryParams& p) {
    if (p_cha <= 0.0) return 0.0;
    return charac::terminal_to_internal(soc, p_cha, T, charac::Mode::charge, p).p_internal_W;
}

}  // namespace

ClippedPowers clip_to_limits(const Eigen::ArrayXd& p_dis_W, const Eigen::ArrayXd& p_cha_W,
                             double e1_Wh, double delta_hours, double T,
                             const BatteryParams& params) {
    const int n = static_cast<int>(p_dis_W.size());
    if (p_cha_W.size() != n)
        throw std::invalid_argument("clip_to_limits: power trajectories differ in length");
    ClippedPowers out;
    out.p_dis_W = p_dis_W;
    out.p_cha_W = p_cha_W;
    out.violation_W = Eigen::ArrayXd::Zero(n);

    double e = e1_Wh;
    for (int t = 0; t < n; ++t) {
        const double soc = clamp01(e / params.energy_capacity_Wh);
        const double dis_max = charac::max_power(soc, T, charac::Mode::discharge, params).p_max_W;
        const double cha_max = charac::max_power(soc, T, charac::Mode::charge, params).p_max_W;
        double viol = 0.0;
        if (out.p_dis_W[t] > dis_max) {
            viol += out.p_dis_W[t] - dis_max;
            out.p_dis_W[t] = dis_max;
        }
        if (out.p_cha_W[t] > cha_max) {
            viol += out.p_cha_W[t] - cha_max;
            out.p_cha_W[t] = cha_max;
        }
        if (viol > 0.0) {
            out.violation_W[t] = viol;
            out.clipped_steps.push_back(t);
        }
        const double p_in = internal_in(soc, out.p_cha_W[t], T, params);
        const double p_out = internal_out(soc, out.p_dis_W[t], T, params);
        e += (p_in - p_out) * delta_hours;
    }
    return out;
}

Eigen::ArrayXd realize_trajectory(const Eigen::ArrayXd& p_dis_W, const Eigen::ArrayXd& p_cha_W,
                                  double e1_Wh, double delta_hours, double T,
                                  const BatteryParams& params) {
    const int n = static_cast<int>(p_dis_W.size());
    if (p_cha_W.size() != n)
        throw std::invalid_argument("realize_trajectory: power trajectories differ in length");
    Eigen::ArrayXd e(n);
    if (n == 0) return e;
    e[0] = e1_Wh;
    for (int t = 0; t + 1 < n; ++t) {
        const double soc = clamp01(e[t] / params.energy_capacity_Wh);
        const double p_in = internal_in(soc, p_cha_W[t], T, params);
        const double p_out = internal_out(soc, p_dis_W[t], T, params);
        e[t + 1] = e[t] + (p_in - p_out) * delta_hours;
    }
    return e;
}

Imbalance imbalance(const Eigen::ArrayXd& e_sched_Wh, const Eigen::ArrayXd& e_real_Wh) {
    if (e_sched_Wh.size() != e_real_Wh.size())
        throw std::invalid_argument("imbalance: trajectories differ in length");
    Imbalance im;
    im.signed_Wh = (e_real_Wh - e_sched_Wh).sum();
    const double stored = e_sched_Wh.sum();
    im.fraction = stored > 0.0 ? std::abs(im.signed_Wh) / stored : 0.0;
    return im;
}

RealizationReport assess(const Eigen::ArrayXd& p_dis_sched_W, const Eigen::ArrayXd& p_cha_sched_W,
                         const Eigen::ArrayXd& e_sched_Wh, double delta_hours, double T,
                         const BatteryParams& params) {
    const int n = static_cast<int>(e_sched_Wh.size());
    if (p_dis_sched_W.size() != n || p_cha_sched_W.size() != n)
        throw std::invalid_argument("assess: schedule arrays differ in length");

    RealizationReport r;
    r.e_sched_Wh = e_sched_Wh;
    r.p_dis_sched_W = p_dis_sched_W;
    r.p_cha_sched_W = p_cha_sched_W;
    if (n == 0) {
        r.e_real_Wh.resize(0);
        r.p_dis_real_W.resize(0);
        r.p_cha_real_W.resize(0);
        r.violation_W.resize(0);
        return r;
    }

    const double e1 = e_sched_Wh[0];
    ClippedPowers cp = clip_to_limits(p_dis_sched_W, p_cha_sched_W, e1, delta_hours, T, params);
    r.p_dis_real_W = cp.p_dis_W;
    r.p_cha_real_W = cp.p_cha_W;
    r.violation_W = cp.violation_W;
    r.clipped_steps = cp.clipped_steps;
    r.e_real_Wh = realize_trajectory(cp.p_dis_W, cp.p_cha_W, e1, delta_hours, T, params);

    const Imbalance im = imbalance(e_sched_Wh, r.e_real_Wh);
    r.imbalance_Wh = im.signed_Wh;
    r.imbalance_fraction = im.fraction;
    r.min_energy_Wh = r.e_real_Wh.size() ? r.e_real_Wh.minCoeff() : 0.0;
    for (int t = 0; t < n; ++t)
        if (r.e_real_Wh[t] < 0.0) ++r.negative_energy_steps;
    return r;
}

void write_report(const RealizationReport& r, const std::string& out_dir,
                  const std::string& provenance_json, const std::string& provenance_csv) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    std::ostringstream csv;
    csv << provenance_csv
        << "t,e_sched_Wh,e_real_Wh,p_cha_sched_W,p_cha_real_W,p_dis_sched_W,p_dis_real_W,"
           "violation_W\n";
    for (int t = 0; t < r.e_sched_Wh.size(); ++t) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%d,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n", t + 1,
                      r.e_sched_Wh[t], r.e_real_Wh[t], r.p_cha_sched_W[t], r.p_cha_real_W[t],
                      r.p_dis_sched_W[t], r.p_dis_real_W[t], r.violation_W[t]);
        csv << buf;
    }
    write_file((fs::path(out_dir) / "realization.csv").string(), csv.str());

    nlohmann::json j;
    j["imbalance_Wh"] = r.imbalance_Wh;
    j["imbalance_fraction_of_scheduled_stored_energy"] = r.imbalance_fraction;
    j["sign_convention"] = "positive means the realized trajectory holds more energy";
    j["clipped_steps"] = r.clipped_steps;
    j["n_clipped"] = r.clipped_steps.size();
    j["negative_energy_steps"] = r.negative_energy_steps;
    j["min_energy_Wh"] = r.min_energy_Wh;
    j["horizon"] = r.e_sched_Wh.size();
    if (!provenance_json.empty()) j["provenance"] = nlohmann::json::parse(provenance_json);
    write_file((fs::path(out_dir) / "realization.json").string(), j.dump(2) + "\n");
}

}  // namespace battd::reliability
