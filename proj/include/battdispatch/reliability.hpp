#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "battdispatch/battery.hpp"

// Schedule-reliability assessment: clip requested powers to the true
// nonlinear limits along the realized trajectory, propagate the realized
// energy under nonlinear efficiencies, and report the energy imbalance.

namespace battd::reliability {

struct ClippedPowers {
    Eigen::ArrayXd p_dis_W;
    Eigen::ArrayXd p_cha_W;
    Eigen::ArrayXd violation_W;  // clip magnitude per step (both modes summed)
    std::vector<int> clipped_steps;
};

// Sequential clipping: limits are evaluated at the *realized* SOC, which is
// propagated from the clipped powers as they are produced.
ClippedPowers clip_to_limits(const Eigen::ArrayXd& p_dis_W, const Eigen::ArrayXd& p_cha_W,
                             double e1_Wh, double delta_hours, double T,
                             const BatteryParams& params);

// Propagates e_real under state-dependent efficiencies evaluated at the
// realized SOC and the actual current. Energies may go negative; they are
// reported, never clamped (the evaluation SOC is pulled into [0,1]).
Eigen::ArrayXd realize_trajectory(const Eigen::ArrayXd& p_dis_W, const Eigen::ArrayXd& p_cha_W,
                                  double e1_Wh, double delta_hours, double T,
                                  const BatteryParams& params);

struct Imbalance {
    double signed_Wh = 0.0;   // sum_t (e_real_t - e_sched_t)
    double fraction = 0.0;    // |signed| / sum_t e_sched_t (total scheduled stored energy)
};

Imbalance imbalance(const Eigen::ArrayXd& e_sched_Wh, const Eigen::ArrayXd& e_real_Wh);

struct RealizationReport {
    Eigen::ArrayXd e_sched_Wh, e_real_Wh;
    Eigen::ArrayXd p_dis_sched_W, p_dis_real_W;
    Eigen::ArrayXd p_cha_sched_W, p_cha_real_W;
    Eigen::ArrayXd violation_W;
    std::vector<int> clipped_steps;
    double imbalance_Wh = 0.0;
    double imbalance_fraction = 0.0;
    int negative_energy_steps = 0;
    double min_energy_Wh = 0.0;
};

// clip + realize + imbalance in one pass over a scheduled battery profile.
RealizationReport assess(const Eigen::ArrayXd& p_dis_sched_W, const Eigen::ArrayXd& p_cha_sched_W,
                         const Eigen::ArrayXd& e_sched_Wh, double delta_hours, double T,
                         const BatteryParams& params);

void write_report(const RealizationReport& r, const std::string& out_dir,
                  const std::string& provenance_json, const std::string& provenance_csv);

}  // namespace battd::reliability
