#pragma once

#include <array>
#include <string>
#include <vector>

#include "battdispatch/characterization.hpp"
#include "battdispatch/lp.hpp"
#include "battdispatch/network.hpp"

// Network-constrained economic dispatch on a lossless DC model with one of
// three battery formulations: constant-parameter ideal, convex-envelope
// linear, or triangle-method piecewise linear with binaries.

namespace battd::dispatch {

enum class FormulationKind { ideal, envelope, milp_triangle };

const char* formulation_name(FormulationKind k);

struct IdealBattery {
    double p_max_dis_W = 0.0;
    double p_max_cha_W = 0.0;
    double eta_dis = 0.868;
    double eta_cha = 0.972;
};

// Rectangular logical grid over (soc, power fraction) with its sampled
// physical vertices, split into triangles along the lower-left to
// upper-right diagonal of every cell.
struct Triangulation {
    int n_soc = 0;
    int n_power = 0;
    std::vector<charac::EnvelopeSample> vertices;  // soc-major, n_soc*n_power
    std::vector<std::array<int, 3>> triangles;
    std::string diagonal = "lower-left to upper-right";
};

struct SurfaceGrid {
    charac::Mode mode = charac::Mode::discharge;
    Eigen::ArrayXd soc_grid;
    Eigen::ArrayXd power_fraction_grid;
    std::vector<charac::EnvelopeSample> points;  // soc-major, no anchors, no dedupe
};

// Samples the full rectangular grid (fractions of the per-soc power limit).
SurfaceGrid sample_grid(charac::Mode mode, const Eigen::ArrayXd& soc_grid,
                        const Eigen::ArrayXd& power_fraction_grid, double T,
                        const BatteryParams& p);

// Rejects non-rectangular input (point count must equal n_soc * n_power).
Triangulation triangle_partition(const SurfaceGrid& grid);

struct BatteryFormulation {
    FormulationKind kind = FormulationKind::ideal;
    IdealBattery ideal;
    charac::EnvelopeSet envelope_dis;  // envelope mode
    charac::EnvelopeSet envelope_cha;
    Triangulation tri_dis;  // milp mode
    Triangulation tri_cha;
};

// Paper-shaped constructors: ideal constants from the C-rate caps and rated
// voltage, envelopes from the default grids, triangles from 5x3 grids.
BatteryFormulation make_ideal_formulation(const BatteryParams& p);
BatteryFormulation make_envelope_formulation(const BatteryParams& p, double T);
BatteryFormulation make_envelope_formulation(charac::EnvelopeSet dis, charac::EnvelopeSet cha);
BatteryFormulation make_milp_formulation(const BatteryParams& p, double T, int n_soc = 5,
                                         int n_power = 3);

struct BuildOptions {
    double shed_penalty_per_Wh = 0.0;  // 0 disables load-shedding slack
};

// Variable/constraint index bookkeeping for schedule extraction.
struct DispatchModel {
    optim::MixedIntegerProgram model;  // binary list empty for LP kinds
    FormulationKind kind = FormulationKind::ideal;
    int n_nodes = 0, n_lines = 0, n_gens = 0, n_batteries = 0, horizon = 0;

    // Column index helpers (flattened entity-major, time-minor).
    std::vector<int> v_gen, v_flow, v_angle;                      // g*T+t, l*T+t, n*T+t
    std::vector<int> v_pdis, v_pcha, v_pin, v_pout, v_e, v_soc;   // s*T+t
    std::vector<int> v_x, v_y;                                    // s, j/k, t flattened
    std::vector<int> v_zdis, v_zcha;                              // s, tri, t flattened
    int x_per_batt = 0, y_per_batt = 0, zdis_per_batt = 0, zcha_per_batt = 0;
    std::vector<int> v_shed;  // n*T+t when shedding enabled, else empty

    std::string metadata;  // grid/diagonal notes
};

DispatchModel build_dispatch(const NetworkCase& c, const BatteryFormulation& f,
                             const BuildOptions& opt = {});

struct BatterySchedule {
    std::string id;
    Eigen::ArrayXd p_dis_W, p_cha_W, p_in_W, p_out_W, e_Wh, soc;
    Eigen::MatrixXd x_weights, y_weights;  // samples x T; empty for ideal
};

struct DispatchSchedule {
    optim::SolveStatus status = optim::SolveStatus::error;
    double objective = 0.0;
    Eigen::MatrixXd gen_W;      // G x T
    Eigen::MatrixXd flow_W;     // L x T
    Eigen::MatrixXd angle_rad;  // N x T
    Eigen::MatrixXd shed_W;     // N x T, zero when shedding disabled
    std::vector<BatterySchedule> batteries;

    long iterations = 0;
    long nodes = 0;
    double wall_seconds = 0.0;
    int n_constraints = 0, n_continuous = 0, n_binaries = 0;
    FormulationKind kind = FormulationKind::ideal;
    double delta_hours = 0.0;
};

// Independent residual recomputation straight from the case data.
struct VerifyReport {
    double balance = 0.0;         // max over (n,t), scaled by max(1, demand)
    double flow_def = 0.0;        // max |f - (1/X) sum A delta|
    double cyclic_Wh = 0.0;       // |e_1 - e_T|
    double energy_Wh = 0.0;       // max energy-balance row residual
    double soc_link = 0.0;        // max |soc - e/E|
    double weight_sum = 0.0;      // max |sum w - 1| and weight-logic violations
    double battery_link_W = 0.0;  // max sampled-power linking residual
    double bound_violation = 0.0;
    double simultaneous = 0.0;    // max p_dis*p_cha / limit^2
    double max_any() const;
};

VerifyReport verify_schedule(const NetworkCase& c, const BatteryFormulation& f,
                             const DispatchSchedule& s);

struct SolveDispatchOptions {
    optim::SimplexOptions lp;
    optim::MilpOptions milp;
    double verify_limit = 1e-5;  // residuals above this raise an error
    bool skip_verify = false;
};

class VerificationError : public std::runtime_error {
  public:
    VerificationError(const std::string& what, VerifyReport rep)
        : std::runtime_error(what), report(rep) {}
    VerifyReport report;
};

DispatchSchedule solve_dispatch(const NetworkCase& c, const BatteryFormulation& f,
                                const DispatchModel& model, const SolveDispatchOptions& opt = {});

// Populate a schedule from externally computed variable values (MPS
// round-trip workflow); same post-verification as solve_dispatch.
DispatchSchedule schedule_from_values(const NetworkCase& c, const BatteryFormulation& f,
                                      const DispatchModel& model, const Eigen::VectorXd& values);

// Writers: per-entity CSVs plus a JSON summary shaped like a results table.
void write_schedule(const DispatchSchedule& s, const NetworkCase& c, const std::string& out_dir,
                    const std::string& provenance_json, const std::string& provenance_csv);

}  // namespace battd::dispatch
