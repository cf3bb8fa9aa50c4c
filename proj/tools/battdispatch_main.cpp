#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <future>
#include <iostream>
#include <sstream>

#include "battdispatch/branch_and_bound.hpp"
#include "battdispatch/characterization.hpp"
#include "battdispatch/dispatch.hpp"
#include "battdispatch/log.hpp"
#include "battdispatch/mps.hpp"
#include "battdispatch/provenance.hpp"
#include "battdispatch/reliability.hpp"
#include "battdispatch/testcase.hpp"

// Exit codes: 0 success, 2 validation error, 3 solver non-optimal, 4 I/O.

namespace fs = std::filesystem;
using namespace battd;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;
constexpr int kExitIo = 4;

void write_error_json(const std::string& out_dir, const std::string& kind,
                      const std::string& message) {
    try {
        if (out_dir.empty()) return;
        fs::create_directories(out_dir);
        json j;
        j["error"] = kind;
        j["message"] = message;
        write_file((fs::path(out_dir) / "error.json").string(), j.dump(2) + "\n");
    } catch (...) {
    }
}

Eigen::ArrayXd parse_grid(const std::string& csv) {
    Eigen::ArrayXd out;
    std::vector<double> vals;
    std::stringstream ss(csv);
    std::string cell;
    while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
    out = Eigen::Map<const Eigen::ArrayXd>(vals.data(), vals.size());
    return out;
}

struct CharacterizeArgs {
    std::string battery_path;
    std::string out_dir;
    double temperature = 0.0;  // 0: use T_ref
    std::string soc_grid, power_grid;
    int error_grid_n = 100;
};

int cmd_characterize(const CharacterizeArgs& a) {
    const BatteryParams params = load_battery_params(a.battery_path);
    const double T = a.temperature > 0 ? a.temperature : params.T_ref;
    fs::create_directories(a.out_dir);

    {
        const ValidationReport rep = validate_params(params);
        json jv;
        jv["ok"] = rep.ok();
        json issues = json::array();
        for (const auto& i : rep.issues)
            issues.push_back({{"fatal", i.fatal}, {"field", i.field}, {"message", i.message}});
        jv["issues"] = issues;
        write_file((fs::path(a.out_dir) / "battery_validation.json").string(),
                   jv.dump(2) + "\n");
    }

    Provenance prov;
    prov.input_hashes["battery"] = hash_file(a.battery_path);
    prov.config["temperature_K"] = std::to_string(T);
    if (!a.soc_grid.empty()) prov.config["soc_grid"] = a.soc_grid;
    if (!a.power_grid.empty()) prov.config["power_grid"] = a.power_grid;
    const std::string prov_csv = prov.to_csv_comment();

    json report;
    report["provenance"] = prov.to_json();
    report["evaluated_at_K"] = T;

    for (auto mode : {charac::Mode::discharge, charac::Mode::charge}) {
        const Eigen::ArrayXd socs =
            a.soc_grid.empty() ? charac::default_soc_grid(mode) : parse_grid(a.soc_grid);
        const Eigen::ArrayXd fracs = a.power_grid.empty()
                                         ? charac::default_power_fraction_grid(mode)
                                         : parse_grid(a.power_grid);
        const auto env = charac::sample_surface(mode, socs, fracs, T, params);
        const std::string name = std::string("envelope_") + charac::mode_name(mode) + ".json";
        charac::save_envelope(env, (fs::path(a.out_dir) / name).string());

        const auto err = charac::envelope_error(env, T, params, a.error_grid_n, a.error_grid_n);
        json je;
        je["samples"] = env.samples.size();
        je["max_rel_error"] = err.max_rel_error;
        je["mean_rel_error"] = err.mean_rel_error;
        je["std_rel_error"] = err.std_rel_error;
        je["n_evaluated"] = err.n_samples;
        je["n_outside_hull"] = err.n_outside_hull;
        je["evaluation_grid"] = err.evaluation_grid;
        report[charac::mode_name(mode)] = je;

        // Dense characteristic-surface dump for plotting.
        std::ostringstream surf;
        surf << prov_csv << "soc,p_terminal_W,p_internal_W,efficiency\n";
        for (int i = 0; i <= 60; ++i) {
            const double soc = i / 60.0;
            const auto lim = charac::max_power(soc, T, mode, params);
            for (int k = 0; k <= 20; ++k) {
                const double pt = lim.p_max_W * k / 20.0;
                const auto op = charac::terminal_to_internal(soc, pt, T, mode, params);
                const double eta = charac::efficiency(soc, op.current_A, T, mode, params);
                char buf[160];
                std::snprintf(buf, sizeof buf, "%.6f,%.6f,%.6f,%.8f\n", soc, pt, op.p_internal_W,
                              eta);
                surf << buf;
            }
        }
        write_file((fs::path(a.out_dir) / (std::string("surface_") + charac::mode_name(mode) +
                                           ".csv")).string(),
                   surf.str());
    }

    // Current and power limits vs SOC (normalized current included).
    std::ostringstream lim;
    lim << prov_csv
        << "soc,i_root_dis_A,i_max_dis_A,i_root_cha_A,i_max_cha_A,p_max_dis_W,p_max_cha_W\n";
    for (int i = 0; i <= 200; ++i) {
        const double soc = i / 200.0;
        const auto cl = charac::current_limits(soc, T, params);
        const auto pd = charac::max_power(soc, T, charac::Mode::discharge, params);
        const auto pc = charac::max_power(soc, T, charac::Mode::charge, params);
        char buf[200];
        std::snprintf(buf, sizeof buf, "%.5f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n", soc, cl.dis.i_root_A,
                      cl.dis.i_max_A, cl.cha.i_root_A, cl.cha.i_max_A, pd.p_max_W, pc.p_max_W);
        lim << buf;
    }
    write_file((fs::path(a.out_dir) / "limits.csv").string(), lim.str());

    // Reference error statistics reported for the originating dataset, kept
    // here as context next to what this parameter set achieves.
    report["reference_targets"] = {
        {"discharge", {{"max_rel_error", 0.0903}, {"mean_rel_error", 0.0121}, {"std_rel_error", 0.0139}}},
        {"charge", {{"max_rel_error", 0.0112}, {"mean_rel_error", 0.0022}, {"std_rel_error", 0.0018}}}};
    write_file((fs::path(a.out_dir) / "error_report.json").string(), report.dump(2) + "\n");
    return kExitOk;
}

struct DispatchArgs {
    std::vector<std::string> case_paths;
    std::string mode = "envelope";
    std::string out_dir;
    std::string envelope_dir;
    std::string export_mps;
    std::string import_solution;
    std::string soc_grid, power_grid;
    double shed_penalty = 0.0;
    double feas_tol = 1e-7;
    double int_tol = 1e-6;
    long node_limit = 200000;
    int milp_steps = 24;
    int jobs = 1;
    double ideal_eta_cha = 0.0;  // 0 keeps the defaults
    double ideal_eta_dis = 0.0;
    double ideal_p_cha = 0.0;
    double ideal_p_dis = 0.0;
};

int dispatch_one(const DispatchArgs& a, const std::string& case_path,
                 const std::string& out_dir) {
    dispatch::NetworkCase c = dispatch::load_network_case(case_path);

    dispatch::FormulationKind kind;
    if (a.mode == "ideal") kind = dispatch::FormulationKind::ideal;
    else if (a.mode == "envelope") kind = dispatch::FormulationKind::envelope;
    else if (a.mode == "milp") kind = dispatch::FormulationKind::milp_triangle;
    else throw ValidationError("unknown mode: " + a.mode, {});

    if (kind == dispatch::FormulationKind::milp_triangle && c.horizon > a.milp_steps) {
        log::warn("milp mode: truncating horizon to the first " + std::to_string(a.milp_steps) +
                  " steps (branch and bound at desk scale)");
        c = dispatch::truncate_horizon(c, a.milp_steps);
    }
    if (c.batteries.empty()) throw ValidationError("case has no battery placement", {});
    const BatteryParams& params = c.batteries[0].params;

    dispatch::BatteryFormulation f;
    switch (kind) {
        case dispatch::FormulationKind::ideal:
            f = dispatch::make_ideal_formulation(params);
            if (a.ideal_eta_cha > 0) f.ideal.eta_cha = a.ideal_eta_cha;
            if (a.ideal_eta_dis > 0) f.ideal.eta_dis = a.ideal_eta_dis;
            if (a.ideal_p_cha > 0) f.ideal.p_max_cha_W = a.ideal_p_cha;
            if (a.ideal_p_dis > 0) f.ideal.p_max_dis_W = a.ideal_p_dis;
            break;
        case dispatch::FormulationKind::envelope:
            if (!a.envelope_dir.empty()) {
                f = dispatch::make_envelope_formulation(
                    charac::load_envelope((fs::path(a.envelope_dir) / "envelope_discharge.json").string()),
                    charac::load_envelope((fs::path(a.envelope_dir) / "envelope_charge.json").string()));
            } else if (!a.soc_grid.empty() || !a.power_grid.empty()) {
                auto grid_for = [&](charac::Mode m) {
                    const Eigen::ArrayXd socs =
                        a.soc_grid.empty() ? charac::default_soc_grid(m) : parse_grid(a.soc_grid);
                    const Eigen::ArrayXd fr = a.power_grid.empty()
                                                  ? charac::default_power_fraction_grid(m)
                                                  : parse_grid(a.power_grid);
                    return charac::sample_surface(m, socs, fr, params.T_ref, params);
                };
                f = dispatch::make_envelope_formulation(grid_for(charac::Mode::discharge),
                                                        grid_for(charac::Mode::charge));
            } else {
                f = dispatch::make_envelope_formulation(params, params.T_ref);
            }
            break;
        case dispatch::FormulationKind::milp_triangle:
            f = dispatch::make_milp_formulation(params, params.T_ref);
            break;
    }

    dispatch::BuildOptions bo;
    bo.shed_penalty_per_Wh = a.shed_penalty;
    const auto model = dispatch::build_dispatch(c, f, bo);

    Provenance prov;
    prov.input_hashes["case"] = hash_file(case_path);
    prov.config["mode"] = a.mode;
    prov.config["case"] = case_path;
    if (a.shed_penalty > 0) prov.config["shed_penalty_per_Wh"] = std::to_string(a.shed_penalty);

    if (!a.export_mps.empty()) {
        optim::write_mps(model.model, a.export_mps, "BATTDISPATCH");
        std::cout << "wrote " << a.export_mps << " (" << model.model.lp.num_rows() << " rows, "
                  << model.model.lp.num_vars() << " cols, " << model.model.binary_variables.size()
                  << " binaries); no solve performed\n";
        return kExitOk;
    }

    dispatch::DispatchSchedule sched;
    if (!a.import_solution.empty()) {
        const auto values = optim::read_solution_csv(a.import_solution);
        Eigen::VectorXd v = Eigen::VectorXd::Zero(model.model.lp.num_vars());
        for (const auto& [name, val] : values) {
            const int j = model.model.lp.variable_index(name);
            if (j >= 0) v[j] = val;
        }
        prov.input_hashes["solution"] = hash_file(a.import_solution);
        sched = dispatch::schedule_from_values(c, f, model, v);
        const auto rep = dispatch::verify_schedule(c, f, sched);
        if (rep.max_any() > 1e-5)
            throw dispatch::VerificationError("imported solution fails verification", rep);
    } else {
        dispatch::SolveDispatchOptions so;
        so.lp.feas_tol = a.feas_tol;
        so.milp.lp.feas_tol = a.feas_tol;
        so.milp.node_limit = a.node_limit;
        sched = dispatch::solve_dispatch(c, f, model, so);
    }

    dispatch::write_schedule(sched, c, out_dir, prov.to_json().dump(), prov.to_csv_comment());
    std::cout << "case " << c.name << " [" << a.mode << "]: status "
              << optim::status_name(sched.status) << ", objective " << sched.objective << ", "
              << sched.n_constraints << " constraints, " << sched.n_continuous
              << " continuous vars, " << sched.n_binaries << " binaries, " << sched.wall_seconds
              << " s\n";
    if (sched.status != optim::SolveStatus::optimal) {
        write_error_json(out_dir, "solver", optim::status_name(sched.status));
        return kExitSolver;
    }
    return kExitOk;
}

int cmd_dispatch(const DispatchArgs& a) {
    if (a.case_paths.size() == 1) return dispatch_one(a, a.case_paths[0], a.out_dir);
    // Independent cases solve concurrently; each gets a subdirectory.
    std::vector<std::future<int>> futs;
    std::vector<int> rcs(a.case_paths.size(), 0);
    const int jobs = std::max(1, a.jobs);
    for (std::size_t i = 0; i < a.case_paths.size(); ++i) {
        const std::string sub =
            (fs::path(a.out_dir) / fs::path(a.case_paths[i]).stem().string()).string();
        if (jobs > 1) {
            futs.push_back(std::async(std::launch::async, [&, i, sub] {
                return dispatch_one(a, a.case_paths[i], sub);
            }));
        } else {
            rcs[i] = dispatch_one(a, a.case_paths[i], sub);
        }
    }
    for (std::size_t i = 0; i < futs.size(); ++i) rcs[i] = futs[i].get();
    for (int rc : rcs)
        if (rc != kExitOk) return rc;
    return kExitOk;
}

struct ReliabilityArgs {
    std::string schedule_dir;
    std::string battery_path;
    std::string out_dir;
};

int cmd_reliability(const ReliabilityArgs& a) {
    const BatteryParams params = load_battery_params(a.battery_path);
    const json summary = json::parse(read_file((fs::path(a.schedule_dir) / "summary.json").string()));
    const double delta_hours = summary.at("delta_hours").get<double>();
    const int horizon = summary.at("horizon").get<int>();

    Provenance prov;
    prov.input_hashes["battery"] = hash_file(a.battery_path);
    prov.config["schedule_dir"] = a.schedule_dir;

    int rc = kExitOk;
    for (const auto& bat : summary.at("batteries")) {
        const std::string id = bat.at("id").get<std::string>();
        const std::string csv_path =
            (fs::path(a.schedule_dir) / ("battery_" + id + ".csv")).string();
        const std::string text = read_file(csv_path);
        Eigen::ArrayXd p_dis(horizon), p_cha(horizon), e(horizon);
        std::istringstream in(text);
        std::string line;
        int t = 0;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#' || line[0] == 't') continue;
            if (t >= horizon) throw ValidationError("battery CSV has extra rows: " + csv_path, {});
            double pd, pc, pi, po, ew, soc;
            int step;
            if (std::sscanf(line.c_str(), "%d,%lf,%lf,%lf,%lf,%lf,%lf", &step, &pd, &pc, &pi, &po,
                            &ew, &soc) != 7)
                throw ValidationError("battery CSV schema mismatch: " + csv_path, {});
            p_dis[t] = pd;
            p_cha[t] = pc;
            e[t] = ew;
            ++t;
        }
        if (t != horizon) throw ValidationError("battery CSV row count mismatch: " + csv_path, {});

        const auto rep =
            reliability::assess(p_dis, p_cha, e, delta_hours, params.T_ref, params);
        const std::string out = (fs::path(a.out_dir) / id).string();
        reliability::write_report(rep, out, prov.to_json().dump(), prov.to_csv_comment());
        std::cout << "battery " << id << ": " << rep.clipped_steps.size() << " clipped steps, "
                  << "imbalance " << rep.imbalance_Wh << " Wh ("
                  << rep.imbalance_fraction * 100.0 << "% of scheduled stored energy), "
                  << rep.negative_energy_steps << " negative-energy steps\n";
    }
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Li-ion battery characterization and network-constrained dispatch"};
    app.require_subcommand(1);

    CharacterizeArgs ca;
    auto* characterize = app.add_subcommand(
        "characterize", "Sample envelopes, surfaces, limits and error statistics");
    characterize->add_option("--battery", ca.battery_path, "battery parameter JSON")->required();
    characterize->add_option("--out", ca.out_dir, "output directory")->required();
    characterize->add_option("--temperature", ca.temperature, "evaluation temperature [K]");
    characterize->add_option("--soc-grid", ca.soc_grid, "comma-separated soc grid (both modes)");
    characterize->add_option("--power-grid", ca.power_grid,
                             "comma-separated power fractions (both modes)");
    characterize->add_option("--error-grid", ca.error_grid_n, "error evaluation grid size");

    DispatchArgs da;
    auto* dispatch_cmd =
        app.add_subcommand("dispatch", "Build and solve the network-constrained dispatch");
    dispatch_cmd->add_option("--case", da.case_paths, "network case JSON (repeatable)")
        ->required();
    dispatch_cmd->add_option("--mode", da.mode, "ideal|envelope|milp");
    dispatch_cmd->add_option("--out", da.out_dir, "output directory")->required();
    dispatch_cmd->add_option("--envelope-dir", da.envelope_dir,
                             "load envelopes from a characterize output directory");
    dispatch_cmd->add_option("--soc-grid", da.soc_grid, "envelope soc grid override");
    dispatch_cmd->add_option("--power-grid", da.power_grid, "envelope power fraction override");
    dispatch_cmd->add_option("--export-mps", da.export_mps, "write MPS and skip solving");
    dispatch_cmd->add_option("--import-solution", da.import_solution,
                             "name,value CSV from an external solver");
    dispatch_cmd->add_option("--shed-penalty", da.shed_penalty,
                             "enable load shedding at this penalty per Wh");
    dispatch_cmd->add_option("--tol-feas", da.feas_tol, "simplex feasibility tolerance");
    dispatch_cmd->add_option("--node-limit", da.node_limit, "branch-and-bound node limit");
    dispatch_cmd->add_option("--milp-steps", da.milp_steps, "milp sub-horizon length");
    dispatch_cmd->add_option("--jobs", da.jobs, "parallel case solves");

    ReliabilityArgs ra;
    auto* reliability_cmd =
        app.add_subcommand("reliability", "Clip a schedule to the true limits and assess it");
    reliability_cmd->add_option("--schedule", ra.schedule_dir, "dispatch output directory")
        ->required();
    reliability_cmd->add_option("--battery", ra.battery_path, "battery parameter JSON")
        ->required();
    reliability_cmd->add_option("--out", ra.out_dir, "output directory")->required();

    std::string tc_out;
    auto* testcase_cmd = app.add_subcommand(
        "make-testcase", "Write the synthetic 24-bus analog cases and battery file");
    testcase_cmd->add_option("--out", tc_out, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    std::string out_dir;
    try {
        if (characterize->parsed()) {
            out_dir = ca.out_dir;
            return cmd_characterize(ca);
        }
        if (dispatch_cmd->parsed()) {
            out_dir = da.out_dir;
            return cmd_dispatch(da);
        }
        if (reliability_cmd->parsed()) {
            out_dir = ra.out_dir;
            return cmd_reliability(ra);
        }
        if (testcase_cmd->parsed()) {
            const auto files = testcase::write_testcase(tc_out);
            std::cout << "wrote " << files.case_path << "\n"
                      << "wrote " << files.stressed_case_path << "\n"
                      << "wrote " << files.battery_path << "\n";
            return kExitOk;
        }
    } catch (const ValidationError& e) {
        log::error(e.what());
        write_error_json(out_dir, "validation", e.what());
        return kExitValidation;
    } catch (const dispatch::VerificationError& e) {
        log::error(e.what());
        write_error_json(out_dir, "verification", e.what());
        return kExitSolver;
    } catch (const optim::MpsError& e) {
        log::error(e.what());
        write_error_json(out_dir, "io", e.what());
        return kExitIo;
    } catch (const std::runtime_error& e) {
        // File-system level failures (missing files, unwritable paths).
        log::error(e.what());
        write_error_json(out_dir, "io", e.what());
        return kExitIo;
    } catch (const std::exception& e) {
        log::error(e.what());
        write_error_json(out_dir, "error", e.what());
        return kExitValidation;
    }
    return kExitOk;
}
