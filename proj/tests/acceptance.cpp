// Acceptance suite: nine numbered criteria, each printed as a single
// [PASS]/[FAIL] line with its key figures. Run "acceptance <n>" for one
// criterion or "acceptance" for all; the exit code is the failure count.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "battdispatch/branch_and_bound.hpp"
#include "battdispatch/characterization.hpp"
#include "battdispatch/dispatch.hpp"
#include "battdispatch/electrochem.hpp"
#include "battdispatch/mps.hpp"
#include "battdispatch/reliability.hpp"
#include "battdispatch/simplex.hpp"
#include "battdispatch/testcase.hpp"
#include "oracles.hpp"

using namespace battd;
namespace ec = battd::electrochem;
namespace ch = battd::charac;
namespace dsp = battd::dispatch;

namespace {

struct Clock {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double secs() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

const BatteryParams& ref_params() {
    static const BatteryParams p = testcase::synthetic_battery_params();
    return p;
}

bool close_rel(double got, long double want, double tol) {
    return std::abs(got - static_cast<double>(want)) <=
           tol * std::max(1.0L, std::abs(want));
}

struct Check {
    bool ok = true;
    std::string detail;
    void fail(const std::string& why) {
        ok = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
};

// ---------------------------------------------------------------- criterion 1
bool criterion1(std::string& msg) {
    Clock clock;
    const BatteryParams& p = ref_params();
    Check c;
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> soc(0.01, 0.99), temp(278.15, 318.15), cur(0.0, 200.0);
    int n_checked = 0;
    for (int k = 0; k < 1000; ++k) {
        const double s = soc(rng), T = temp(rng), i = cur(rng);
        if (!close_rel(ec::equilibrium_voltage(s, T, p), oracle::veq_literal(s, T, p), 1e-10))
            c.fail("equilibrium voltage mismatch");
        if (!close_rel(ec::ohmic_resistance(s, T, p), oracle::rohm_literal(s, T, p), 1e-10))
            c.fail("ohmic resistance mismatch");
        if (!close_rel(ec::charge_transfer_resistance(s, T, p), oracle::rct_literal(s, T, p),
                       1e-10))
            c.fail("charge-transfer resistance mismatch");
        if (!close_rel(ec::diffusion_resistance(T, ec::DiffusionPath::membrane, p),
                       oracle::rdif_literal(T, true, p), 1e-10))
            c.fail("membrane diffusion mismatch");
        if (!close_rel(ec::diffusion_resistance(T, ec::DiffusionPath::electrode, p),
                       oracle::rdif_literal(T, false, p), 1e-10))
            c.fail("electrode diffusion mismatch");
        if (!close_rel(ec::coulombic_efficiency(i, T, p), oracle::etac_literal(i, T, p), 1e-10))
            c.fail("coulombic efficiency mismatch");
        if (!close_rel(ec::surface_soc(s, i, T, p), oracle::surface_soc_literal(s, i, T, p),
                       1e-10))
            c.fail("surface soc mismatch");
        ++n_checked;
        if (!c.ok) break;
    }
    // interaction-sum continuity at chi = 1/2
    std::uniform_real_distribution<double> coef(-1e5, 1e5);
    for (int k = 0; k < 100 && c.ok; ++k) {
        std::array<double, 7> a{};
        for (auto& v : a) v = coef(rng);
        const auto span = std::span<const double, 7>(a);
        const double mid = ec::redlich_kister(0.5, span);
        const double scale = std::max(1.0, std::abs(mid));
        if (std::abs(ec::redlich_kister(0.5 - 1e-7, span) - mid) > 1e-6 * scale ||
            std::abs(ec::redlich_kister(0.5 + 1e-7, span) - mid) > 1e-6 * scale)
            c.fail("discontinuity at chi=1/2");
    }
    const double t = clock.secs();
    if (t >= 5.0) c.fail("runtime " + std::to_string(t) + " s exceeds 5 s");
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d random points at 1e-10, continuity at 1e-6, %.2f s",
                  n_checked, t);
    msg = c.ok ? buf : c.detail;
    return c.ok;
}

// ---------------------------------------------------------------- criterion 2
bool criterion2(std::string& msg) {
    Clock clock;
    const BatteryParams& p = ref_params();
    const double T = p.T_ref;
    Check c;
    double worst_dis = 0.0, worst_cha = 0.0;
    int caps_dis = 0, caps_cha = 0;
    for (int i = 1; i <= 99; ++i) {
        const double soc = i / 100.0;
        const auto lim = ch::current_limits(soc, T, p);
        worst_dis = std::max(worst_dis, std::abs(ec::surface_soc(soc, lim.dis.i_root_A, T, p)));
        worst_cha =
            std::max(worst_cha, std::abs(ec::surface_soc(soc, -lim.cha.i_root_A, T, p) - 1.0));
        if (lim.dis.capped) {
            ++caps_dis;
            if (lim.dis.i_max_A != p.c_rate_dis * p.capacity_Ah) c.fail("5C cap not exact");
        }
        if (lim.cha.capped) {
            ++caps_cha;
            if (lim.cha.i_max_A != p.c_rate_cha * p.capacity_Ah) c.fail("1C cap not exact");
        }
    }
    if (worst_dis > 1e-9) c.fail("discharge back-substitution " + std::to_string(worst_dis));
    if (worst_cha > 1e-9) c.fail("charge back-substitution " + std::to_string(worst_cha));
    if (caps_dis == 0 || caps_cha == 0) c.fail("caps never bind on the grid");
    const double t = clock.secs();
    if (t >= 1.0) c.fail("runtime exceeds 1 s");
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "surface-soc residuals %.1e / %.1e, caps exact on %d + %d grid points, %.3f s",
                  worst_dis, worst_cha, caps_dis, caps_cha, t);
    msg = c.ok ? buf : c.detail;
    return c.ok;
}

// ---------------------------------------------------------------- criterion 3
bool criterion3(std::string& msg) {
    const BatteryParams& p = ref_params();
    Check c;
    std::mt19937 rng(303);
    std::uniform_real_distribution<double> socd(0.3, 0.95), tempd(288.15, 308.15);
    for (double soc : {0.15, 0.5, 0.9}) {
        if (ch::efficiency(soc, 0.0, p.T_ref, ch::Mode::discharge, p) != 1.0)
            c.fail("discharge efficiency at zero current is not exactly 1");
        if (ch::efficiency(soc, 0.0, p.T_ref, ch::Mode::charge, p) != 1.0)
            c.fail("charge efficiency at zero current is not exactly 1");
    }
    for (int k = 0; k < 3; ++k) {
        const double soc = socd(rng), T = tempd(rng);
        const double v = ec::equilibrium_voltage(soc, T, p);
        const double r = ec::total_resistance(soc, T, p);
        const double want = -r / v;
        const double i1 = 10.0, i2 = 150.0;
        const double slope = (ch::efficiency(soc, i2, T, ch::Mode::discharge, p) -
                              ch::efficiency(soc, i1, T, ch::Mode::discharge, p)) /
                             (i2 - i1);
        if (std::abs(slope - want) > 1e-9 * std::abs(want))
            c.fail("discharge slope deviates from -R/v");
    }
    msg = c.ok ? "zero-current efficiencies exactly 1, linear slope -R/v at 1e-9" : c.detail;
    return c.ok;
}

// ---------------------------------------------------------------- criterion 4
bool criterion4(std::string& msg) {
    Clock clock;
    const BatteryParams& p = ref_params();
    const double T = p.T_ref;
    Check c;

    const auto env_d = ch::default_envelope(ch::Mode::discharge, T, p);
    const auto env_c = ch::default_envelope(ch::Mode::charge, T, p);
    if (env_d.samples.size() != 14) c.fail("discharge default is not 14 samples");
    if (env_c.samples.size() != 20) c.fail("charge default is not 20 samples");

    const auto err_d = ch::envelope_error(env_d, T, p);
    const auto err_c = ch::envelope_error(env_c, T, p);
    for (const auto* e : {&err_d, &err_c}) {
        if (!std::isfinite(e->max_rel_error) || !std::isfinite(e->mean_rel_error) ||
            !std::isfinite(e->std_rel_error))
            c.fail("non-finite error statistics");
        if (e->max_rel_error < e->mean_rel_error) c.fail("max below mean");
    }
    if (!(err_c.max_rel_error < err_d.max_rel_error))
        c.fail("charge max error not below discharge max error");

    // vertex interpolation reproduces every sample
    for (const auto* env : {&env_d, &env_c}) {
        const double sign = env->mode == ch::Mode::discharge ? 1.0 : -1.0;
        for (const auto& s : env->samples) {
            optim::LinearProgram lp;
            for (std::size_t j = 0; j < env->samples.size(); ++j)
                lp.add_variable("w" + std::to_string(j), 0, 1,
                                sign * env->samples[j].p_internal_W);
            const int r1 = lp.add_constraint("sum", optim::Sense::eq, 1.0);
            const int r2 = lp.add_constraint("soc", optim::Sense::eq, s.soc);
            const int r3 = lp.add_constraint("pow", optim::Sense::eq, s.p_terminal_W);
            for (std::size_t j = 0; j < env->samples.size(); ++j) {
                lp.add_coeff(r1, j, 1.0);
                lp.add_coeff(r2, j, env->samples[j].soc);
                lp.add_coeff(r3, j, env->samples[j].p_terminal_W);
            }
            const auto sol = optim::solve_lp(lp);
            if (sol.status != optim::SolveStatus::optimal) {
                c.fail("vertex interpolation infeasible");
                continue;
            }
            if (std::abs(sign * sol.objective - s.p_internal_W) >
                1e-9 * std::max(1.0, s.p_internal_W))
                c.fail("vertex interpolation error nonzero");
        }
    }

    // refinement: 3 power levels per soc versus the default 6
    for (auto mode : {ch::Mode::discharge, ch::Mode::charge}) {
        Eigen::ArrayXd f3(3);
        f3 << 1.0 / 3, 2.0 / 3, 1.0;
        const auto coarse = ch::sample_surface(mode, ch::default_soc_grid(mode), f3, T, p);
        const auto fine = ch::sample_surface(mode, ch::default_soc_grid(mode),
                                             ch::default_power_fraction_grid(mode), T, p);
        const auto e_coarse = ch::envelope_error(coarse, T, p, 50, 50);
        const auto e_fine = ch::envelope_error(fine, T, p, 50, 50);
        if (e_fine.max_rel_error > e_coarse.max_rel_error + 1e-12)
            c.fail("refining the power grid increased the max error");
    }

    const double t = clock.secs();
    if (t >= 30.0) c.fail("runtime exceeds 30 s");
    char buf[320];
    std::snprintf(buf, sizeof buf,
                  "dis max/mean/std %.4f/%.4f/%.4f, cha %.4f/%.4f/%.4f (reference targets: "
                  "9.03%%/1.21%%/1.39%% and 1.12%%/0.22%%/0.18%% with the original parameter "
                  "set), vertices exact, refinement monotone, %.1f s",
                  err_d.max_rel_error, err_d.mean_rel_error, err_d.std_rel_error,
                  err_c.max_rel_error, err_c.mean_rel_error, err_c.std_rel_error, t);
    msg = c.ok ? buf : c.detail;
    return c.ok;
}

// ---------------------------------------------------------------- criterion 5
bool criterion5(std::string& msg) {
    Clock clock;
    Check c;
    std::mt19937 rng(505);
    int lp_opt = 0, lp_inf = 0;
    for (int k = 0; k < 200 && c.ok; ++k) {
        const auto lp = oracle::random_lp(rng);
        const auto got = optim::solve_lp(lp);
        const auto want = oracle::lp_vertex_oracle(lp);
        if (want.feasible) {
            if (got.status != optim::SolveStatus::optimal)
                c.fail("LP " + std::to_string(k) + ": solver says " +
                       optim::status_name(got.status) + " but a feasible vertex exists");
            else if (std::abs(got.objective - want.objective) >
                     1e-7 * std::max(1.0, std::abs(want.objective)))
                c.fail("LP " + std::to_string(k) + ": objective off by " +
                       std::to_string(got.objective - want.objective));
            ++lp_opt;
        } else {
            if (got.status != optim::SolveStatus::infeasible)
                c.fail("LP " + std::to_string(k) + ": infeasibility missed");
            ++lp_inf;
        }
    }
    int mip_checked = 0;
    for (int k = 0; k < 50 && c.ok; ++k) {
        const auto mip = oracle::random_mip(rng, k % 2 == 0, 12);
        const auto got = optim::solve_milp(mip);
        const auto want = oracle::mip_enumeration_oracle(mip);
        if (want.feasible) {
            if (got.status != optim::SolveStatus::optimal)
                c.fail("MIP " + std::to_string(k) + ": solver says " +
                       optim::status_name(got.status));
            else if (std::abs(got.objective - want.objective) >
                     1e-6 * std::max(1.0, std::abs(want.objective)))
                c.fail("MIP " + std::to_string(k) + ": objective mismatch");
        } else if (got.status != optim::SolveStatus::infeasible) {
            c.fail("MIP " + std::to_string(k) + ": infeasibility missed");
        }
        ++mip_checked;
    }
    const double t = clock.secs();
    if (t >= 120.0) c.fail("runtime exceeds 2 min");
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "200 LPs vs vertex enumeration (%d optimal, %d infeasible), %d MIPs vs "
                  "exhaustive enumeration, %.1f s",
                  lp_opt, lp_inf, mip_checked, t);
    msg = c.ok ? buf : c.detail;
    return c.ok;
}

// ---------------------------------------------------------------- criterion 6
bool criterion6(std::string& msg) {
    Clock clock;
    Check c;
    const auto nc = testcase::make_testcase(false);
    const auto f = dsp::make_envelope_formulation(ref_params(), ref_params().T_ref);
    const auto dm = dsp::build_dispatch(nc, f);
    const auto s = dsp::solve_dispatch(nc, f, dm);
    if (s.status != optim::SolveStatus::optimal) {
        msg = std::string("solve status ") + optim::status_name(s.status);
        return false;
    }
    const auto rep = dsp::verify_schedule(nc, f, s);
    if (rep.balance > 1e-6) c.fail("balance residual " + std::to_string(rep.balance));
    if (rep.flow_def > 1e-6) c.fail("flow residual " + std::to_string(rep.flow_def));
    if (rep.cyclic_Wh > 1e-6) c.fail("cyclic residual " + std::to_string(rep.cyclic_Wh));
    if (rep.energy_Wh > 1e-6) c.fail("energy residual " + std::to_string(rep.energy_Wh));
    if (rep.soc_link > 1e-9) c.fail("soc link " + std::to_string(rep.soc_link));
    if (rep.weight_sum > 1e-9) c.fail("weight simplex " + std::to_string(rep.weight_sum));
    if (rep.simultaneous > 1e-6) c.fail("simultaneous charge/discharge detected");
    const double t = clock.secs();
    if (t >= 120.0) c.fail("runtime exceeds 2 min");
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "144 steps, %d rows: bal %.1e, flow %.1e, cyc %.1e, soc %.1e, weights %.1e, "
                  "pdis*pcha %.1e, %.1f s",
                  s.n_constraints, rep.balance, rep.flow_def, rep.cyclic_Wh, rep.soc_link,
                  rep.weight_sum, rep.simultaneous, t);
    msg = c.ok ? buf : c.detail;
    return c.ok;
}

// ---------------------------------------------------------------- criterion 7
bool criterion7(std::string& msg) {
    Clock clock;
    Check c;
    const auto nc = testcase::make_testcase(false);
    const auto& p = ref_params();

    const auto f_ideal = dsp::make_ideal_formulation(p);
    const auto s_ideal = dsp::solve_dispatch(nc, f_ideal, dsp::build_dispatch(nc, f_ideal));
    const auto f_env = dsp::make_envelope_formulation(p, p.T_ref);
    const auto s_env = dsp::solve_dispatch(nc, f_env, dsp::build_dispatch(nc, f_env));
    if (s_ideal.status != optim::SolveStatus::optimal ||
        s_env.status != optim::SolveStatus::optimal)
        c.fail("full-horizon solves not optimal");

    const double rel_gap = std::abs(s_ideal.objective - s_env.objective) /
                           std::min(s_ideal.objective, s_env.objective);
    if (!(rel_gap <= 1e-3)) c.fail("ideal vs envelope spread " + std::to_string(rel_gap));

    // triangle-method model on the 24-step sub-horizon, against the bound
    // from relaxing its binaries
    const auto sub = dsp::truncate_horizon(nc, 24);
    const auto f_milp = dsp::make_milp_formulation(p, p.T_ref);
    const auto dm = dsp::build_dispatch(sub, f_milp);
    const auto relaxed = optim::solve_lp(dm.model.lp);
    dsp::SolveDispatchOptions so;
    so.milp.node_limit = 5000;
    const auto s_milp = dsp::solve_dispatch(sub, f_milp, dm, so);
    const bool milp_ok = s_milp.status == optim::SolveStatus::optimal ||
                         s_milp.status == optim::SolveStatus::node_limit;
    if (!milp_ok || relaxed.status != optim::SolveStatus::optimal)
        c.fail("milp or relaxation solve failed");
    else if (!(s_milp.objective >= relaxed.objective - 1e-6))
        c.fail("milp objective below the relaxed bound");

    const double t = clock.secs();
    char buf[280];
    std::snprintf(buf, sizeof buf,
                  "ideal %.4f vs envelope %.4f (spread %.5f%%, limit 0.1%%); milp(24) %.4f >= "
                  "relaxed %.4f; published table objectives are property-checked, not "
                  "reproduced; %.1f s",
                  s_ideal.objective, s_env.objective, 100.0 * rel_gap, s_milp.objective,
                  relaxed.objective, t);
    msg = c.ok ? buf : c.detail;
    return c.ok;
}

// ---------------------------------------------------------------- criterion 8
bool criterion8(std::string& msg) {
    Check c;
    const auto& p = ref_params();
    const double T = p.T_ref;
    double metric_secs = 0.0;  // the 10 s budget covers the assessments, not
                               // the dispatch solves that produce their input

    // stressed case, idealized battery: clipped steps and a double-digit miss
    const auto stressed = testcase::make_testcase(true);
    const auto f_ideal = dsp::make_ideal_formulation(p);
    const auto s_ideal =
        dsp::solve_dispatch(stressed, f_ideal, dsp::build_dispatch(stressed, f_ideal));
    double ideal_frac = 0.0;
    std::size_t ideal_clipped = 0;
    if (s_ideal.status != optim::SolveStatus::optimal) {
        c.fail("stressed ideal solve failed");
    } else {
        const auto& b = s_ideal.batteries[0];
        Clock mc;
        const auto rep = reliability::assess(b.p_dis_W, b.p_cha_W, b.e_Wh, stressed.delta_hours,
                                             T, p);
        metric_secs += mc.secs();
        ideal_frac = rep.imbalance_fraction;
        ideal_clipped = rep.clipped_steps.size();
        if (rep.clipped_steps.empty()) c.fail("no clipped steps on the stressed case");
        if (rep.imbalance_fraction < 0.10)
            c.fail("imbalance fraction " + std::to_string(rep.imbalance_fraction) +
                   " below double digits");
    }

    // envelope-mode schedule stays within twice the envelope mean error
    const auto nc = testcase::make_testcase(false);
    const auto f_env = dsp::make_envelope_formulation(p, T);
    const auto s_env = dsp::solve_dispatch(nc, f_env, dsp::build_dispatch(nc, f_env));
    double env_frac = 0.0, env_bound = 0.0;
    if (s_env.status != optim::SolveStatus::optimal) {
        c.fail("envelope solve failed");
    } else {
        const auto& b = s_env.batteries[0];
        Clock mc;
        const auto rep =
            reliability::assess(b.p_dis_W, b.p_cha_W, b.e_Wh, nc.delta_hours, T, p);
        metric_secs += mc.secs();
        const auto err_d =
            ch::envelope_error(ch::default_envelope(ch::Mode::discharge, T, p), T, p, 50, 50);
        const auto err_c =
            ch::envelope_error(ch::default_envelope(ch::Mode::charge, T, p), T, p, 50, 50);
        env_frac = rep.imbalance_fraction;
        env_bound = 2.0 * std::max(err_d.mean_rel_error, err_c.mean_rel_error);
        if (!(env_frac <= env_bound))
            c.fail("envelope imbalance " + std::to_string(env_frac) + " above bound " +
                   std::to_string(env_bound));
    }

    // an exactly-propagated feasible schedule realizes itself bit for bit
    {
        const int Th = 12;
        Eigen::ArrayXd pdis = Eigen::ArrayXd::Zero(Th), pcha = Eigen::ArrayXd::Zero(Th);
        for (int t = 0; t < 4; ++t) pcha[t] = 3000.0;
        for (int t = 5; t < 10; ++t) pdis[t] = 2500.0;
        Clock mc;
        const auto e =
            reliability::realize_trajectory(pdis, pcha, 0.5 * p.energy_capacity_Wh, 1.0 / 6.0,
                                            T, p);
        const auto rep = reliability::assess(pdis, pcha, e, 1.0 / 6.0, T, p);
        metric_secs += mc.secs();
        if (rep.imbalance_Wh != 0.0) c.fail("feasible schedule imbalance not exactly zero");
    }

    if (metric_secs >= 10.0) c.fail("assessment runtime exceeds 10 s");
    char buf[240];
    std::snprintf(buf, sizeof buf,
                  "stressed ideal: %zu clipped steps, |imbalance| %.1f%%; envelope %.2f%% <= "
                  "bound %.2f%%; feasible schedule exactly 0; assessments %.2f s",
                  ideal_clipped, 100.0 * std::abs(ideal_frac), 100.0 * env_frac,
                  100.0 * env_bound, metric_secs);
    msg = c.ok ? buf : c.detail;
    return c.ok;
}

// ---------------------------------------------------------------- criterion 9
bool criterion9(std::string& msg) {
    Clock clock;
    Check c;
    std::mt19937 rng(909);
    for (int k = 0; k < 100 && c.ok; ++k) {
        optim::MixedIntegerProgram mip;
        if (k % 3 == 0) mip = oracle::random_mip(rng, k % 2 == 0, 9);
        else mip.lp = oracle::random_lp(rng);
        const auto back = optim::mps_from_text(optim::mps_text(mip));
        if (back.lp.num_vars() != mip.lp.num_vars() || back.lp.num_rows() != mip.lp.num_rows()) {
            c.fail("model " + std::to_string(k) + ": shape changed");
            break;
        }
        if (back.binary_variables != mip.binary_variables) {
            c.fail("model " + std::to_string(k) + ": integrality not preserved");
            break;
        }
        auto num_close = [](double a, double b) {
            if (std::isinf(a) || std::isinf(b)) return std::isinf(a) && std::isinf(b);
            return std::abs(a - b) <= 1e-11 * std::max(1.0, std::abs(a));
        };
        for (int j = 0; j < mip.lp.num_vars() && c.ok; ++j) {
            const auto& a = mip.lp.variables[j];
            const auto& b = back.lp.variables[j];
            if (a.name != b.name || !num_close(a.objective, b.objective) ||
                !num_close(a.lower, b.lower) || !num_close(a.upper, b.upper))
                c.fail("model " + std::to_string(k) + ": variable " + a.name + " changed");
        }
        for (int i = 0; i < mip.lp.num_rows() && c.ok; ++i) {
            const auto& ra = mip.lp.constraints[i];
            const auto& rb = back.lp.constraints[i];
            if (ra.name != rb.name || ra.sense != rb.sense || !num_close(ra.rhs, rb.rhs))
                c.fail("model " + std::to_string(k) + ": row " + ra.name + " changed");
            std::map<int, double> ma, mb;
            for (const auto& [j, v] : ra.coeffs) ma[j] += v;
            for (const auto& [j, v] : rb.coeffs) mb[j] += v;
            if (ma.size() != mb.size()) c.fail("row nnz changed");
            for (const auto& [j, v] : ma)
                if (!mb.count(j) || !num_close(v, mb[j]))
                    c.fail("model " + std::to_string(k) + ": coefficient drift");
        }
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "100 randomized models, 12 significant digits, %.1f s",
                  clock.secs());
    msg = c.ok ? buf : c.detail;
    return c.ok;
}

struct Criterion {
    int id;
    const char* title;
    bool (*fn)(std::string&);
};

const Criterion kCriteria[] = {
    {1, "electrochemical literal-formula oracle suite", criterion1},
    {2, "current-limit root back-substitution and exact C-rate caps", criterion2},
    {3, "efficiency identities and discharge slope", criterion3},
    {4, "envelope quality on the shipped parameter set", criterion4},
    {5, "LP and MILP solver correctness against enumeration oracles", criterion5},
    {6, "dispatch constraint verification on the 24-bus analog", criterion6},
    {7, "case-comparison properties (ideal, envelope, milp bound)", criterion7},
    {8, "schedule-reliability metric", criterion8},
    {9, "MPS export/import round trip", criterion9},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);
    int failures = 0;
    for (const auto& cr : kCriteria) {
        if (only != 0 && cr.id != only) continue;
        std::string msg;
        const bool ok = cr.fn(msg);
        std::printf("[%s] criterion %d: %s - %s\n", ok ? "PASS" : "FAIL", cr.id, cr.title,
                    msg.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    return failures;
}
