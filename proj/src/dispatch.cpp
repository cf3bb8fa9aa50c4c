#include "battdispatch/dispatch.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "battdispatch/branch_and_bound.hpp"
#include "battdispatch/log.hpp"
#include "battdispatch/provenance.hpp"
#include "battdispatch/simplex.hpp"

namespace battd::dispatch {

using charac::EnvelopeSample;
using charac::Mode;
using optim::kInf;
using optim::Sense;

const char* formulation_name(FormulationKind k) {
    switch (k) {
        case FormulationKind::ideal: return "ideal";
        case FormulationKind::envelope: return "envelope";
        case FormulationKind::milp_triangle: return "milp";
    }
    return "unknown";
}

SurfaceGrid sample_grid(Mode mode, const Eigen::ArrayXd& soc_grid,
                        const Eigen::ArrayXd& power_fraction_grid, double T,
                        const BatteryParams& p) {
    SurfaceGrid g;
    g.mode = mode;
    g.soc_grid = soc_grid;
    g.power_fraction_grid = power_fraction_grid;
    for (double soc : soc_grid) {
        const auto lim = charac::max_power(soc, T, mode, p);
        for (double f : power_fraction_grid) {
            const double pt = f * lim.p_max_W;
            const auto op = charac::terminal_to_internal(soc, pt, T, mode, p);
            g.points.push_back({soc, pt, op.p_internal_W});
        }
    }
    return g;
}

Triangulation triangle_partition(const SurfaceGrid& grid) {
    const int ns = static_cast<int>(grid.soc_grid.size());
    const int np = static_cast<int>(grid.power_fraction_grid.size());
    if (ns < 2 || np < 2) throw optim::ModelError("triangle_partition: grid needs at least 2x2");
    if (static_cast<int>(grid.points.size()) != ns * np)
        throw optim::ModelError("triangle_partition: non-rectangular grid");
    for (int i = 0; i < ns; ++i)
        for (int q = 0; q < np; ++q)
            if (grid.points[i * np + q].soc != grid.soc_grid[i])
                throw optim::ModelError("triangle_partition: grid not soc-major rectangular");

    Triangulation tri;
    tri.n_soc = ns;
    tri.n_power = np;
    tri.vertices = grid.points;
    for (int i = 0; i + 1 < ns; ++i) {
        for (int q = 0; q + 1 < np; ++q) {
            const int v00 = i * np + q;
            const int v10 = (i + 1) * np + q;
            const int v01 = i * np + q + 1;
            const int v11 = (i + 1) * np + q + 1;
            tri.triangles.push_back({v00, v10, v11});  // below the diagonal
            tri.triangles.push_back({v00, v01, v11});  // above the diagonal
        }
    }
    return tri;
}

BatteryFormulation make_ideal_formulation(const BatteryParams& p) {
    BatteryFormulation f;
    f.kind = FormulationKind::ideal;
    f.ideal.p_max_dis_W = p.c_rate_dis * p.nominal_current() * p.rated_voltage;
    f.ideal.p_max_cha_W = p.c_rate_cha * p.nominal_current() * p.rated_voltage;
    return f;
}

BatteryFormulation make_envelope_formulation(const BatteryParams& p, double T) {
    return make_envelope_formulation(charac::default_envelope(Mode::discharge, T, p),
                                     charac::default_envelope(Mode::charge, T, p));
}

BatteryFormulation make_envelope_formulation(charac::EnvelopeSet dis, charac::EnvelopeSet cha) {
    BatteryFormulation f;
    f.kind = FormulationKind::envelope;
    for (const auto* e : {&dis, &cha}) {
        const auto rep = charac::validate_envelope(*e, 3);
        if (!rep.ok())
            throw ValidationError("envelope rejected for dispatch:\n" + rep.to_string(), rep);
    }
    f.envelope_dis = std::move(dis);
    f.envelope_cha = std::move(cha);
    return f;
}

BatteryFormulation make_milp_formulation(const BatteryParams& p, double T, int n_soc,
                                         int n_power) {
    BatteryFormulation f;
    f.kind = FormulationKind::milp_triangle;
    Eigen::ArrayXd socs = Eigen::ArrayXd::LinSpaced(n_soc, 0.0, 1.0);
    Eigen::ArrayXd fracs = Eigen::ArrayXd::LinSpaced(n_power, 0.0, 1.0);
    f.tri_dis = triangle_partition(sample_grid(Mode::discharge, socs, fracs, T, p));
    f.tri_cha = triangle_partition(sample_grid(Mode::charge, socs, fracs, T, p));
    return f;
}

namespace {

std::string tag(const char* base, int a, int t) {
    return std::string(base) + "[" + std::to_string(a) + "," + std::to_string(t + 1) + "]";
}
std::string tag3(const char* base, int s, int j, int t) {
    return std::string(base) + "[" + std::to_string(s) + "," + std::to_string(j) + "," +
           std::to_string(t + 1) + "]";
}

double max_terminal(const std::vector<EnvelopeSample>& samples) {
    double m = 0.0;
    for (const auto& s : samples) m = std::max(m, s.p_terminal_W);
    return m;
}
double max_internal(const std::vector<EnvelopeSample>& samples) {
    double m = 0.0;
    for (const auto& s : samples) m = std::max(m, s.p_internal_W);
    return m;
}

}  // namespace

DispatchModel build_dispatch(const NetworkCase& c, const BatteryFormulation& f,
                             const BuildOptions& opt) {
    {
        const auto rep = c.validate();
        if (!rep.ok()) throw ValidationError("case validation failed:\n" + rep.to_string(), rep);
        for (const auto& issue : rep.issues)
            if (!issue.fatal) log::warn("build_dispatch: " + issue.message);
    }

    DispatchModel dm;
    dm.kind = f.kind;
    const int N = static_cast<int>(c.nodes.size());
    const int L = static_cast<int>(c.lines.size());
    const int G = static_cast<int>(c.generators.size());
    const int S = static_cast<int>(c.batteries.size());
    const int T = c.horizon;
    dm.n_nodes = N;
    dm.n_lines = L;
    dm.n_gens = G;
    dm.n_batteries = S;
    dm.horizon = T;

    optim::LinearProgram& lp = dm.model.lp;
    const double dt = c.delta_hours;

    dm.v_gen.resize(static_cast<std::size_t>(G) * T);
    for (int g = 0; g < G; ++g)
        for (int t = 0; t < T; ++t)
            dm.v_gen[g * T + t] =
                lp.add_variable(tag("pg", g, t), c.generators[g].p_min_W, c.generators[g].p_max_W,
                                c.generators[g].cost_per_Wh * dt);

    dm.v_flow.resize(static_cast<std::size_t>(L) * T);
    for (int l = 0; l < L; ++l)
        for (int t = 0; t < T; ++t)
            dm.v_flow[l * T + t] = lp.add_variable(tag("f", l, t), -c.lines[l].flow_limit_W,
                                                   c.lines[l].flow_limit_W, 0.0);

    const int ref = c.reference_node();
    dm.v_angle.resize(static_cast<std::size_t>(N) * T);
    for (int n = 0; n < N; ++n)
        for (int t = 0; t < T; ++t) {
            const double lo = n == ref ? 0.0 : c.nodes[n].angle_min_rad;
            const double hi = n == ref ? 0.0 : c.nodes[n].angle_max_rad;
            dm.v_angle[n * T + t] = lp.add_variable(tag("delta", n, t), lo, hi, 0.0);
        }

    if (opt.shed_penalty_per_Wh > 0.0) {
        dm.v_shed.resize(static_cast<std::size_t>(N) * T);
        for (int n = 0; n < N; ++n)
            for (int t = 0; t < T; ++t)
                dm.v_shed[n * T + t] = lp.add_variable(tag("shed", n, t), 0.0, c.demand_W(n, t),
                                                       opt.shed_penalty_per_Wh * dt);
    }

    dm.v_pdis.resize(static_cast<std::size_t>(S) * T);
    dm.v_pcha.resize(static_cast<std::size_t>(S) * T);
    dm.v_e.resize(static_cast<std::size_t>(S) * T);
    dm.v_soc.resize(static_cast<std::size_t>(S) * T);
    const bool sampled = f.kind != FormulationKind::ideal;
    if (sampled) {
        dm.v_pin.resize(static_cast<std::size_t>(S) * T);
        dm.v_pout.resize(static_cast<std::size_t>(S) * T);
    }

    const std::vector<EnvelopeSample>& dis_samples =
        f.kind == FormulationKind::envelope ? f.envelope_dis.samples : f.tri_dis.vertices;
    const std::vector<EnvelopeSample>& cha_samples =
        f.kind == FormulationKind::envelope ? f.envelope_cha.samples : f.tri_cha.vertices;
    const int J = sampled ? static_cast<int>(dis_samples.size()) : 0;
    const int K = sampled ? static_cast<int>(cha_samples.size()) : 0;
    dm.x_per_batt = J;
    dm.y_per_batt = K;

    for (int s = 0; s < S; ++s) {
        const auto& bat = c.batteries[s];
        const double cap = bat.params.energy_capacity_Wh;
        const double pdis_ub =
            f.kind == FormulationKind::ideal ? f.ideal.p_max_dis_W : max_terminal(dis_samples);
        const double pcha_ub =
            f.kind == FormulationKind::ideal ? f.ideal.p_max_cha_W : max_terminal(cha_samples);
        for (int t = 0; t < T; ++t)
            dm.v_pdis[s * T + t] = lp.add_variable(tag("pdis", s, t), 0.0, pdis_ub, 0.0);
        for (int t = 0; t < T; ++t)
            dm.v_pcha[s * T + t] = lp.add_variable(tag("pcha", s, t), 0.0, pcha_ub, 0.0);
        if (sampled) {
            const double pout_ub = max_internal(dis_samples);
            const double pin_ub = max_internal(cha_samples);
            for (int t = 0; t < T; ++t)
                dm.v_pout[s * T + t] = lp.add_variable(tag("pout", s, t), 0.0, pout_ub, 0.0);
            for (int t = 0; t < T; ++t)
                dm.v_pin[s * T + t] = lp.add_variable(tag("pin", s, t), 0.0, pin_ub, 0.0);
        }
        for (int t = 0; t < T; ++t) {
            const double lo = t == 0 ? bat.initial_energy_Wh : 0.0;
            const double hi = t == 0 ? bat.initial_energy_Wh : cap;
            dm.v_e[s * T + t] = lp.add_variable(tag("e", s, t), lo, hi, 0.0);
        }
        for (int t = 0; t < T; ++t)
            dm.v_soc[s * T + t] = lp.add_variable(tag("soc", s, t), 0.0, 1.0, 0.0);
    }

    if (sampled) {
        dm.v_x.resize(static_cast<std::size_t>(S) * J * T);
        dm.v_y.resize(static_cast<std::size_t>(S) * K * T);
        for (int s = 0; s < S; ++s) {
            for (int j = 0; j < J; ++j)
                for (int t = 0; t < T; ++t)
                    dm.v_x[(s * J + j) * T + t] = lp.add_variable(tag3("x", s, j, t), 0.0, 1.0, 0.0);
            for (int k = 0; k < K; ++k)
                for (int t = 0; t < T; ++t)
                    dm.v_y[(s * K + k) * T + t] = lp.add_variable(tag3("y", s, k, t), 0.0, 1.0, 0.0);
        }
    }
    if (f.kind == FormulationKind::milp_triangle) {
        const int TD = static_cast<int>(f.tri_dis.triangles.size());
        const int TC = static_cast<int>(f.tri_cha.triangles.size());
        dm.zdis_per_batt = TD;
        dm.zcha_per_batt = TC;
        dm.v_zdis.resize(static_cast<std::size_t>(S) * TD * T);
        dm.v_zcha.resize(static_cast<std::size_t>(S) * TC * T);
        for (int s = 0; s < S; ++s) {
            for (int tr = 0; tr < TD; ++tr)
                for (int t = 0; t < T; ++t) {
                    const int v = lp.add_variable(tag3("zdis", s, tr, t), 0.0, 1.0, 0.0);
                    dm.v_zdis[(s * TD + tr) * T + t] = v;
                    dm.model.binary_variables.push_back(v);
                }
            for (int tr = 0; tr < TC; ++tr)
                for (int t = 0; t < T; ++t) {
                    const int v = lp.add_variable(tag3("zcha", s, tr, t), 0.0, 1.0, 0.0);
                    dm.v_zcha[(s * TC + tr) * T + t] = v;
                    dm.model.binary_variables.push_back(v);
                }
        }
    }

    // Nodal balance: sum_l A_nl f + sum_g p + sum_s (pdis - pcha) [+ shed] = D.
    for (int n = 0; n < N; ++n)
        for (int t = 0; t < T; ++t) {
            const int row = lp.add_constraint(tag("bal", n, t), Sense::eq, c.demand_W(n, t));
            for (int l = 0; l < L; ++l) {
                if (c.lines[l].from == n) lp.add_coeff(row, dm.v_flow[l * T + t], 1.0);
                if (c.lines[l].to == n) lp.add_coeff(row, dm.v_flow[l * T + t], -1.0);
            }
            for (int g = 0; g < G; ++g)
                if (c.generators[g].node == n) lp.add_coeff(row, dm.v_gen[g * T + t], 1.0);
            for (int s = 0; s < S; ++s)
                if (c.batteries[s].node == n) {
                    lp.add_coeff(row, dm.v_pdis[s * T + t], 1.0);
                    lp.add_coeff(row, dm.v_pcha[s * T + t], -1.0);
                }
            if (!dm.v_shed.empty()) lp.add_coeff(row, dm.v_shed[n * T + t], 1.0);
        }

    // DC flow definition, scaled by the reactance: X_l f - sum_n A_nl delta = 0.
    for (int l = 0; l < L; ++l)
        for (int t = 0; t < T; ++t) {
            const int row = lp.add_constraint(tag("flow", l, t), Sense::eq, 0.0);
            lp.add_coeff(row, dm.v_flow[l * T + t], c.lines[l].reactance_pu);
            lp.add_coeff(row, dm.v_angle[c.lines[l].from * T + t], -1.0);
            lp.add_coeff(row, dm.v_angle[c.lines[l].to * T + t], 1.0);
        }

    for (int s = 0; s < S; ++s) {
        const auto& bat = c.batteries[s];
        const double cap = bat.params.energy_capacity_Wh;

        for (int t = 1; t < T; ++t) {
            const int row = lp.add_constraint(tag("ebal", s, t), Sense::eq, 0.0);
            lp.add_coeff(row, dm.v_e[s * T + t], 1.0);
            lp.add_coeff(row, dm.v_e[s * T + t - 1], -1.0);
            if (sampled) {
                lp.add_coeff(row, dm.v_pin[s * T + t - 1], -dt);
                lp.add_coeff(row, dm.v_pout[s * T + t - 1], dt);
            } else {
                lp.add_coeff(row, dm.v_pcha[s * T + t - 1], -dt * f.ideal.eta_cha);
                lp.add_coeff(row, dm.v_pdis[s * T + t - 1], dt / f.ideal.eta_dis);
            }
        }
        {
            const int row = lp.add_constraint("cyc[" + std::to_string(s) + "]", Sense::eq, 0.0);
            lp.add_coeff(row, dm.v_e[s * T + 0], 1.0);
            lp.add_coeff(row, dm.v_e[s * T + T - 1], -1.0);
        }
        for (int t = 0; t < T; ++t) {
            const int row = lp.add_constraint(tag("socdef", s, t), Sense::eq, 0.0);
            lp.add_coeff(row, dm.v_soc[s * T + t], 1.0);
            lp.add_coeff(row, dm.v_e[s * T + t], -1.0 / cap);
        }

        if (!sampled) continue;

        for (int t = 0; t < T; ++t) {
            const int r_pd = lp.add_constraint(tag("pdisdef", s, t), Sense::eq, 0.0);
            const int r_po = lp.add_constraint(tag("poutdef", s, t), Sense::eq, 0.0);
            lp.add_coeff(r_pd, dm.v_pdis[s * T + t], 1.0);
            lp.add_coeff(r_po, dm.v_pout[s * T + t], 1.0);
            for (int j = 0; j < J; ++j) {
                const int xj = dm.v_x[(s * J + j) * T + t];
                if (dis_samples[j].p_terminal_W != 0.0)
                    lp.add_coeff(r_pd, xj, -dis_samples[j].p_terminal_W);
                if (dis_samples[j].p_internal_W != 0.0)
                    lp.add_coeff(r_po, xj, -dis_samples[j].p_internal_W);
            }
            const int r_pc = lp.add_constraint(tag("pchadef", s, t), Sense::eq, 0.0);
            const int r_pi = lp.add_constraint(tag("pindef", s, t), Sense::eq, 0.0);
            lp.add_coeff(r_pc, dm.v_pcha[s * T + t], 1.0);
            lp.add_coeff(r_pi, dm.v_pin[s * T + t], 1.0);
            for (int k = 0; k < K; ++k) {
                const int yk = dm.v_y[(s * K + k) * T + t];
                if (cha_samples[k].p_terminal_W != 0.0)
                    lp.add_coeff(r_pc, yk, -cha_samples[k].p_terminal_W);
                if (cha_samples[k].p_internal_W != 0.0)
                    lp.add_coeff(r_pi, yk, -cha_samples[k].p_internal_W);
            }

            if (f.kind == FormulationKind::envelope) {
                // Combined SOC sampling constraint of the linear model.
                const int r_soc = lp.add_constraint(tag("soccomb", s, t), Sense::eq, 0.0);
                for (int j = 0; j < J; ++j)
                    if (dis_samples[j].soc != 0.0)
                        lp.add_coeff(r_soc, dm.v_x[(s * J + j) * T + t], dis_samples[j].soc);
                for (int k = 0; k < K; ++k)
                    if (cha_samples[k].soc != 0.0)
                        lp.add_coeff(r_soc, dm.v_y[(s * K + k) * T + t], cha_samples[k].soc);
                lp.add_coeff(r_soc, dm.v_soc[s * T + t], -1.0);
            } else {
                // Triangle method pins each mode's weights to the SOC exactly.
                const int r_sx = lp.add_constraint(tag("socx", s, t), Sense::eq, 0.0);
                for (int j = 0; j < J; ++j)
                    if (dis_samples[j].soc != 0.0)
                        lp.add_coeff(r_sx, dm.v_x[(s * J + j) * T + t], dis_samples[j].soc);
                lp.add_coeff(r_sx, dm.v_soc[s * T + t], -1.0);
                const int r_sy = lp.add_constraint(tag("socy", s, t), Sense::eq, 0.0);
                for (int k = 0; k < K; ++k)
                    if (cha_samples[k].soc != 0.0)
                        lp.add_coeff(r_sy, dm.v_y[(s * K + k) * T + t], cha_samples[k].soc);
                lp.add_coeff(r_sy, dm.v_soc[s * T + t], -1.0);
            }

            const int r_xs = lp.add_constraint(tag("xsum", s, t), Sense::eq, 1.0);
            for (int j = 0; j < J; ++j) lp.add_coeff(r_xs, dm.v_x[(s * J + j) * T + t], 1.0);
            const int r_ys = lp.add_constraint(tag("ysum", s, t), Sense::eq, 1.0);
            for (int k = 0; k < K; ++k) lp.add_coeff(r_ys, dm.v_y[(s * K + k) * T + t], 1.0);

            if (f.kind == FormulationKind::milp_triangle) {
                const int TD = dm.zdis_per_batt, TC = dm.zcha_per_batt;
                const int r_zd = lp.add_constraint(tag("zdsum", s, t), Sense::eq, 1.0);
                for (int tr = 0; tr < TD; ++tr)
                    lp.add_coeff(r_zd, dm.v_zdis[(s * TD + tr) * T + t], 1.0);
                const int r_zc = lp.add_constraint(tag("zcsum", s, t), Sense::eq, 1.0);
                for (int tr = 0; tr < TC; ++tr)
                    lp.add_coeff(r_zc, dm.v_zcha[(s * TC + tr) * T + t], 1.0);
                // Weight support: x_v <= sum of binaries of triangles touching v.
                for (int j = 0; j < J; ++j) {
                    const int row = lp.add_constraint(tag3("xsup", s, j, t), Sense::le, 0.0);
                    lp.add_coeff(row, dm.v_x[(s * J + j) * T + t], 1.0);
                    for (int tr = 0; tr < TD; ++tr) {
                        const auto& v = f.tri_dis.triangles[tr];
                        if (v[0] == j || v[1] == j || v[2] == j)
                            lp.add_coeff(row, dm.v_zdis[(s * TD + tr) * T + t], -1.0);
                    }
                }
                for (int k = 0; k < K; ++k) {
                    const int row = lp.add_constraint(tag3("ysup", s, k, t), Sense::le, 0.0);
                    lp.add_coeff(row, dm.v_y[(s * K + k) * T + t], 1.0);
                    for (int tr = 0; tr < TC; ++tr) {
                        const auto& v = f.tri_cha.triangles[tr];
                        if (v[0] == k || v[1] == k || v[2] == k)
                            lp.add_coeff(row, dm.v_zcha[(s * TC + tr) * T + t], -1.0);
                    }
                }
            }
        }
    }

    std::ostringstream meta;
    meta << "kind=" << formulation_name(f.kind) << "; rows=" << lp.num_rows()
         << "; cols=" << lp.num_vars() << "; binaries=" << dm.model.binary_variables.size();
    if (f.kind == FormulationKind::milp_triangle)
        meta << "; triangle diagonal=" << f.tri_dis.diagonal;
    dm.metadata = meta.str();
    log::info("build_dispatch: " + dm.metadata);
    dm.model.lp.validate();
    return dm;
}

namespace {

DispatchSchedule extract(const NetworkCase& c, const BatteryFormulation& f,
                         const DispatchModel& dm, const Eigen::VectorXd& v) {
    DispatchSchedule s;
    s.kind = dm.kind;
    s.delta_hours = c.delta_hours;
    const int N = dm.n_nodes, L = dm.n_lines, G = dm.n_gens, S = dm.n_batteries, T = dm.horizon;
    s.gen_W.resize(G, T);
    s.flow_W.resize(L, T);
    s.angle_rad.resize(N, T);
    s.shed_W = Eigen::MatrixXd::Zero(N, T);
    for (int g = 0; g < G; ++g)
        for (int t = 0; t < T; ++t) s.gen_W(g, t) = v[dm.v_gen[g * T + t]];
    for (int l = 0; l < L; ++l)
        for (int t = 0; t < T; ++t) s.flow_W(l, t) = v[dm.v_flow[l * T + t]];
    for (int n = 0; n < N; ++n)
        for (int t = 0; t < T; ++t) s.angle_rad(n, t) = v[dm.v_angle[n * T + t]];
    if (!dm.v_shed.empty())
        for (int n = 0; n < N; ++n)
            for (int t = 0; t < T; ++t) s.shed_W(n, t) = v[dm.v_shed[n * T + t]];

    for (int sb = 0; sb < S; ++sb) {
        BatterySchedule b;
        b.id = c.batteries[sb].id;
        b.p_dis_W.resize(T);
        b.p_cha_W.resize(T);
        b.p_in_W.resize(T);
        b.p_out_W.resize(T);
        b.e_Wh.resize(T);
        b.soc.resize(T);
        for (int t = 0; t < T; ++t) {
            b.p_dis_W[t] = v[dm.v_pdis[sb * T + t]];
            b.p_cha_W[t] = v[dm.v_pcha[sb * T + t]];
            b.e_Wh[t] = v[dm.v_e[sb * T + t]];
            b.soc[t] = v[dm.v_soc[sb * T + t]];
            if (dm.kind == FormulationKind::ideal) {
                b.p_in_W[t] = f.ideal.eta_cha * b.p_cha_W[t];
                b.p_out_W[t] = b.p_dis_W[t] / f.ideal.eta_dis;
            } else {
                b.p_out_W[t] = v[dm.v_pout[sb * T + t]];
                b.p_in_W[t] = v[dm.v_pin[sb * T + t]];
            }
        }
        if (dm.x_per_batt > 0) {
            b.x_weights.resize(dm.x_per_batt, T);
            for (int j = 0; j < dm.x_per_batt; ++j)
                for (int t = 0; t < T; ++t)
                    b.x_weights(j, t) = v[dm.v_x[(sb * dm.x_per_batt + j) * T + t]];
        }
        if (dm.y_per_batt > 0) {
            b.y_weights.resize(dm.y_per_batt, T);
            for (int k = 0; k < dm.y_per_batt; ++k)
                for (int t = 0; t < T; ++t)
                    b.y_weights(k, t) = v[dm.v_y[(sb * dm.y_per_batt + k) * T + t]];
        }
        s.batteries.push_back(std::move(b));
    }
    s.n_constraints = dm.model.lp.num_rows();
    s.n_binaries = static_cast<int>(dm.model.binary_variables.size());
    s.n_continuous = dm.model.lp.num_vars() - s.n_binaries;
    return s;
}

}  // namespace

double VerifyReport::max_any() const {
    return std::max({balance, flow_def, cyclic_Wh, energy_Wh, soc_link, weight_sum,
                     battery_link_W, bound_violation, simultaneous});
}

VerifyReport verify_schedule(const NetworkCase& c, const BatteryFormulation& f,
                             const DispatchSchedule& s) {
    VerifyReport r;
    const int N = static_cast<int>(c.nodes.size());
    const int L = static_cast<int>(c.lines.size());
    const int G = static_cast<int>(c.generators.size());
    const int S = static_cast<int>(c.batteries.size());
    const int T = c.horizon;
    const double dt = c.delta_hours;

    for (int n = 0; n < N; ++n)
        for (int t = 0; t < T; ++t) {
            double lhs = 0.0;
            for (int l = 0; l < L; ++l) {
                if (c.lines[l].from == n) lhs += s.flow_W(l, t);
                if (c.lines[l].to == n) lhs -= s.flow_W(l, t);
            }
            for (int g = 0; g < G; ++g)
                if (c.generators[g].node == n) lhs += s.gen_W(g, t);
            for (int sb = 0; sb < S; ++sb)
                if (c.batteries[sb].node == n)
                    lhs += s.batteries[sb].p_dis_W[t] - s.batteries[sb].p_cha_W[t];
            lhs += s.shed_W(n, t);
            const double resid = std::abs(lhs - c.demand_W(n, t));
            r.balance = std::max(r.balance, resid / std::max(1.0, c.demand_W(n, t)));
        }

    for (int l = 0; l < L; ++l)
        for (int t = 0; t < T; ++t) {
            const double ang =
                s.angle_rad(c.lines[l].from, t) - s.angle_rad(c.lines[l].to, t);
            r.flow_def = std::max(r.flow_def,
                                  std::abs(s.flow_W(l, t) - ang / c.lines[l].reactance_pu));
            r.bound_violation = std::max(r.bound_violation,
                                         std::abs(s.flow_W(l, t)) - c.lines[l].flow_limit_W);
        }

    for (int g = 0; g < G; ++g)
        for (int t = 0; t < T; ++t) {
            r.bound_violation =
                std::max(r.bound_violation, c.generators[g].p_min_W - s.gen_W(g, t));
            r.bound_violation =
                std::max(r.bound_violation, s.gen_W(g, t) - c.generators[g].p_max_W);
        }
    const int ref = c.reference_node();
    for (int n = 0; n < N; ++n)
        for (int t = 0; t < T; ++t) {
            if (n == ref)
                r.bound_violation = std::max(r.bound_violation, std::abs(s.angle_rad(n, t)));
            r.bound_violation =
                std::max(r.bound_violation, c.nodes[n].angle_min_rad - s.angle_rad(n, t));
            r.bound_violation =
                std::max(r.bound_violation, s.angle_rad(n, t) - c.nodes[n].angle_max_rad);
        }

    for (int sb = 0; sb < S; ++sb) {
        const auto& b = s.batteries[sb];
        const double cap = c.batteries[sb].params.energy_capacity_Wh;
        r.cyclic_Wh = std::max(r.cyclic_Wh, std::abs(b.e_Wh[0] - b.e_Wh[T - 1]));
        r.bound_violation =
            std::max(r.bound_violation, std::abs(b.e_Wh[0] - c.batteries[sb].initial_energy_Wh));
        double pdis_ub, pcha_ub;
        if (f.kind == FormulationKind::ideal) {
            pdis_ub = f.ideal.p_max_dis_W;
            pcha_ub = f.ideal.p_max_cha_W;
        } else if (f.kind == FormulationKind::envelope) {
            pdis_ub = max_terminal(f.envelope_dis.samples);
            pcha_ub = max_terminal(f.envelope_cha.samples);
        } else {
            pdis_ub = max_terminal(f.tri_dis.vertices);
            pcha_ub = max_terminal(f.tri_cha.vertices);
        }
        for (int t = 0; t < T; ++t) {
            r.soc_link = std::max(r.soc_link, std::abs(b.soc[t] - b.e_Wh[t] / cap));
            r.bound_violation = std::max(r.bound_violation, b.e_Wh[t] - cap);
            r.bound_violation = std::max(r.bound_violation, -b.e_Wh[t]);
            r.simultaneous = std::max(r.simultaneous, b.p_dis_W[t] * b.p_cha_W[t] /
                                                          std::max(pdis_ub * pcha_ub, 1e-12));
            if (t >= 1) {
                double inflow, outflow;
                if (f.kind == FormulationKind::ideal) {
                    inflow = f.ideal.eta_cha * b.p_cha_W[t - 1];
                    outflow = b.p_dis_W[t - 1] / f.ideal.eta_dis;
                } else {
                    inflow = b.p_in_W[t - 1];
                    outflow = b.p_out_W[t - 1];
                }
                const double resid = b.e_Wh[t] - b.e_Wh[t - 1] - (inflow - outflow) * dt;
                r.energy_Wh = std::max(r.energy_Wh, std::abs(resid));
            }
        }

        if (f.kind == FormulationKind::ideal) continue;

        const auto& dis_samples = f.kind == FormulationKind::envelope ? f.envelope_dis.samples
                                                                      : f.tri_dis.vertices;
        const auto& cha_samples = f.kind == FormulationKind::envelope ? f.envelope_cha.samples
                                                                      : f.tri_cha.vertices;
        for (int t = 0; t < T; ++t) {
            double xs = 0, xsoc = 0, xpd = 0, xpo = 0;
            for (int j = 0; j < b.x_weights.rows(); ++j) {
                const double w = b.x_weights(j, t);
                r.bound_violation = std::max(r.bound_violation, -w);
                xs += w;
                xsoc += w * dis_samples[j].soc;
                xpd += w * dis_samples[j].p_terminal_W;
                xpo += w * dis_samples[j].p_internal_W;
            }
            double ys = 0, ysoc = 0, ypc = 0, ypi = 0;
            for (int k = 0; k < b.y_weights.rows(); ++k) {
                const double w = b.y_weights(k, t);
                r.bound_violation = std::max(r.bound_violation, -w);
                ys += w;
                ysoc += w * cha_samples[k].soc;
                ypc += w * cha_samples[k].p_terminal_W;
                ypi += w * cha_samples[k].p_internal_W;
            }
            r.weight_sum = std::max({r.weight_sum, std::abs(xs - 1.0), std::abs(ys - 1.0)});
            r.battery_link_W = std::max({r.battery_link_W, std::abs(xpd - b.p_dis_W[t]),
                                         std::abs(xpo - b.p_out_W[t]),
                                         std::abs(ypc - b.p_cha_W[t]),
                                         std::abs(ypi - b.p_in_W[t])});
            if (f.kind == FormulationKind::envelope) {
                r.soc_link = std::max(r.soc_link, std::abs(xsoc + ysoc - b.soc[t]));
            } else {
                r.soc_link = std::max(r.soc_link, std::abs(xsoc - b.soc[t]));
                r.soc_link = std::max(r.soc_link, std::abs(ysoc - b.soc[t]));
            }
        }
    }
    return r;
}

// Triangle of the logical grid containing the physical point (soc, pterm).
// The power axis is located through the per-soc fraction of the column-max
// terminal power, interpolated between neighboring soc columns.
int triangle_containing(const Triangulation& tri, double soc, double pterm) {
    const int np = tri.n_power;
    const auto soc_of = [&](int i) { return tri.vertices[i * np].soc; };
    int i = 0;
    while (i + 2 < tri.n_soc && soc >= soc_of(i + 1)) ++i;
    const double s0 = soc_of(i), s1 = soc_of(i + 1);
    const double a = std::clamp(s1 > s0 ? (soc - s0) / (s1 - s0) : 0.0, 0.0, 1.0);
    const double pmax0 = tri.vertices[i * np + np - 1].p_terminal_W;
    const double pmax1 = tri.vertices[(i + 1) * np + np - 1].p_terminal_W;
    const double pmax = (1.0 - a) * pmax0 + a * pmax1;
    const double u = std::clamp(pmax > 0 ? pterm / pmax : 0.0, 0.0, 1.0);
    // fraction coordinates of the grid rows, from the first full column
    int q = 0;
    double f0 = 0.0, f1 = 1.0;
    {
        int col = 0;  // a column with nonzero max power, for the fraction axis
        for (int k = 0; k < tri.n_soc; ++k)
            if (tri.vertices[k * np + np - 1].p_terminal_W > 0) {
                col = k;
                break;
            }
        const double colmax = std::max(tri.vertices[col * np + np - 1].p_terminal_W, 1e-300);
        while (q + 2 < np && u >= tri.vertices[col * np + q + 1].p_terminal_W / colmax) ++q;
        f0 = tri.vertices[col * np + q].p_terminal_W / colmax;
        f1 = tri.vertices[col * np + q + 1].p_terminal_W / colmax;
    }
    const double b = std::clamp(f1 > f0 ? (u - f0) / (f1 - f0) : 0.0, 0.0, 1.0);
    const int base = (i * (np - 1) + q) * 2;
    return b <= a ? base : base + 1;  // lower triangle covers below the diagonal
}

DispatchSchedule solve_dispatch(const NetworkCase& c, const BatteryFormulation& f,
                                const DispatchModel& model, const SolveDispatchOptions& opt) {
    optim::Solution sol;
    if (model.model.binary_variables.empty()) {
        optim::SimplexOptions lp_opt = opt.lp;
        if (lp_opt.max_iterations == 200000) lp_opt.max_iterations = 0;  // auto-scale
        sol = optim::solve_lp(model.model.lp, lp_opt);
    } else {
        optim::MilpOptions milp_opt = opt.milp;
        if (milp_opt.lp.max_iterations == 200000) milp_opt.lp.max_iterations = 0;
        // Geometric dive hint: fix, per step and mode, the triangle holding
        // the relaxation's (soc, terminal power) point.
        optim::Solution rel = optim::solve_lp(model.model.lp, milp_opt.lp);
        if (rel.status == optim::SolveStatus::optimal) {
            const int T = model.horizon;
            std::vector<std::pair<int, double>> hint;
            for (int s = 0; s < model.n_batteries; ++s) {
                for (int t = 0; t < T; ++t) {
                    const double soc = rel.primal[model.v_soc[s * T + t]];
                    const int td = triangle_containing(f.tri_dis, soc,
                                                       rel.primal[model.v_pdis[s * T + t]]);
                    const int tc = triangle_containing(f.tri_cha, soc,
                                                       rel.primal[model.v_pcha[s * T + t]]);
                    for (int tr = 0; tr < model.zdis_per_batt; ++tr)
                        hint.emplace_back(model.v_zdis[(s * model.zdis_per_batt + tr) * T + t],
                                          tr == td ? 1.0 : 0.0);
                    for (int tr = 0; tr < model.zcha_per_batt; ++tr)
                        hint.emplace_back(model.v_zcha[(s * model.zcha_per_batt + tr) * T + t],
                                          tr == tc ? 1.0 : 0.0);
                }
            }
            milp_opt.root_hints.push_back(std::move(hint));
        }
        sol = optim::solve_milp(model.model, milp_opt);
    }

    DispatchSchedule s;
    s.status = sol.status;
    s.iterations = sol.iterations;
    s.nodes = sol.nodes;
    s.wall_seconds = sol.wall_seconds;
    const bool have_point = sol.primal.size() == model.model.lp.num_vars() &&
                            (sol.status == optim::SolveStatus::optimal ||
                             sol.status == optim::SolveStatus::node_limit);
    if (!have_point) {
        s.n_constraints = model.model.lp.num_rows();
        s.n_binaries = static_cast<int>(model.model.binary_variables.size());
        s.n_continuous = model.model.lp.num_vars() - s.n_binaries;
        s.kind = model.kind;
        s.delta_hours = c.delta_hours;
        return s;
    }

    DispatchSchedule out = extract(c, f, model, sol.primal);
    out.status = sol.status;
    out.objective = sol.objective;
    out.iterations = sol.iterations;
    out.nodes = sol.nodes;
    out.wall_seconds = sol.wall_seconds;

    if (!opt.skip_verify) {
        const VerifyReport rep = verify_schedule(c, f, out);
        if (rep.max_any() > opt.verify_limit) {
            std::ostringstream ss;
            ss << "post-solve verification failed: balance=" << rep.balance
               << " flow=" << rep.flow_def << " cyclic=" << rep.cyclic_Wh
               << " energy=" << rep.energy_Wh << " soc=" << rep.soc_link
               << " weights=" << rep.weight_sum << " links=" << rep.battery_link_W
               << " bounds=" << rep.bound_violation;
            throw VerificationError(ss.str(), rep);
        }
    }
    return out;
}

DispatchSchedule schedule_from_values(const NetworkCase& c, const BatteryFormulation& f,
                                      const DispatchModel& model, const Eigen::VectorXd& values) {
    if (values.size() != model.model.lp.num_vars())
        throw optim::ModelError("schedule_from_values: value vector size mismatch");
    DispatchSchedule s = extract(c, f, model, values);
    s.status = optim::SolveStatus::optimal;
    double obj = 0.0;
    for (int j = 0; j < model.model.lp.num_vars(); ++j)
        obj += model.model.lp.variables[j].objective * values[j];
    s.objective = obj;
    return s;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

void write_schedule(const DispatchSchedule& s, const NetworkCase& c, const std::string& out_dir,
                    const std::string& provenance_json, const std::string& provenance_csv) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const int T = static_cast<int>(s.gen_W.cols());

    auto wide_csv = [&](const std::string& file, const Eigen::MatrixXd& m,
                        const std::vector<std::string>& ids) {
        std::ostringstream out;
        out << provenance_csv << "t";
        for (const auto& id : ids) out << "," << id;
        out << "\n";
        for (int t = 0; t < T; ++t) {
            out << (t + 1);
            for (int i = 0; i < m.rows(); ++i) out << "," << fmt(m(i, t));
            out << "\n";
        }
        write_file((fs::path(out_dir) / file).string(), out.str());
    };

    std::vector<std::string> gen_ids, line_ids, node_ids;
    for (const auto& g : c.generators) gen_ids.push_back(g.id);
    for (const auto& l : c.lines) line_ids.push_back(l.id);
    for (const auto& n : c.nodes) node_ids.push_back(n.id);
    wide_csv("generators.csv", s.gen_W, gen_ids);
    wide_csv("flows.csv", s.flow_W, line_ids);
    wide_csv("angles.csv", s.angle_rad, node_ids);
    if (s.shed_W.size() > 0 && s.shed_W.cwiseAbs().maxCoeff() > 0)
        wide_csv("shed.csv", s.shed_W, node_ids);

    for (const auto& b : s.batteries) {
        std::ostringstream out;
        out << provenance_csv << "t,p_dis_W,p_cha_W,p_in_W,p_out_W,e_Wh,soc\n";
        for (int t = 0; t < T; ++t)
            out << (t + 1) << "," << fmt(b.p_dis_W[t]) << "," << fmt(b.p_cha_W[t]) << ","
                << fmt(b.p_in_W[t]) << "," << fmt(b.p_out_W[t]) << "," << fmt(b.e_Wh[t]) << ","
                << fmt(b.soc[t]) << "\n";
        write_file((fs::path(out_dir) / ("battery_" + b.id + ".csv")).string(), out.str());

        if (b.x_weights.size() > 0 || b.y_weights.size() > 0) {
            std::ostringstream w;
            w << provenance_csv << "t,set,index,weight\n";
            for (int t = 0; t < T; ++t) {
                for (int j = 0; j < b.x_weights.rows(); ++j)
                    if (std::abs(b.x_weights(j, t)) > 1e-12)
                        w << (t + 1) << ",x," << j << "," << fmt(b.x_weights(j, t)) << "\n";
                for (int k = 0; k < b.y_weights.rows(); ++k)
                    if (std::abs(b.y_weights(k, t)) > 1e-12)
                        w << (t + 1) << ",y," << k << "," << fmt(b.y_weights(k, t)) << "\n";
            }
            write_file((fs::path(out_dir) / ("weights_" + b.id + ".csv")).string(), w.str());
        }
    }

    nlohmann::json j;
    j["case"] = c.name;
    j["mode"] = formulation_name(s.kind);
    j["status"] = optim::status_name(s.status);
    j["objective"] = s.objective;
    j["runtime_s"] = s.wall_seconds;
    j["iterations"] = s.iterations;
    j["nodes"] = s.nodes;
    j["constraints"] = s.n_constraints;
    j["continuous_variables"] = s.n_continuous;
    j["binary_variables"] = s.n_binaries;
    j["horizon"] = T;
    j["delta_hours"] = s.delta_hours;
    nlohmann::json bats = nlohmann::json::array();
    for (std::size_t i = 0; i < c.batteries.size(); ++i) {
        const auto& bp = c.batteries[i];
        bats.push_back({{"id", bp.id},
                        {"node", c.nodes[bp.node].id},
                        {"params_file", bp.params_path},
                        {"energy_capacity_Wh", bp.params.energy_capacity_Wh},
                        {"initial_energy_Wh", bp.initial_energy_Wh},
                        {"temperature_K", bp.params.T_ref}});
    }
    j["batteries"] = bats;
    if (!provenance_json.empty()) j["provenance"] = nlohmann::json::parse(provenance_json);
    write_file((fs::path(out_dir) / "summary.json").string(), j.dump(2) + "\n");
}

}  // namespace battd::dispatch
