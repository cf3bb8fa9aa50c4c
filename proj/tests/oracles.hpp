#pragma once

// Independent reference implementations used only by tests: literal-formula
// electrochemistry in long double, a vertex-enumeration LP oracle and
// exhaustive MIP enumeration. These deliberately avoid the library's
// evaluation paths.

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "battdispatch/battery.hpp"
#include "battdispatch/lp.hpp"

namespace oracle {

inline constexpr long double kR = 8.314462618L;
inline constexpr long double kF = 96485.33212L;

// Interaction sum written exactly as the printed series, dividing by the
// (2chi-1)^(2-k) power; only valid away from chi = 1/2.
inline long double rk_literal(long double chi, const std::array<double, 7>& A) {
    long double sum = 0.0L;
    for (int k = 1; k <= 7; ++k) {
        const long double u = 2.0L * chi - 1.0L;
        const long double term =
            std::pow(u, (long double)k) -
            2.0L * chi * (k - 1) * (1.0L - chi) / std::pow(u, (long double)(2 - k));
        sum += (long double)A[k - 1] * term;
    }
    return sum / kF;
}

inline long double chi_and_of(long double soc) { return 0.083L + 0.917L * soc; }
inline long double chi_ctd_of(long double soc) { return 1.0L - 0.7L * soc; }

inline long double clamp_chi(long double chi) {
    const long double eps = 1e-6L;
    return std::min(std::max(chi, eps), 1.0L - eps);
}

inline long double veq_literal(long double soc, long double T, const battd::BatteryParams& p) {
    const long double ca = clamp_chi(chi_and_of(soc));
    const long double cc = clamp_chi(chi_ctd_of(soc));
    const long double nernst =
        kR * T / kF * std::log((1.0L - cc) * ca / (cc * (1.0L - ca)));
    return (long double)p.U_bat0 + nernst + rk_literal(cc, p.A_ctd) - rk_literal(ca, p.A_and);
}

inline long double rohm_literal(long double soc, long double T, const battd::BatteryParams& p) {
    return (long double)p.R_ohm_0 + (long double)p.R_ohm_T * T + (long double)p.R_ohm_SOC * soc;
}

inline long double rct_literal(long double soc, long double T, const battd::BatteryParams& p) {
    const long double ca = clamp_chi(chi_and_of(soc));
    const long double cc = clamp_chi(chi_ctd_of(soc));
    const long double core = kR * T * std::exp((long double)p.E_A * 1000.0L / (kR * T)) /
                             (kF * kF * (long double)p.A_SEI * (long double)p.k_0);
    return core / std::sqrt(ca * cc);
}

inline long double rdif_literal(long double T, bool membrane, const battd::BatteryParams& p) {
    const long double K = membrane ? p.K_dif_mem : p.K_dif_elec;
    const long double b = membrane ? p.b_dif_mem : p.b_dif_elec;
    const long double T0 = membrane ? p.T0_dif_mem : p.T0_dif_elec;
    return K * std::exp(b / (T - T0));
}

inline long double etac_literal(long double i, long double T, const battd::BatteryParams& p) {
    return (long double)p.eta_c0 + (long double)p.eta_cT * T + (long double)p.eta_ci * i;
}

inline long double surface_soc_literal(long double soc, long double i_signed, long double T,
                                       const battd::BatteryParams& p) {
    return soc - rdif_literal(T, false, p) * i_signed * etac_literal(std::abs(i_signed), T, p);
}

// ---------------------------------------------------------------------------
// Vertex-enumeration LP oracle. All variable bounds must be finite.
// ---------------------------------------------------------------------------

struct LpOracleResult {
    bool feasible = false;
    double objective = std::numeric_limits<double>::infinity();
    Eigen::VectorXd argmin;
};

inline LpOracleResult lp_vertex_oracle(const battd::optim::LinearProgram& lp) {
    using battd::optim::Sense;
    const int n = lp.num_vars();
    const int m = lp.num_rows();
    LpOracleResult out;

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, n);
    Eigen::VectorXd b(m);
    std::vector<Sense> sense(m);
    for (int i = 0; i < m; ++i) {
        b[i] = lp.constraints[i].rhs;
        sense[i] = lp.constraints[i].sense;
        for (const auto& [j, a] : lp.constraints[i].coeffs) A(i, j) += a;
    }
    Eigen::VectorXd c(n), lo(n), hi(n);
    for (int j = 0; j < n; ++j) {
        c[j] = lp.variables[j].objective;
        lo[j] = lp.variables[j].lower;
        hi[j] = lp.variables[j].upper;
    }

    // Candidate active constraints: every equality row always, plus a choice
    // of inequality rows and bound facets.
    struct Facet {
        int kind;  // 0 row, 1 lower bound, 2 upper bound
        int idx;
    };
    std::vector<Facet> optional;
    std::vector<int> eq_rows;
    for (int i = 0; i < m; ++i) {
        if (sense[i] == Sense::eq) eq_rows.push_back(i);
        else optional.push_back({0, i});
    }
    for (int j = 0; j < n; ++j) {
        optional.push_back({1, j});
        if (hi[j] != lo[j]) optional.push_back({2, j});
    }
    const int need = n - static_cast<int>(eq_rows.size());
    if (need < 0) return out;  // over-determined generators are not produced

    std::vector<int> pick(need);
    const double tol = 1e-8;

    auto feasible_point = [&](const Eigen::VectorXd& x) {
        for (int j = 0; j < n; ++j)
            if (x[j] < lo[j] - tol || x[j] > hi[j] + tol) return false;
        const Eigen::VectorXd Ax = A * x;
        for (int i = 0; i < m; ++i) {
            const double scale = std::max(1.0, std::abs(b[i]));
            if (sense[i] == Sense::le && Ax[i] > b[i] + tol * scale) return false;
            if (sense[i] == Sense::ge && Ax[i] < b[i] - tol * scale) return false;
            if (sense[i] == Sense::eq && std::abs(Ax[i] - b[i]) > tol * scale) return false;
        }
        return true;
    };

    auto test_active_set = [&](const std::vector<Facet>& act) {
        Eigen::MatrixXd M(n, n);
        Eigen::VectorXd rhs(n);
        int r = 0;
        for (int i : eq_rows) {
            M.row(r) = A.row(i);
            rhs[r] = b[i];
            ++r;
        }
        for (const Facet& f : act) {
            if (f.kind == 0) {
                M.row(r) = A.row(f.idx);
                rhs[r] = b[f.idx];
            } else {
                M.row(r).setZero();
                M(r, f.idx) = 1.0;
                rhs[r] = f.kind == 1 ? lo[f.idx] : hi[f.idx];
            }
            ++r;
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
        if (!lu.isInvertible()) return;
        const Eigen::VectorXd x = lu.solve(rhs);
        if (!feasible_point(x)) return;
        const double obj = c.dot(x);
        out.feasible = true;
        if (obj < out.objective - 1e-12) {
            out.objective = obj;
            out.argmin = x;
        }
    };

    // Iterative subset enumeration over the optional facets.
    std::vector<Facet> act(need);
    std::vector<int> idx(need);
    if (need == 0) {
        test_active_set({});
        return out;
    }
    for (int i = 0; i < need; ++i) idx[i] = i;
    const int total = static_cast<int>(optional.size());
    if (total < need) return out;
    while (true) {
        for (int i = 0; i < need; ++i) act[i] = optional[idx[i]];
        test_active_set(act);
        int k = need - 1;
        while (k >= 0 && idx[k] == total - need + k) --k;
        if (k < 0) break;
        ++idx[k];
        for (int i = k + 1; i < need; ++i) idx[i] = idx[i - 1] + 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exhaustive MIP oracle: enumerate binary assignments; continuous leftovers
// (if any) go through the vertex oracle with adjusted right-hand sides.
// ---------------------------------------------------------------------------

struct MipOracleResult {
    bool feasible = false;
    double objective = std::numeric_limits<double>::infinity();
};

inline MipOracleResult mip_enumeration_oracle(const battd::optim::MixedIntegerProgram& mip) {
    using battd::optim::LinearProgram;
    using battd::optim::Sense;
    MipOracleResult out;
    const LinearProgram& lp = mip.lp;
    const int n = lp.num_vars();
    std::vector<char> is_bin(n, 0);
    for (int j : mip.binary_variables) is_bin[j] = 1;
    std::vector<int> cont;
    for (int j = 0; j < n; ++j)
        if (!is_bin[j]) cont.push_back(j);
    const int nb = static_cast<int>(mip.binary_variables.size());

    for (long mask = 0; mask < (1L << nb); ++mask) {
        std::vector<double> z(n, 0.0);
        bool ok = true;
        for (int k = 0; k < nb; ++k) {
            const int j = mip.binary_variables[k];
            const double v = (mask >> k) & 1 ? 1.0 : 0.0;
            if (v < lp.variables[j].lower - 1e-12 || v > lp.variables[j].upper + 1e-12) {
                ok = false;
                break;
            }
            z[j] = v;
        }
        if (!ok) continue;

        if (cont.empty()) {
            double obj = 0.0;
            bool feas = true;
            for (const auto& row : lp.constraints) {
                double lhs = 0.0;
                for (const auto& [j, a] : row.coeffs) lhs += a * z[j];
                const double tol = 1e-9 * std::max(1.0, std::abs(row.rhs));
                if (row.sense == Sense::le && lhs > row.rhs + tol) feas = false;
                if (row.sense == Sense::ge && lhs < row.rhs - tol) feas = false;
                if (row.sense == Sense::eq && std::abs(lhs - row.rhs) > tol) feas = false;
                if (!feas) break;
            }
            if (!feas) continue;
            for (int j = 0; j < n; ++j) obj += lp.variables[j].objective * z[j];
            out.feasible = true;
            out.objective = std::min(out.objective, obj);
            continue;
        }

        // Build the continuous subproblem with binaries substituted out.
        LinearProgram sub;
        std::vector<int> map(n, -1);
        for (int j : cont)
            map[j] = sub.add_variable(lp.variables[j].name, lp.variables[j].lower,
                                      lp.variables[j].upper, lp.variables[j].objective);
        double fixed_cost = 0.0;
        for (int k = 0; k < nb; ++k)
            fixed_cost += lp.variables[mip.binary_variables[k]].objective *
                          z[mip.binary_variables[k]];
        int r = 0;
        for (const auto& row : lp.constraints) {
            double shift = 0.0;
            bool any = false;
            for (const auto& [j, a] : row.coeffs) {
                if (is_bin[j]) shift += a * z[j];
                else any = true;
            }
            const int rr = sub.add_constraint("r" + std::to_string(r++), row.sense,
                                              row.rhs - shift);
            if (any)
                for (const auto& [j, a] : row.coeffs)
                    if (!is_bin[j]) sub.add_coeff(rr, map[j], a);
        }
        const LpOracleResult res = lp_vertex_oracle(sub);
        if (res.feasible) {
            out.feasible = true;
            out.objective = std::min(out.objective, res.objective + fixed_cost);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Random model generators (finite bounds keep the oracles total).
// ---------------------------------------------------------------------------

inline battd::optim::LinearProgram random_lp(std::mt19937& rng, int max_vars = 6,
                                             int max_rows = 8) {
    using battd::optim::Sense;
    battd::optim::LinearProgram lp;
    std::uniform_int_distribution<int> nv(2, max_vars), nr(1, max_rows);
    std::uniform_real_distribution<double> coef(-5.0, 5.0), cost(-10.0, 10.0);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const int n = nv(rng), m = nr(rng);
    for (int j = 0; j < n; ++j) {
        const double lo = -std::abs(coef(rng));
        const double hi = std::abs(coef(rng)) + 0.1;
        lp.add_variable("x" + std::to_string(j), lo, hi, cost(rng));
    }
    int n_eq = 0;
    for (int i = 0; i < m; ++i) {
        Sense s;
        const double pick = u01(rng);
        if (pick < 0.4) s = Sense::le;
        else if (pick < 0.8) s = Sense::ge;
        else s = (n_eq < std::min(2, n - 1)) ? (++n_eq, Sense::eq) : Sense::le;
        const int row = lp.add_constraint("c" + std::to_string(i), s, 0.0);
        double rhs = 0.0;
        bool any = false;
        for (int j = 0; j < n; ++j) {
            if (u01(rng) < 0.3) continue;
            const double a = coef(rng);
            if (a == 0.0) continue;
            lp.add_coeff(row, j, a);
            // bias the rhs toward a point inside the box
            rhs += a * (lp.variables[j].lower +
                        u01(rng) * (lp.variables[j].upper - lp.variables[j].lower));
            any = true;
        }
        if (!any) {
            lp.add_coeff(row, 0, 1.0);
            rhs = lp.variables[0].upper * u01(rng);
        }
        lp.constraints[row].rhs = rhs + (s == Sense::eq ? 0.0 : coef(rng) * 0.3);
    }
    return lp;
}

inline battd::optim::MixedIntegerProgram random_mip(std::mt19937& rng, bool pure_binary,
                                                    int max_bins = 12) {
    using battd::optim::Sense;
    battd::optim::MixedIntegerProgram mip;
    std::uniform_int_distribution<int> nb(pure_binary ? 4 : 3, pure_binary ? max_bins : 8);
    std::uniform_int_distribution<int> nc(1, 3), nr(1, 6);
    std::uniform_real_distribution<double> coef(-5.0, 5.0), u01(0.0, 1.0);
    const int bins = nb(rng);
    const int conts = pure_binary ? 0 : nc(rng);
    for (int j = 0; j < bins; ++j) {
        const int v = mip.lp.add_variable("z" + std::to_string(j), 0.0, 1.0, coef(rng));
        mip.binary_variables.push_back(v);
    }
    for (int j = 0; j < conts; ++j)
        mip.lp.add_variable("x" + std::to_string(j), -2.0, 2.0 + u01(rng) * 2.0, coef(rng));
    const int m = nr(rng);
    for (int i = 0; i < m; ++i) {
        const double pick = u01(rng);
        const Sense s = pick < 0.5 ? Sense::le : (pick < 0.9 ? Sense::ge : Sense::eq);
        const int row = mip.lp.add_constraint("c" + std::to_string(i), s, 0.0);
        double rhs = 0.0;
        bool any = false;
        for (int j = 0; j < mip.lp.num_vars(); ++j) {
            if (u01(rng) < 0.4) continue;
            const double a = std::round(coef(rng) * 2.0) / 2.0;
            if (a == 0.0) continue;
            mip.lp.add_coeff(row, j, a);
            const auto& v = mip.lp.variables[j];
            rhs += a * (v.lower + u01(rng) * (v.upper - v.lower));
            any = true;
        }
        if (!any) {
            mip.lp.add_coeff(row, 0, 1.0);
            rhs = u01(rng);
        }
        mip.lp.constraints[row].rhs = rhs + (s == Sense::eq ? 0.0 : coef(rng) * 0.2);
    }
    return mip;
}

}  // namespace oracle
