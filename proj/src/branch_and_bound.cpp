#include "battdispatch/branch_and_bound.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <vector>

#include "battdispatch/log.hpp"
#include "battdispatch/simplex.hpp"

// Depth-first branch and bound on the binary variables. Most-fractional
// branching with round-to-nearest plunging, node relaxations warm-started
// from the previous basis, and a rounding dive every few nodes for early
// incumbents. Pruning uses a tiny slack so enumeration-exact optima survive.

namespace battd::optim {

namespace {

struct Node {
    std::vector<std::pair<int, double>> fixings;  // (binary var, 0 or 1)
    double bound;                                 // parent relaxation objective
};

// True when every binary sits within tol of an integer; otherwise selects
// the most fractional one (closest to 0.5, lowest index on ties).
bool integral(const Eigen::VectorXd& x, const std::vector<int>& bins, double tol, int* branch) {
    *branch = -1;
    double best = 2.0;
    for (int j : bins) {
        const double f = x[j] - std::floor(x[j]);
        if (std::min(f, 1.0 - f) <= tol) continue;
        const double d = std::abs(f - 0.5);
        if (d < best) {
            best = d;
            *branch = j;
        }
    }
    return *branch < 0;
}

}  // namespace

Solution solve_milp(const MixedIntegerProgram& mip, const MilpOptions& options) {
    mip.validate();
    const auto t0 = std::chrono::steady_clock::now();

    if (mip.binary_variables.empty()) {
        Solution s = solve_lp(mip.lp, options.lp);
        s.best_bound = s.status == SolveStatus::optimal ? s.objective : -kInf;
        return s;
    }

    LinearProgram work = mip.lp;  // bounds mutate per node
    const std::vector<int>& bins = mip.binary_variables;

    Solution best;
    best.status = SolveStatus::infeasible;
    bool have_incumbent = false;
    double incumbent = kInf;

    Basis basis;  // reused across nodes: DFS keeps it close to feasible
    long nodes = 0;
    long lp_iters = 0;

    auto apply_fixings = [&](const std::vector<std::pair<int, double>>& fix) {
        for (int j : bins) {
            work.variables[j].lower = mip.lp.variables[j].lower;
            work.variables[j].upper = mip.lp.variables[j].upper;
        }
        for (const auto& [j, v] : fix) {
            work.variables[j].lower = v;
            work.variables[j].upper = v;
        }
    };

    auto solve_node = [&](const std::vector<std::pair<int, double>>& fix) -> Solution {
        apply_fixings(fix);
        Solution r = solve_lp_with_basis(work, options.lp, basis);
        lp_iters += r.iterations;
        return r;
    };

    // Exactly-one groups (set-partition rows over binaries) get rounded by
    // the largest relaxation weight; remaining binaries round to nearest.
    std::vector<char> is_bin(mip.lp.num_vars(), 0);
    for (int j : bins) is_bin[j] = 1;
    std::vector<std::vector<int>> groups;
    std::vector<char> grouped(mip.lp.num_vars(), 0);
    for (const auto& row : mip.lp.constraints) {
        if (row.sense != Sense::eq || std::abs(row.rhs - 1.0) > 1e-12) continue;
        bool all_unit_bins = !row.coeffs.empty();
        for (const auto& [j, a] : row.coeffs)
            if (!is_bin[j] || a != 1.0 || grouped[j]) {
                all_unit_bins = false;
                break;
            }
        if (!all_unit_bins) continue;
        std::vector<int> g;
        for (const auto& [j, a] : row.coeffs) {
            g.push_back(j);
            grouped[j] = 1;
        }
        groups.push_back(std::move(g));
    }

    // Rounding dive: fix every binary from the given relaxation point and
    // solve the remaining LP.
    auto try_rounding = [&](const Eigen::VectorXd& x) {
        std::vector<std::pair<int, double>> fix;
        fix.reserve(bins.size());
        for (const auto& g : groups) {
            int pick = g[0];
            for (int j : g)
                if (x[j] > x[pick]) pick = j;
            for (int j : g) fix.emplace_back(j, j == pick ? 1.0 : 0.0);
        }
        for (int j : bins)
            if (!grouped[j]) fix.emplace_back(j, std::round(std::clamp(x[j], 0.0, 1.0)));
        apply_fixings(fix);
        Basis heur_basis = basis;
        Solution r = solve_lp_with_basis(work, options.lp, heur_basis);
        lp_iters += r.iterations;
        if (r.status == SolveStatus::optimal && r.objective < incumbent - 1e-12) {
            incumbent = r.objective;
            best = r;
            have_incumbent = true;
            log::debug("milp: rounding dive incumbent " + std::to_string(incumbent));
        }
    };

    auto try_fixings = [&](const std::vector<std::pair<int, double>>& fix) {
        apply_fixings(fix);
        Basis heur_basis = basis;
        Solution r = solve_lp_with_basis(work, options.lp, heur_basis);
        lp_iters += r.iterations;
        if (r.status == SolveStatus::optimal && r.objective < incumbent - 1e-12) {
            incumbent = r.objective;
            best = r;
            have_incumbent = true;
        }
    };

    std::vector<Node> stack;
    stack.push_back({{}, -kInf});

    SolveStatus final_status = SolveStatus::optimal;
    bool hit_node_limit = false;

    while (!stack.empty()) {
        if (nodes >= options.node_limit) {
            hit_node_limit = true;
            break;
        }
        Node node = std::move(stack.back());
        stack.pop_back();
        if (have_incumbent && node.bound >= incumbent - options.gap_abs) continue;

        ++nodes;
        Solution rel = solve_node(node.fixings);
        if (rel.status == SolveStatus::infeasible) continue;
        if (rel.status == SolveStatus::unbounded) {
            // A bounded-binary MILP with an unbounded relaxation is unbounded
            // whenever any integer completion is feasible; report it directly.
            best = rel;
            best.nodes = nodes;
            return best;
        }
        if (rel.status != SolveStatus::optimal) {
            final_status = rel.status;
            break;
        }
        if (have_incumbent && rel.objective >= incumbent - options.gap_abs) continue;

        int branch_var = -1;
        if (integral(rel.primal, bins, options.int_tol, &branch_var)) {
            // Clean the incumbent: re-solve with binaries pinned to integers.
            std::vector<std::pair<int, double>> fix;
            for (int j : bins) fix.emplace_back(j, std::round(rel.primal[j]));
            Solution clean = solve_node(fix);
            const Solution& inc = clean.status == SolveStatus::optimal ? clean : rel;
            if (inc.objective < incumbent - 1e-12) {
                incumbent = inc.objective;
                best = inc;
                have_incumbent = true;
            }
            continue;
        }

        if (nodes == 1)
            for (const auto& hint : options.root_hints) try_fixings(hint);
        if (nodes == 1 || (options.heuristic_every > 0 && nodes % options.heuristic_every == 0))
            try_rounding(rel.primal);

        const double frac = rel.primal[branch_var] - std::floor(rel.primal[branch_var]);
        const double near = std::round(frac);  // 0 or 1, explored first
        Node far_child{node.fixings, rel.objective};
        far_child.fixings.emplace_back(branch_var, 1.0 - near);
        Node near_child{std::move(node.fixings), rel.objective};
        near_child.fixings.emplace_back(branch_var, near);
        stack.push_back(std::move(far_child));
        stack.push_back(std::move(near_child));  // popped first
    }

    double open_bound = kInf;
    for (const Node& n : stack) open_bound = std::min(open_bound, n.bound);

    Solution out = best;
    if (hit_node_limit) {
        out.status = SolveStatus::node_limit;
        out.best_bound = std::min(open_bound, have_incumbent ? incumbent : kInf);
        out.message = have_incumbent ? "node limit reached; best incumbent returned"
                                     : "node limit reached; no incumbent found";
    } else if (final_status != SolveStatus::optimal) {
        out.status = final_status;
        out.best_bound = open_bound;
    } else if (have_incumbent) {
        out.status = SolveStatus::optimal;
        out.best_bound = incumbent;
    } else {
        out.status = SolveStatus::infeasible;
        out.best_bound = kInf;
    }
    out.nodes = nodes;
    out.iterations = lp_iters;
    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

}  // namespace battd::optim
