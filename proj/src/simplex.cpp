#include "battdispatch/simplex.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <vector>

#include "battdispatch/log.hpp"

// Bounded-variable revised simplex over the augmented system [A | I] x = b.
// Slack bounds encode the row sense (<=: [0,inf), >=: (-inf,0], =: [0,0]).
// The basis inverse is a sparse LU refreshed every refactor_every pivots,
// with product-form eta vectors in between. Phase 1 minimizes the sum of
// bound violations of the basic variables using the same pivot machinery.

namespace battd::optim {

namespace {

enum VarState : unsigned char { kBasic = 0, kAtLower = 1, kAtUpper = 2, kFree = 3 };

constexpr double kPivotTol = 1e-9;    // preferred minimum pivot magnitude
constexpr double kRateTol = 1e-12;    // rates below this cannot block a step
constexpr double kDropTol = 1e-12;    // eta entries below this are dropped
constexpr double kDegenStep = 1e-10;  // step length counted as degenerate

struct Eta {
    int row;
    double pivot;
    std::vector<std::pair<int, double>> entries;  // w = B_prev^{-1} a_q, trimmed
};

class Simplex {
  public:
    Simplex(const LinearProgram& lp, const SimplexOptions& opt) : lp_(lp), opt_(opt) {
        m_ = lp.num_rows();
        n_ = lp.num_vars();
        ncols_ = n_ + m_;
        build();
    }

    Solution run(Basis& basis);

  private:
    const LinearProgram& lp_;
    SimplexOptions opt_;
    int m_ = 0, n_ = 0, ncols_ = 0;

    Eigen::SparseMatrix<double> acols_;  // m x n structural columns
    Eigen::VectorXd b_;
    std::vector<double> lb_, ub_, cost_;
    std::vector<unsigned char> state_;
    std::vector<int> basic_;  // column per row
    std::vector<double> x_;   // current value per column
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
    std::vector<Eta> etas_;
    bool factor_ok_ = false;

    Eigen::VectorXd price_buf_, col_buf_;
    long iters_ = 0;
    long degen_streak_ = 0;
    bool bland_ = false;
    std::vector<char> banned_;  // columns rejected for tiny pivots, until the next pivot
    bool fresh_factor_ = false;

    void build();
    bool set_slack_basis();
    bool set_warm_basis(const Basis& basis);
    bool refactorize();
    void recompute_basics();
    void ftran(Eigen::VectorXd& v);
    void btran(Eigen::VectorXd& v);
    double col_dot(int j, const Eigen::VectorXd& y) const;
    void scatter_col(int j, Eigen::VectorXd& v) const;
    double nonbasic_value(int j) const;

    double max_infeasibility() const;
    bool price(bool phase1, int& enter, int& dir);
    int ratio_test(int enter, int dir, bool phase1, double& t, int& leave_row,
                   bool& leave_to_upper);
    bool blocking_target(int j, double rate, bool phase1, double& target, bool& to_upper) const;
    bool pivot(int enter, int dir, double t, int leave_row, bool leave_to_upper,
               const Eigen::VectorXd& w);
    void purge_fixed_basics();
    SolveStatus iterate(long iter_cap);
    void fill_solution(Solution& s, SolveStatus status);
};

void Simplex::build() {
    std::vector<Eigen::Triplet<double>> trips;
    for (int i = 0; i < m_; ++i)
        for (const auto& [j, a] : lp_.constraints[i].coeffs) trips.emplace_back(i, j, a);
    acols_.resize(m_, n_);
    acols_.setFromTriplets(trips.begin(), trips.end());  // duplicate entries summed
    acols_.makeCompressed();

    b_.resize(m_);
    lb_.resize(ncols_);
    ub_.resize(ncols_);
    cost_.assign(ncols_, 0.0);
    for (int j = 0; j < n_; ++j) {
        lb_[j] = lp_.variables[j].lower;
        ub_[j] = lp_.variables[j].upper;
        cost_[j] = lp_.variables[j].objective;
    }
    for (int i = 0; i < m_; ++i) {
        const auto& c = lp_.constraints[i];
        b_[i] = c.rhs;
        const int s = n_ + i;
        switch (c.sense) {
            case Sense::le: lb_[s] = 0.0; ub_[s] = kInf; break;
            case Sense::ge: lb_[s] = -kInf; ub_[s] = 0.0; break;
            case Sense::eq: lb_[s] = 0.0; ub_[s] = 0.0; break;
        }
    }
    x_.assign(ncols_, 0.0);
    state_.assign(ncols_, kAtLower);
    banned_.assign(ncols_, 0);
    price_buf_.resize(m_);
    col_buf_.resize(m_);
}

double Simplex::nonbasic_value(int j) const {
    switch (state_[j]) {
        case kAtLower: return lb_[j];
        case kAtUpper: return ub_[j];
        default: return 0.0;
    }
}

bool Simplex::set_slack_basis() {
    basic_.resize(m_);
    for (int j = 0; j < n_; ++j) {
        if (std::isfinite(lb_[j]))
            state_[j] = (lb_[j] >= 0.0 || !std::isfinite(ub_[j]) || -lb_[j] <= ub_[j]) ? kAtLower
                                                                                       : kAtUpper;
        else if (std::isfinite(ub_[j]))
            state_[j] = kAtUpper;
        else
            state_[j] = kFree;
        x_[j] = nonbasic_value(j);
    }
    for (int i = 0; i < m_; ++i) {
        basic_[i] = n_ + i;
        state_[n_ + i] = kBasic;
    }
    if (!refactorize()) return false;
    recompute_basics();
    return true;
}

bool Simplex::set_warm_basis(const Basis& basis) {
    if (static_cast<int>(basis.basic.size()) != m_ ||
        static_cast<int>(basis.at_upper.size()) != ncols_)
        return false;
    std::vector<char> used(ncols_, 0);
    for (int col : basis.basic) {
        if (col < 0 || col >= ncols_ || used[col]) return false;
        used[col] = 1;
    }
    basic_ = basis.basic;
    for (int j = 0; j < ncols_; ++j) {
        if (used[j]) {
            state_[j] = kBasic;
            continue;
        }
        if (basis.at_upper[j] && std::isfinite(ub_[j]))
            state_[j] = kAtUpper;
        else if (std::isfinite(lb_[j]))
            state_[j] = kAtLower;
        else if (std::isfinite(ub_[j]))
            state_[j] = kAtUpper;
        else
            state_[j] = kFree;
        x_[j] = nonbasic_value(j);
    }
    if (!refactorize()) return false;
    recompute_basics();
    return true;
}

bool Simplex::refactorize() {
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(m_) * 4);
    for (int i = 0; i < m_; ++i) {
        const int col = basic_[i];
        if (col >= n_) {
            trips.emplace_back(col - n_, i, 1.0);
        } else {
            for (Eigen::SparseMatrix<double>::InnerIterator it(acols_, col); it; ++it)
                trips.emplace_back(it.row(), i, it.value());
        }
    }
    Eigen::SparseMatrix<double> B(m_, m_);
    B.setFromTriplets(trips.begin(), trips.end());
    B.makeCompressed();
    lu_.compute(B);
    factor_ok_ = (lu_.info() == Eigen::Success);
    etas_.clear();
    return factor_ok_;
}

void Simplex::recompute_basics() {
    Eigen::VectorXd rhs = b_;
    for (int j = 0; j < ncols_; ++j) {
        if (state_[j] == kBasic) continue;
        const double v = nonbasic_value(j);
        x_[j] = v;
        if (v != 0.0) {
            if (j >= n_)
                rhs[j - n_] -= v;
            else
                for (Eigen::SparseMatrix<double>::InnerIterator it(acols_, j); it; ++it)
                    rhs[it.row()] -= it.value() * v;
        }
    }
    ftran(rhs);
    for (int i = 0; i < m_; ++i) x_[basic_[i]] = rhs[i];
}

void Simplex::ftran(Eigen::VectorXd& v) {
    v = lu_.solve(v);
    for (const Eta& e : etas_) {
        const double t = v[e.row] / e.pivot;
        if (t != 0.0)
            for (const auto& [i, wi] : e.entries)
                if (i != e.row) v[i] -= wi * t;
        v[e.row] = t;
    }
}

void Simplex::btran(Eigen::VectorXd& v) {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
        double s = 0.0;
        for (const auto& [i, wi] : it->entries)
            if (i != it->row) s += wi * v[i];
        v[it->row] = (v[it->row] - s) / it->pivot;
    }
    v = lu_.adjoint().solve(v);
}

double Simplex::col_dot(int j, const Eigen::VectorXd& y) const {
    if (j >= n_) return y[j - n_];
    double s = 0.0;
    for (Eigen::SparseMatrix<double>::InnerIterator it(acols_, j); it; ++it)
        s += it.value() * y[it.row()];
    return s;
}

void Simplex::scatter_col(int j, Eigen::VectorXd& v) const {
    v.setZero();
    if (j >= n_) {
        v[j - n_] = 1.0;
        return;
    }
    for (Eigen::SparseMatrix<double>::InnerIterator it(acols_, j); it; ++it)
        v[it.row()] = it.value();
}

double Simplex::max_infeasibility() const {
    double mx = 0.0;
    for (int i = 0; i < m_; ++i) {
        const int j = basic_[i];
        mx = std::max(mx, lb_[j] - x_[j]);
        mx = std::max(mx, x_[j] - ub_[j]);
    }
    return std::max(0.0, mx);
}

// Reduced-cost pricing shared by both phases. Phase 1 prices against the
// gradient of the total bound violation of the basic variables, phase 2
// against the objective. Dantzig rule, lowest index on ties; plain lowest
// eligible index once Bland's rule is active.
bool Simplex::price(bool phase1, int& enter, int& dir) {
    Eigen::VectorXd& y = price_buf_;
    if (phase1) {
        for (int i = 0; i < m_; ++i) {
            const int j = basic_[i];
            double d = 0.0;
            if (x_[j] > ub_[j] + opt_.feas_tol)
                d = 1.0;
            else if (x_[j] < lb_[j] - opt_.feas_tol)
                d = -1.0;
            y[i] = d;
        }
    } else {
        for (int i = 0; i < m_; ++i) y[i] = cost_[basic_[i]];
    }
    btran(y);

    enter = -1;
    dir = 0;
    double best = opt_.opt_tol;
    for (int j = 0; j < ncols_; ++j) {
        const unsigned char st = state_[j];
        if (st == kBasic || lb_[j] == ub_[j] || banned_[j]) continue;
        const double cj = phase1 ? 0.0 : cost_[j];
        const double r = cj - col_dot(j, y);
        int d = 0;
        double score = 0.0;
        if (st == kAtLower && r < -opt_.opt_tol) {
            d = +1;
            score = -r;
        } else if (st == kAtUpper && r > opt_.opt_tol) {
            d = -1;
            score = r;
        } else if (st == kFree && std::abs(r) > opt_.opt_tol) {
            d = r > 0 ? -1 : +1;
            score = std::abs(r);
        }
        if (d == 0) continue;
        if (bland_) {
            enter = j;
            dir = d;
            return true;
        }
        if (score > best) {
            best = score;
            enter = j;
            dir = d;
        }
    }
    return enter >= 0;
}

// Which bound blocks basic variable j when it moves at -rate per unit step.
// Phase 1: a variable beyond a bound travels back onto that bound (where it
// turns feasible and leaves the basis); moving further away never blocks.
bool Simplex::blocking_target(int j, double rate, bool phase1, double& target,
                              bool& to_upper) const {
    if (rate > 0) {  // value decreasing
        if (phase1 && x_[j] > ub_[j] + opt_.feas_tol) {
            target = ub_[j];
            to_upper = true;
        } else if (phase1 && x_[j] < lb_[j] - opt_.feas_tol) {
            return false;
        } else {
            target = lb_[j];
            to_upper = false;
        }
    } else {  // value increasing
        if (phase1 && x_[j] < lb_[j] - opt_.feas_tol) {
            target = lb_[j];
            to_upper = false;
        } else if (phase1 && x_[j] > ub_[j] + opt_.feas_tol) {
            return false;
        } else {
            target = ub_[j];
            to_upper = true;
        }
    }
    return std::isfinite(target);
}

// Two-pass bounded ratio test on w = B^{-1} a_enter (left in col_buf_).
// Returns 0 for a regular pivot, 1 for a bound flip of the entering
// variable, -1 when the step is unbounded.
int Simplex::ratio_test(int enter, int dir, bool phase1, double& t, int& leave_row,
                        bool& leave_to_upper) {
    Eigen::VectorXd& w = col_buf_;
    scatter_col(enter, w);
    ftran(w);

    const double flip_t =
        (std::isfinite(lb_[enter]) && std::isfinite(ub_[enter])) ? ub_[enter] - lb_[enter] : kInf;

    // Pass 1: exact minimum ratio and the feas_tol-relaxed minimum. The
    // relaxation lets pass 2 trade a bounded bound violation (repaired by
    // the composite loop) for a larger pivot.
    double t_block = kInf, t_relaxed = kInf;
    for (int i = 0; i < m_; ++i) {
        const double rate = dir * w[i];
        if (std::abs(rate) <= kRateTol) continue;
        double target;
        bool up;
        if (!blocking_target(basic_[i], rate, phase1, target, up)) continue;
        const double ratio = std::max(0.0, (x_[basic_[i]] - target) / rate);
        t_block = std::min(t_block, ratio);
        t_relaxed = std::min(t_relaxed, ratio + opt_.feas_tol / std::abs(rate));
    }

    if (flip_t <= t_block) {
        t = flip_t;
        if (!std::isfinite(t)) return -1;
        return 1;
    }
    if (!std::isfinite(t_block)) return -1;

    // Pass 2: largest pivot among blockers within the relaxed window;
    // lowest variable index at the exact minimum under Bland's rule.
    const double cutoff = bland_ ? t_block : t_relaxed;
    leave_row = -1;
    leave_to_upper = false;
    double best_piv = 0.0;
    int best_idx = std::numeric_limits<int>::max();
    for (int i = 0; i < m_; ++i) {
        const double rate = dir * w[i];
        if (std::abs(rate) <= kRateTol) continue;
        double target;
        bool up;
        if (!blocking_target(basic_[i], rate, phase1, target, up)) continue;
        const double ratio = std::max(0.0, (x_[basic_[i]] - target) / rate);
        if (ratio > cutoff) continue;
        if (bland_) {
            if (basic_[i] < best_idx) {
                best_idx = basic_[i];
                leave_row = i;
                leave_to_upper = up;
            }
        } else if (std::abs(w[i]) > best_piv) {
            best_piv = std::abs(w[i]);
            leave_row = i;
            leave_to_upper = up;
        }
    }
    // The chosen blocker is pushed exactly onto its bound; blockers with
    // smaller ratios overshoot theirs by at most feas_tol.
    const int j = basic_[leave_row];
    const double rate = dir * w[leave_row];
    const double target = leave_to_upper ? ub_[j] : lb_[j];
    t = std::max(0.0, (x_[j] - target) / rate);
    if (flip_t < t) {
        t = flip_t;
        return 1;
    }
    return 0;
}

bool Simplex::pivot(int enter, int dir, double t, int leave_row, bool leave_to_upper,
                    const Eigen::VectorXd& w) {
    if (t != 0.0) {
        for (int i = 0; i < m_; ++i)
            if (w[i] != 0.0) x_[basic_[i]] -= t * dir * w[i];
        x_[enter] = nonbasic_value(enter) + dir * t;
    } else {
        x_[enter] = nonbasic_value(enter);
    }

    const int leaver = basic_[leave_row];
    x_[leaver] = leave_to_upper ? ub_[leaver] : lb_[leaver];  // snap exactly
    state_[leaver] = leave_to_upper ? kAtUpper : kAtLower;
    state_[enter] = kBasic;
    basic_[leave_row] = enter;

    Eta e;
    e.row = leave_row;
    e.pivot = w[leave_row];
    for (int i = 0; i < m_; ++i)
        if (std::abs(w[i]) > kDropTol) e.entries.emplace_back(i, w[i]);
    etas_.push_back(std::move(e));

    if (static_cast<int>(etas_.size()) >= opt_.refactor_every) {
        if (!refactorize()) return false;
        recompute_basics();
    }
    return true;
}

// Basic variables with lower == upper (equality slacks, fixed inputs) are
// pivoted out wherever a usable pivot exists, so the raw constraint rows
// hold to machine precision at the end. Redundant rows keep their slack.
void Simplex::purge_fixed_basics() {
    for (int i = 0; i < m_; ++i) {
        const int p = basic_[i];
        if (lb_[p] != ub_[p]) continue;
        Eigen::VectorXd& rho = price_buf_;
        rho.setZero();
        rho[i] = 1.0;
        btran(rho);
        int enter = -1;
        double best = kPivotTol * 10;
        for (int j = 0; j < ncols_; ++j) {
            if (state_[j] == kBasic || lb_[j] == ub_[j]) continue;
            const double alpha = std::abs(col_dot(j, rho));
            if (alpha > best) {
                best = alpha;
                enter = j;
                if (alpha > 0.1) break;  // good enough, stop scanning
            }
        }
        if (enter < 0) continue;
        Eigen::VectorXd& w = col_buf_;
        scatter_col(enter, w);
        ftran(w);
        if (std::abs(w[i]) <= kPivotTol) continue;
        if (!pivot(enter, +1, 0.0, i, false, w)) return;
    }
}

// Composite main loop: any iteration that finds a basic variable outside
// its bounds prices against the infeasibility gradient (phase 1); feasible
// iterations price the objective. A step that nudges some basic variable
// out of bounds is therefore repaired on the following iterations.
SolveStatus Simplex::iterate(long iter_cap) {
    while (true) {
        const bool phase1 = max_infeasibility() > opt_.feas_tol;
        if (iters_ >= iter_cap) return SolveStatus::iteration_limit;

        int enter, dir;
        if (!price(phase1, enter, dir)) {
            // Re-check once with rejected columns restored on a fresh factor.
            if (std::find(banned_.begin(), banned_.end(), 1) != banned_.end()) {
                std::fill(banned_.begin(), banned_.end(), 0);
                if (!refactorize()) return SolveStatus::error;
                recompute_basics();
                fresh_factor_ = true;
                if (!price(phase1, enter, dir))
                    return phase1 ? SolveStatus::infeasible : SolveStatus::optimal;
            } else {
                return phase1 ? SolveStatus::infeasible : SolveStatus::optimal;
            }
        }

        double t;
        int leave_row = -1;
        bool to_upper = false;
        const int kind = ratio_test(enter, dir, phase1, t, leave_row, to_upper);
        ++iters_;

        if (kind < 0) {
            // The infeasibility sum is bounded below; an unbounded ray in
            // phase 1 means the pricing direction was bad numerically.
            return phase1 ? SolveStatus::error : SolveStatus::unbounded;
        }
        if (kind == 0 && std::abs(col_buf_[leave_row]) <= kPivotTol) {
            // Only tiny pivots block this column. Try once more on a fresh
            // factorization (stale etas distort w); if it persists, set the
            // column aside until the basis changes.
            if (!fresh_factor_) {
                if (!refactorize()) return SolveStatus::error;
                recompute_basics();
                fresh_factor_ = true;
            } else {
                banned_[enter] = 1;
            }
            continue;
        }
        if (kind == 1) {  // bound flip, basis unchanged
            if (t != 0.0)
                for (int i = 0; i < m_; ++i)
                    if (col_buf_[i] != 0.0) x_[basic_[i]] -= t * dir * col_buf_[i];
            state_[enter] = (state_[enter] == kAtLower) ? kAtUpper : kAtLower;
            x_[enter] = nonbasic_value(enter);
        } else {
            if (!pivot(enter, dir, t, leave_row, to_upper, col_buf_)) return SolveStatus::error;
            std::fill(banned_.begin(), banned_.end(), 0);
            fresh_factor_ = false;
        }

        if (t <= kDegenStep) {
            if (++degen_streak_ >= opt_.bland_after && !bland_) {
                bland_ = true;
                log::debug("simplex: Bland's rule engaged after degenerate streak");
            }
        } else {
            degen_streak_ = 0;
            bland_ = false;
        }
    }
}

void Simplex::fill_solution(Solution& s, SolveStatus status) {
    s.status = status;
    s.iterations = iters_;
    if (factor_ok_) {
        refactorize();
        recompute_basics();
    }
    s.primal.resize(n_);
    for (int j = 0; j < n_; ++j) s.primal[j] = x_[j];
    double obj = 0.0;
    for (int j = 0; j < n_; ++j) obj += cost_[j] * x_[j];
    s.objective = obj;

    double bound_viol = 0.0;
    for (int j = 0; j < ncols_; ++j) {
        bound_viol = std::max(bound_viol, lb_[j] - x_[j]);
        bound_viol = std::max(bound_viol, x_[j] - ub_[j]);
    }
    s.max_bound_violation = std::max(0.0, bound_viol);

    if (status != SolveStatus::optimal) return;

    Eigen::VectorXd y(m_);
    for (int i = 0; i < m_; ++i) y[i] = cost_[basic_[i]];
    btran(y);
    s.duals = y;
    s.reduced_costs.resize(n_);
    double dual_obj = b_.dot(y);
    double comp = 0.0;
    for (int j = 0; j < ncols_; ++j) {
        const double r = (j < n_ ? cost_[j] : 0.0) - col_dot(j, y);
        if (j < n_) s.reduced_costs[j] = state_[j] == kBasic ? 0.0 : r;
        if (state_[j] == kBasic) continue;
        const double rp = std::max(r, 0.0), rn = std::min(r, 0.0);
        if (rp > 0.0)
            dual_obj += std::isfinite(lb_[j]) ? rp * lb_[j] : (rp > opt_.opt_tol ? -kInf : 0.0);
        if (rn < 0.0)
            dual_obj += std::isfinite(ub_[j]) ? rn * ub_[j] : (-rn > opt_.opt_tol ? -kInf : 0.0);
        const double dlo = std::isfinite(lb_[j]) ? std::min(x_[j] - lb_[j], 1.0) : 1.0;
        const double dup = std::isfinite(ub_[j]) ? std::min(ub_[j] - x_[j], 1.0) : 1.0;
        comp = std::max(comp, std::max(rp * dlo, -rn * dup));
    }
    s.duality_gap = std::abs(obj - dual_obj);
    s.complementarity = comp;
}

Solution Simplex::run(Basis& basis) {
    const auto t0 = std::chrono::steady_clock::now();
    Solution s;

    long cap = opt_.max_iterations;
    if (cap <= 0) cap = 10000 + 100L * m_ + 10L * ncols_;

    if (m_ == 0) {
        // Pure bound problem: every variable sits at its cost-preferred bound.
        s.primal.resize(n_);
        s.reduced_costs.resize(n_);
        s.duals.resize(0);
        double obj = 0.0;
        for (int j = 0; j < n_; ++j) {
            const auto& v = lp_.variables[j];
            double val;
            if (v.objective > 0.0)
                val = v.lower;
            else if (v.objective < 0.0)
                val = v.upper;
            else
                val = std::isfinite(v.lower) ? v.lower : (std::isfinite(v.upper) ? v.upper : 0.0);
            if (!std::isfinite(val)) {
                s.status = SolveStatus::unbounded;
                s.message = "free objective direction on variable " + v.name;
                return s;
            }
            s.primal[j] = val;
            s.reduced_costs[j] = v.objective;
            obj += v.objective * val;
        }
        s.objective = obj;
        s.status = SolveStatus::optimal;
        s.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return s;
    }

    bool ready = false;
    if (!basis.empty()) ready = set_warm_basis(basis);
    if (!ready && !set_slack_basis()) {
        s.status = SolveStatus::error;
        s.message = "initial basis factorization failed";
        return s;
    }

    SolveStatus st = iterate(cap);
    if (st == SolveStatus::optimal) {
        // Make fixed slacks nonbasic so equality rows hold to machine
        // precision, then confirm optimality still holds.
        purge_fixed_basics();
        st = iterate(cap);
    }
    if (!factor_ok_) {
        st = SolveStatus::error;
        s.message = "basis factorization became singular";
    } else if (st == SolveStatus::error && s.message.empty()) {
        s.message = "numerical trouble during pivoting";
    }

    fill_solution(s, st);

    basis.basic = basic_;
    basis.at_upper.assign(ncols_, 0);
    for (int j = 0; j < ncols_; ++j) basis.at_upper[j] = (state_[j] == kAtUpper) ? 1 : 0;

    s.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return s;
}

}  // namespace

Solution solve_lp(const LinearProgram& lp, const SimplexOptions& options) {
    Basis b;
    return solve_lp_with_basis(lp, options, b);
}

Solution solve_lp_with_basis(const LinearProgram& lp, const SimplexOptions& options, Basis& basis) {
    lp.validate();
    Simplex s(lp, options);
    return s.run(basis);
}

}  // namespace battd::optim
