#pragma once

#include <limits>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Core>

// Sparse constraint-matrix model containers shared by the simplex solver,
// the branch-and-bound layer and the MPS writer. Minimization throughout.

namespace battd::optim {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense : char { le = 'L', eq = 'E', ge = 'G' };

struct Variable {
    std::string name;
    double lower = 0.0;
    double upper = kInf;
    double objective = 0.0;
};

struct Constraint {
    std::string name;
    std::vector<std::pair<int, double>> coeffs;  // (variable index, value)
    Sense sense = Sense::le;
    double rhs = 0.0;
};

class ModelError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LinearProgram {
    std::vector<Variable> variables;
    std::vector<Constraint> constraints;

    int add_variable(const std::string& name, double lower, double upper, double objective);
    int add_constraint(const std::string& name, Sense sense, double rhs);
    void add_coeff(int row, int var, double value);
    int variable_index(const std::string& name) const;  // -1 when absent

    int num_vars() const { return static_cast<int>(variables.size()); }
    int num_rows() const { return static_cast<int>(constraints.size()); }

    // Throws ModelError on duplicate names, bad bounds or dangling indices.
    void validate() const;

  private:
    std::unordered_map<std::string, int> var_index_;
    std::unordered_map<std::string, int> row_index_;
};

struct MixedIntegerProgram {
    LinearProgram lp;
    std::vector<int> binary_variables;  // indices into lp.variables, bounds within [0,1]

    void validate() const;
};

enum class SolveStatus { optimal, infeasible, unbounded, iteration_limit, node_limit, error };

const char* status_name(SolveStatus s);

struct Solution {
    SolveStatus status = SolveStatus::error;
    double objective = 0.0;
    Eigen::VectorXd primal;         // per variable
    Eigen::VectorXd duals;          // per constraint (LP only)
    Eigen::VectorXd reduced_costs;  // per variable (LP only)

    long iterations = 0;
    long nodes = 0;
    double wall_seconds = 0.0;

    // Optimality certificates filled on optimal LP solves.
    double max_bound_violation = 0.0;
    double duality_gap = 0.0;
    double complementarity = 0.0;

    double best_bound = -kInf;  // MILP: proven lower bound (minimization)
    std::string message;
};

struct SimplexOptions {
    double feas_tol = 1e-7;        // absolute primal feasibility
    double opt_tol = 1e-7;         // reduced-cost optimality threshold
    long max_iterations = 200000;  // 0 means automatic (scales with model size)
    int refactor_every = 50;       // eta updates between basis refactorizations
    long bland_after = 1000;       // consecutive degenerate pivots before Bland's rule
};

struct MilpOptions {
    SimplexOptions lp;
    double int_tol = 1e-6;    // integrality tolerance
    double gap_abs = 1e-9;    // pruning slack (keeps enumeration-exact optima)
    long node_limit = 200000;
    long heuristic_every = 50;  // rounding-dive cadence in nodes
    // Caller-provided full binary fixings tried as dives at the root
    // (e.g. geometric triangle picks from a relaxation point).
    std::vector<std::vector<std::pair<int, double>>> root_hints;
};

}  // namespace battd::optim
