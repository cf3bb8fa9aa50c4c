#include "battdispatch/lp.hpp"

#include <cmath>

namespace battd::optim {

const char* status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::optimal: return "optimal";
        case SolveStatus::infeasible: return "infeasible";
        case SolveStatus::unbounded: return "unbounded";
        case SolveStatus::iteration_limit: return "iteration-limit";
        case SolveStatus::node_limit: return "node-limit";
        case SolveStatus::error: return "error";
    }
    return "unknown";
}

int LinearProgram::add_variable(const std::string& name, double lower, double upper,
                                double objective) {
    if (var_index_.count(name)) throw ModelError("duplicate variable name: " + name);
    if (lower > upper) throw ModelError("variable " + name + ": lower bound exceeds upper");
    const int idx = num_vars();
    variables.push_back({name, lower, upper, objective});
    var_index_.emplace(name, idx);
    return idx;
}

int LinearProgram::add_constraint(const std::string& name, Sense sense, double rhs) {
    if (row_index_.count(name)) throw ModelError("duplicate constraint name: " + name);
    const int idx = num_rows();
    constraints.push_back({name, {}, sense, rhs});
    row_index_.emplace(name, idx);
    return idx;
}

void LinearProgram::add_coeff(int row, int var, double value) {
    if (row < 0 || row >= num_rows()) throw ModelError("add_coeff: row out of range");
    if (var < 0 || var >= num_vars()) throw ModelError("add_coeff: variable out of range");
    if (value == 0.0) return;
    constraints[row].coeffs.emplace_back(var, value);
}

int LinearProgram::variable_index(const std::string& name) const {
    auto it = var_index_.find(name);
    return it == var_index_.end() ? -1 : it->second;
}

void LinearProgram::validate() const {
    for (const auto& v : variables) {
        if (std::isnan(v.lower) || std::isnan(v.upper))
            throw ModelError("variable " + v.name + ": NaN bound");
        if (v.lower > v.upper) throw ModelError("variable " + v.name + ": empty bound interval");
    }
    for (const auto& c : constraints) {
        if (std::isnan(c.rhs)) throw ModelError("constraint " + c.name + ": NaN rhs");
        for (const auto& [j, a] : c.coeffs) {
            if (j < 0 || j >= num_vars())
                throw ModelError("constraint " + c.name + ": dangling variable index");
            if (std::isnan(a) || std::isinf(a))
                throw ModelError("constraint " + c.name + ": non-finite coefficient");
        }
    }
}

void MixedIntegerProgram::validate() const {
    lp.validate();
    for (int j : binary_variables) {
        if (j < 0 || j >= lp.num_vars()) throw ModelError("binary index out of range");
        const auto& v = lp.variables[j];
        if (v.lower < -1e-12 || v.upper > 1.0 + 1e-12)
            throw ModelError("binary variable " + v.name + ": bounds outside [0,1]");
    }
}

}  // namespace battd::optim
