#pragma once

#include "battdispatch/lp.hpp"

namespace battd::optim {

// Bounded-variable revised simplex: composite phase 1 on the slack basis,
// Dantzig pricing with a Bland fallback, product-form eta updates on a
// sparse LU refactorization.
Solution solve_lp(const LinearProgram& lp, const SimplexOptions& options = {});

// Warm-startable entry point used by branch and bound: basis holds one
// variable index per row, nonbasic_at_upper the complementary statuses.
// Pass empty vectors to start from the slack basis.
struct Basis {
    std::vector<int> basic;             // column index per row (structurals then slacks)
    std::vector<unsigned char> at_upper;  // per column, nonbasic rest position
    bool empty() const { return basic.empty(); }
};

Solution solve_lp_with_basis(const LinearProgram& lp, const SimplexOptions& options, Basis& basis);

}  // namespace battd::optim
