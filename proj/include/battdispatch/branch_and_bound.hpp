#pragma once

#include "battdispatch/lp.hpp"

namespace battd::optim {

// Depth-first branch and bound over the binary variables: most-fractional
// branching, round-to-nearest plunging, warm-started node relaxations and a
// rounding dive heuristic for early incumbents.
Solution solve_milp(const MixedIntegerProgram& mip, const MilpOptions& options = {});

}  // namespace battd::optim
