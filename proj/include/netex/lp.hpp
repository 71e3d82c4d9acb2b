#pragma once

#include <vector>

#include "netex/error.hpp"

namespace netex {

// maximize objective . x  subject to  rows . x <= rhs,  x >= 0.
struct LpProblem {
    std::vector<double> objective;
    std::vector<std::vector<double>> constraint_rows;
    std::vector<double> constraint_rhs;

    int num_vars() const noexcept { return static_cast<int>(objective.size()); }
    int num_rows() const noexcept { return static_cast<int>(constraint_rows.size()); }
};

struct LpSolution {
    double value = 0.0;
    std::vector<double> solution;
    long iterations = 0;
};

struct LpOptions {
    double eps = 1e-9;
    long max_iterations = 0;  // 0 = derive from problem size
    // Consecutive non-improving pivots before switching the pricing rule to
    // Bland's smallest-index rule (anti-cycling); Dantzig pricing resumes as
    // soon as the objective moves again.
    int stall_threshold = 256;
};

// Dense primal simplex in dictionary form with a single artificial column for
// the feasibility phase. Throws errc::infeasible, errc::unbounded, or
// errc::iteration_limit.
LpSolution solve_lp(const LpProblem& p, const LpOptions& opts = {});

}  // namespace netex
