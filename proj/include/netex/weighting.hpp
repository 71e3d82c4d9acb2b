#pragma once

#include <vector>

#include "netex/hypergraph.hpp"
#include "netex/lp.hpp"

namespace netex {

// Optimal value and an optimal vertex of the fractional-matching program
//   max sum_i w_i  s.t.  w >= 0,  for every vertex v: sum_{i: v in e_i} w_i <= 1.
// The optimum may be attained at several vertices; every downstream guarantee
// depends only on s = total().
struct SValueResult {
    double s = 0.0;
    WeightVector weights;
};

SValueResult s_value(const Hypergraph& h);

// The fractional-matching program as an explicit LP (one row per vertex of
// degree >= 2, plus one bound row per edge none of whose vertices has degree
// >= 2; rows implied by others are dropped).
LpProblem s_value_lp(const Hypergraph& h);

// Uniform weights 1/omega(H): the equal-weight scheme rescaled so that the
// vector is feasible.
WeightVector eqw_weights(const Hypergraph& h);

// Weight 1 on a greedy maximal matching, 0 elsewhere.
WeightVector ind_weights(const Hypergraph& h);

// Simplex weights minimizing the worst-case variance of the weighted average
// over all allocations of unit variance to the k parts:
//   min_{w' in simplex} max_l  w'^T D_l w'   with (D_l)_ij = 1 iff edges i, j
// share the part-l vertex. `normalized` is w', `worst_variance` the optimal t.
struct MinimaxWeights {
    std::vector<double> normalized;
    double worst_variance = 0.0;

    // w'/t: satisfies, for every part l, w^T D_l w <= sum_i w_i, with
    // sum_i w_i = 1/t.
    std::vector<double> scaled() const;
};

struct MinimaxOptions {
    int max_iterations = 20000;
    double improvement_tol = 1e-9;  // early stop when the best value stops moving
    double step_scale = 0.25;       // step at iteration t is step_scale / sqrt(t)
};

// Projected subgradient descent on the piecewise-quadratic objective over the
// simplex. Deterministic for a fixed iteration budget.
MinimaxWeights minimax_variance_weights(const Hypergraph& h, const MinimaxOptions& opts = {});

// Exhaustive simplex grid search at the given resolution; ground truth for
// small instances. Throws errc::too_large above 4 edges.
MinimaxWeights minimax_oracle(const Hypergraph& h, double resolution);

// max_l w^T D_l w for the given (not necessarily normalized) weights.
double minimax_objective(const Hypergraph& h, const std::vector<double>& w);

// Euclidean projection onto the probability simplex.
std::vector<double> project_to_simplex(std::vector<double> v);

}  // namespace netex
