#pragma once

#include <cstdint>
#include <vector>

#include "netex/decomposition.hpp"
#include "netex/hypergraph.hpp"
#include "netex/rng.hpp"

namespace netex {

// Sampling model: vertex features are drawn i.i.d. from finite marginals
// (per-part marginals for a partite hypergraph, or one shared marginal), each
// edge's value is the response table evaluated at its incident features, plus
// optional independent uniform noise on [-noise_half_width, +noise_half_width].
struct ResponseSpec {
    std::vector<std::vector<double>> marginals;  // size 1 (shared) or k (per part)
    TabulatedFunction response;
    double noise_half_width = 0.0;

    const std::vector<double>& marginal_for(int part) const {
        return marginals.size() == 1 ? marginals[0] : marginals[static_cast<std::size_t>(part)];
    }
};

// Throws errc::spec_mismatch unless the spec's arity, alphabet sizes, and
// marginal count are consistent with the hypergraph.
void validate_spec(const Hypergraph& h, const ResponseSpec& spec);

// Index tuple feeding the response table for one edge: per-part features in
// part order for a partite hypergraph, otherwise incident features in
// ascending vertex order.
std::vector<int> edge_feature_tuple(const Hypergraph& h, const std::vector<int>& features, int edge);

struct NetworkedSample {
    std::vector<int> features;        // one symbol per vertex
    std::vector<double> edge_values;  // one response value per edge
};

NetworkedSample draw_sample(const Hypergraph& h, const ResponseSpec& spec, std::uint64_t seed);

// Exact moments of a single edge value under the spec (noise contributes
// h^2/3 to the variance and nothing to the mean).
double response_mean(const ResponseSpec& spec);
double response_variance(const ResponseSpec& spec);
// Range bound M with |X - E X| <= M.
double response_deviation_bound(const ResponseSpec& spec);

struct TailEstimate {
    double epsilon = 0.0;
    long trials = 0;
    long hits = 0;
    double estimate = 0.0;
    double std_error = 0.0;
};

// Monte Carlo tail of the normalized weighted deviation
//   P( (1/|w|) sum_i w_i X_i - mu >= eps ).
// Trial t uses the stream derived from (seed, t), so the result does not
// depend on how trials are scheduled.
TailEstimate estimate_tail(const Hypergraph& h, const ResponseSpec& spec, const WeightVector& w,
                           double epsilon, long trials, std::uint64_t seed);
std::vector<TailEstimate> estimate_tail_grid(const Hypergraph& h, const ResponseSpec& spec,
                                             const WeightVector& w,
                                             const std::vector<double>& epsilons, long trials,
                                             std::uint64_t seed);

struct VarianceEstimate {
    double variance = 0.0;
    double std_error = 0.0;  // delta-method error of the variance estimator
    long trials = 0;
};

VarianceEstimate estimate_variance(const Hypergraph& h, const ResponseSpec& spec,
                                   const WeightVector& w, long trials, std::uint64_t seed);

// Monte Carlo check of the weighted moment-generating-function inequality
//   E exp(sum_i w_i X_i) <= prod_i (E exp(X_i))^{w_i}
// for feasible w. Standard errors come from batch means.
struct MgfCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double lhs_se = 0.0;
    double rhs_se = 0.0;
};

MgfCheck check_mgf(const Hypergraph& h, const ResponseSpec& spec, const WeightVector& w,
                   long trials, std::uint64_t seed);

// Head-to-head variance comparison of the optimal fractional-matching weights
// against equal weights, with the sigma^2 / s guarantee they are measured
// against.
struct SValueVarianceReport {
    double s = 0.0;
    double sigma2 = 0.0;
    double bound = 0.0;  // sigma^2 / s
    VarianceEstimate svalue;
    VarianceEstimate eqw;
};

SValueVarianceReport svalue_variance_check(const Hypergraph& h, const ResponseSpec& spec,
                                           long trials, std::uint64_t seed);

// ---- Common response specs --------------------------------------------------

// Symbols {0,1} valued as -1/+1, uniform marginal; the edge value is the
// product of the incident values: zero mean, unit variance, |X| <= 1.
ResponseSpec rademacher_product_spec(int arity, double noise_half_width = 0.0);

// Edge value is the value of the first axis alone (lowest-id vertex, or the
// chosen part when `part` is set): fully determined by one shared object.
ResponseSpec first_feature_spec(int arity, double noise_half_width = 0.0);
ResponseSpec part_feature_spec(int k, int part, double noise_half_width = 0.0);

}  // namespace netex
