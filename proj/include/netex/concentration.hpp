#pragma once

#include <array>
#include <string>
#include <utility>

#include "netex/error.hpp"
#include "netex/hypergraph.hpp"

namespace netex {

// Parameters shared by the tail-bound evaluators. Only the fields a given
// bound reads need to be set.
struct BoundQuery {
    double epsilon = 0.0;       // one-sided deviation
    double M = 0.0;             // range bound |X - mu| <= M
    double sigma2 = 0.0;        // per-variable variance
    double total_weight = 0.0;  // |w| (or s for the s-value sample-error bound)
    long n = 0;                 // number of variables / sample size
    long omega = 0;             // maximum vertex degree
    double chi_star = 0.0;      // fractional hyperedge-chromatic number
    int r = 0;                  // U-statistic order
    double covering = 0.0;      // hypothesis-capacity prefactor (finite class size)
    double range = 0.0;         // b - a for U-statistic kernels
};

enum class BoundKind {
    bennett,
    bernstein,
    hoeffding,
    janson_hoeffding,
    janson_bernstein,
    eqw_bennett,
    eqw_bernstein,
    eqw_hoeffding,
    ustat_hoeffding,
    ustat_bernstein,
    ustat_hoeffding_classic,
    sample_error_iid,
    sample_error_eqw_chromatic,
    sample_error_eqw_omega,
    sample_error_svalue,
    markov,
};

const char* bound_kind_name(BoundKind kind) noexcept;

// `raw` is the formula value; `value` clips it into [0, 1] (values above one
// are vacuous but the exact number is still reported).
struct BoundResult {
    BoundKind kind;
    double raw = 1.0;
    double value = 1.0;
};

BoundResult make_bound(BoundKind kind, double raw);

// Weighted-sum deviation bounds for feasible weights:
// exp(-(|w| eps / 2M) log(1 + M eps / sigma^2)),
// exp(-|w| eps^2 / (2 (sigma^2 + M eps / 3))),
// exp(-|w| eps^2 / (2 M^2)).
BoundResult networked_bennett(const BoundQuery& q);
BoundResult networked_bernstein(const BoundQuery& q);
BoundResult networked_hoeffding(const BoundQuery& q);

// Equal-weight chromatic-number bounds:
// exp(-n eps^2 / (2 chi* M^2)) and exp(-8 n eps^2 / (25 chi* (sigma^2 + M eps/3))).
std::pair<BoundResult, BoundResult> janson_bounds(const BoundQuery& q);

// Equal-weight maximum-degree bounds: the three weighted-sum forms with
// |w| = n / omega.
std::array<BoundResult, 3> eqw_bounds(const BoundQuery& q);

// One-sample U-statistic tails: the floor-free forms
// exp(-2 n eps^2 / (r (b-a)^2)) and exp(-2 (n/r) eps^2 / (sigma^2 + M eps/3)),
// plus the floor-based classic exp(-2 floor(n/r) eps^2 / (b-a)^2).
std::array<BoundResult, 3> u_statistic_bounds(const BoundQuery& q);

enum class SampleErrorKind { iid, eqw_chromatic, eqw_omega, s_value };

// Uniform-deviation sample-error bounds, covering-prefactor times:
//   iid:            exp(-N eps / (300 M^4))
//   eqw_chromatic:  exp(-3 N eps / (1400 chi* M^4))
//   eqw_omega:      exp(-N eps / (300 omega M^4))
//   s_value:        exp(-s eps / (300 M^2))
BoundResult sample_error_bound(SampleErrorKind kind, const BoundQuery& q);

// q / (a + q) for a nonnegative variable with mean q.
BoundResult markov_bound(double mean, double deviation);

// Exact fractional hyperedge-chromatic number: optimal value of the covering
// program over all maximal matchings. Small instances only.
double chi_star_oracle(const Hypergraph& h, int max_edges = 12);

}  // namespace netex
