#pragma once

#include <cstdint>
#include <vector>

#include "netex/decomposition.hpp"
#include "netex/hypergraph.hpp"
#include "netex/simulate.hpp"

namespace netex {

// Finite list of candidate predictors over the same feature tuple space as
// the response, with a declared bound M on |f(x) - y|.
struct HypothesisClass {
    std::vector<TabulatedFunction> candidates;
    double bound_M = 0.0;

    int size() const noexcept { return static_cast<int>(candidates.size()); }
};

// Labeled examples with per-example weights; normalizer is sum of weights.
struct WeightedDataset {
    std::vector<std::vector<int>> inputs;
    std::vector<double> labels;
    std::vector<double> weights;
    double normalizer = 0.0;
};

WeightedDataset make_weighted_dataset(const Hypergraph& h, const NetworkedSample& sample,
                                      const WeightVector& w);

// (1/normalizer) sum_i w_i (f(x_i) - y_i)^2.
double weighted_empirical_risk(const TabulatedFunction& predictor, const WeightedDataset& data);

// Index of the weighted-risk minimizer; ties go to the lowest index.
int erm_select(const WeightedDataset& data, const HypothesisClass& cls);

// Exact expected square loss of a predictor against the spec's response
// distribution (label noise adds its variance).
double expected_risk(const TabulatedFunction& predictor, const ResponseSpec& spec);

enum class WeightScheme { eqw, ind, svalue };
const char* weight_scheme_name(WeightScheme scheme) noexcept;
WeightVector scheme_weights(const Hypergraph& h, WeightScheme scheme);

struct MethodSummary {
    WeightScheme method;
    std::vector<int> selected;           // per repetition
    std::vector<double> empirical_risk;  // weighted risk of the selected predictor
    std::vector<double> excess_risk;     // expected_risk(selected) - class optimum
    double mean_excess = 0.0;
    double std_error = 0.0;
    double q05 = 0.0;
    double median = 0.0;
    double q95 = 0.0;
};

// Repeated draw / select / score loop for each method. Repetition r of every
// method sees the sample drawn from the stream (seed, r), so methods are
// compared on identical samples.
std::vector<MethodSummary> excess_risk_experiment(const Hypergraph& h, const ResponseSpec& spec,
                                                  const HypothesisClass& cls,
                                                  const std::vector<WeightScheme>& methods,
                                                  int repetitions, std::uint64_t seed);

}  // namespace netex
