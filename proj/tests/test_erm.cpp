#include <doctest.h>

#include <cmath>

#include "netex/erm.hpp"
#include "netex/hypergraph.hpp"
#include "netex/simulate.hpp"
#include "netex/weighting.hpp"

using namespace netex;

namespace {

// Constant predictors theta over the same 2x2 index space as the responses.
HypothesisClass constant_grid(double lo, double hi, int count, double bound_M) {
    HypothesisClass cls;
    cls.bound_M = bound_M;
    for (int i = 0; i < count; ++i) {
        double theta = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
        cls.candidates.push_back(TabulatedFunction::constant({2, 2}, theta));
    }
    return cls;
}

}  // namespace

TEST_SUITE("erm") {

TEST_CASE("weighted empirical risk") {
    WeightedDataset data;
    data.inputs = {{0, 0}, {0, 1}, {1, 1}};
    data.labels = {0.0, 1.0, 1.0};
    data.weights = {0.5, 0.5, 0.5};
    data.normalizer = 1.5;

    // Predictor equal to the labels: zero risk.
    TabulatedFunction perfect({2, 2}, {0.0, 1.0, 0.0, 1.0});
    CHECK(weighted_empirical_risk(perfect, data) == doctest::Approx(0.0));

    // Losses (0, 1, 1) under halved weights: (1/1.5) * (0 + 0.5 + 0.5) = 2/3.
    TabulatedFunction zero = TabulatedFunction::constant({2, 2}, 0.0);
    CHECK(weighted_empirical_risk(zero, data) == doctest::Approx(2.0 / 3.0));

    WeightedDataset single;
    single.inputs = {{0, 0}};
    single.labels = {1.0};
    single.weights = {1.0};
    single.normalizer = 1.0;
    CHECK(weighted_empirical_risk(zero, single) == doctest::Approx(1.0));
}

TEST_CASE("erm_select") {
    WeightedDataset data;
    data.inputs = {{0, 0}, {1, 1}};
    data.labels = {1.0, 1.0};
    data.weights = {1.0, 1.0};
    data.normalizer = 2.0;

    HypothesisClass zero_or_one;
    zero_or_one.bound_M = 2.0;
    zero_or_one.candidates.push_back(TabulatedFunction::constant({2, 2}, 0.0));
    zero_or_one.candidates.push_back(TabulatedFunction::constant({2, 2}, 1.0));
    CHECK(erm_select(data, zero_or_one) == 1);

    HypothesisClass single;
    single.candidates.push_back(TabulatedFunction::constant({2, 2}, 0.3));
    CHECK(erm_select(data, single) == 0);

    // Half the labels 0, half 1: the square-loss minimizer is the midpoint.
    WeightedDataset halves;
    halves.inputs = {{0, 0}, {1, 1}};
    halves.labels = {0.0, 1.0};
    halves.weights = {1.0, 1.0};
    halves.normalizer = 2.0;
    HypothesisClass three;
    three.candidates.push_back(TabulatedFunction::constant({2, 2}, 0.0));
    three.candidates.push_back(TabulatedFunction::constant({2, 2}, 1.0));
    three.candidates.push_back(TabulatedFunction::constant({2, 2}, 0.5));
    CHECK(erm_select(halves, three) == 2);

    CHECK_THROWS_AS(erm_select(data, HypothesisClass{}), Error);
}

TEST_CASE("selection is invariant under weight rescaling") {
    Hypergraph h = disjoint_union(gen_star(6), gen_disjoint(4));
    ResponseSpec spec = first_feature_spec(2, 0.25);
    auto sample = draw_sample(h, spec, 77);
    HypothesisClass cls = constant_grid(-1.0, 1.0, 21, 2.25);

    WeightVector w = eqw_weights(h);
    WeightVector scaled = w;
    for (double& x : scaled.weights) x *= 0.125;
    auto d1 = make_weighted_dataset(h, sample, w);
    auto d2 = make_weighted_dataset(h, sample, scaled);
    CHECK(erm_select(d1, cls) == erm_select(d2, cls));
}

TEST_CASE("matching weights reduce to the unweighted subsample risk") {
    Hypergraph h = disjoint_union(gen_star(5), gen_disjoint(3));
    ResponseSpec spec = first_feature_spec(2, 0.25);
    auto sample = draw_sample(h, spec, 5);
    WeightVector ind = ind_weights(h);
    auto data = make_weighted_dataset(h, sample, ind);

    auto matching = greedy_matching(h);
    TabulatedFunction f = TabulatedFunction::constant({2, 2}, 0.4);
    double manual = 0.0;
    for (int i : matching) {
        double d = f(data.inputs[static_cast<std::size_t>(i)]) - data.labels[static_cast<std::size_t>(i)];
        manual += d * d;
    }
    manual /= static_cast<double>(matching.size());
    CHECK(weighted_empirical_risk(f, data) == doctest::Approx(manual).epsilon(1e-12));
}

TEST_CASE("expected risk") {
    ResponseSpec spec = first_feature_spec(2);
    // The response itself is risk-free; constants pay their squared distance.
    CHECK(expected_risk(spec.response, spec) == doctest::Approx(0.0));
    CHECK(expected_risk(TabulatedFunction::constant({2, 2}, 0.0), spec) == doctest::Approx(1.0));

    ResponseSpec noisy = first_feature_spec(2, 0.3);
    CHECK(expected_risk(noisy.response, noisy) == doctest::Approx(0.09 / 3.0));

    // No constant beats the conditional mean.
    for (double theta : {-1.0, -0.2, 0.3, 1.0}) {
        CHECK(expected_risk(TabulatedFunction::constant({2, 2}, theta), spec) >=
              expected_risk(spec.response, spec) - 1e-12);
    }
}

TEST_CASE("an undersized declared bound is rejected") {
    Hypergraph h = gen_disjoint(3);
    ResponseSpec spec = first_feature_spec(2, 0.5);
    HypothesisClass cls;
    cls.bound_M = 1.0;  // sup |f - y| reaches 2.5 here
    cls.candidates.push_back(TabulatedFunction::constant({2, 2}, 1.0));
    CHECK_THROWS_AS(excess_risk_experiment(h, spec, cls, {WeightScheme::eqw}, 2, 1), Error);
}

TEST_CASE("noiseless realizable experiments have zero excess risk") {
    Hypergraph h = gen_disjoint(6);
    ResponseSpec spec = first_feature_spec(2);
    HypothesisClass cls;
    cls.bound_M = 2.0;
    cls.candidates.push_back(TabulatedFunction::constant({2, 2}, 0.5));
    cls.candidates.push_back(spec.response);

    auto out = excess_risk_experiment(h, spec, cls,
                                      {WeightScheme::eqw, WeightScheme::ind, WeightScheme::svalue},
                                      20, 11);
    for (const auto& summary : out) {
        for (double e : summary.excess_risk) CHECK(e == doctest::Approx(0.0));
    }
}

TEST_CASE("methods coincide on decoupled edges") {
    Hypergraph h = gen_disjoint(8);
    ResponseSpec spec = first_feature_spec(2, 0.25);
    HypothesisClass cls = constant_grid(-1.0, 1.0, 11, 2.25);
    auto out = excess_risk_experiment(
        h, spec, cls, {WeightScheme::eqw, WeightScheme::ind, WeightScheme::svalue}, 30, 13);
    REQUIRE(out.size() == 3);
    CHECK(out[0].selected == out[1].selected);
    CHECK(out[0].selected == out[2].selected);
    CHECK(out[0].mean_excess == doctest::Approx(out[2].mean_excess));
}

TEST_CASE("excess risk is nonnegative and fractional weights win on hubs") {
    Hypergraph h = disjoint_union(gen_star(20), gen_disjoint(20));
    ResponseSpec spec = first_feature_spec(2, 0.25);
    HypothesisClass cls = constant_grid(-1.0, 1.0, 21, 2.25);
    auto out =
        excess_risk_experiment(h, spec, cls, {WeightScheme::svalue, WeightScheme::eqw}, 60, 17);
    REQUIRE(out.size() == 2);
    for (const auto& summary : out) {
        for (double e : summary.excess_risk) CHECK(e >= -1e-12);
    }
    double margin = out[0].std_error + out[1].std_error;
    CHECK(out[0].mean_excess <= out[1].mean_excess + margin);
}

}  // TEST_SUITE
