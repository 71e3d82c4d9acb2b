#include "netex/erm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "netex/weighting.hpp"

namespace netex {

WeightedDataset make_weighted_dataset(const Hypergraph& h, const NetworkedSample& sample,
                                      const WeightVector& w) {
    if (w.size() != h.num_edges() ||
        static_cast<int>(sample.edge_values.size()) != h.num_edges()) {
        throw Error(errc::length_mismatch, "weights and labels must match the edge count");
    }
    WeightedDataset data;
    data.inputs.reserve(sample.edge_values.size());
    for (int i = 0; i < h.num_edges(); ++i) {
        data.inputs.push_back(edge_feature_tuple(h, sample.features, i));
    }
    data.labels = sample.edge_values;
    data.weights = w.weights;
    data.normalizer = w.total();
    if (data.normalizer <= 0.0) throw Error(errc::zero_normalizer, "weights sum to zero");
    return data;
}

double weighted_empirical_risk(const TabulatedFunction& predictor, const WeightedDataset& data) {
    if (data.normalizer <= 0.0) throw Error(errc::zero_normalizer, "weights sum to zero");
    double acc = 0.0;
    for (std::size_t i = 0; i < data.inputs.size(); ++i) {
        double d = predictor(data.inputs[i]) - data.labels[i];
        acc += data.weights[i] * d * d;
    }
    return acc / data.normalizer;
}

int erm_select(const WeightedDataset& data, const HypothesisClass& cls) {
    if (cls.candidates.empty()) throw Error(errc::empty_class, "no candidates");
    int best = 0;
    double best_risk = weighted_empirical_risk(cls.candidates[0], data);
    for (int j = 1; j < cls.size(); ++j) {
        double r = weighted_empirical_risk(cls.candidates[static_cast<std::size_t>(j)], data);
        if (r < best_risk) {
            best_risk = r;
            best = j;
        }
    }
    return best;
}

double expected_risk(const TabulatedFunction& predictor, const ResponseSpec& spec) {
    if (predictor.shape() != spec.response.shape()) {
        throw Error(errc::shape_mismatch, "predictor shape does not match the response table");
    }
    const auto& shape = spec.response.shape();
    std::vector<int> idx(shape.size(), 0);
    double risk = 0.0;
    std::size_t flat = 0;
    do {
        double p = 1.0;
        for (std::size_t i = 0; i < shape.size(); ++i) {
            p *= spec.marginal_for(static_cast<int>(i))[static_cast<std::size_t>(idx[i])];
        }
        double d = predictor.at_flat(flat) - spec.response.at_flat(flat);
        risk += p * d * d;
        ++flat;
    } while (next_index(idx, shape));
    return risk + spec.noise_half_width * spec.noise_half_width / 3.0;
}

const char* weight_scheme_name(WeightScheme scheme) noexcept {
    switch (scheme) {
        case WeightScheme::eqw: return "eqw";
        case WeightScheme::ind: return "ind";
        case WeightScheme::svalue: return "svalue";
    }
    return "unknown";
}

WeightVector scheme_weights(const Hypergraph& h, WeightScheme scheme) {
    switch (scheme) {
        case WeightScheme::eqw: return eqw_weights(h);
        case WeightScheme::ind: return ind_weights(h);
        case WeightScheme::svalue: return s_value(h).weights;
    }
    throw Error(errc::bad_params, "unknown scheme");
}

std::vector<MethodSummary> excess_risk_experiment(const Hypergraph& h, const ResponseSpec& spec,
                                                  const HypothesisClass& cls,
                                                  const std::vector<WeightScheme>& methods,
                                                  int repetitions, std::uint64_t seed) {
    validate_spec(h, spec);
    if (cls.candidates.empty()) throw Error(errc::empty_class, "no candidates");
    if (repetitions < 1) throw Error(errc::bad_params, "need at least one repetition");

    // The declared bound must cover sup |f(x) - y| over the label range.
    for (int j = 0; j < cls.size(); ++j) {
        const auto& f = cls.candidates[static_cast<std::size_t>(j)];
        if (f.shape() != spec.response.shape()) {
            throw Error(errc::shape_mismatch, "candidate " + std::to_string(j) + " shape mismatch");
        }
        double worst = 0.0;
        for (std::size_t c = 0; c < f.size(); ++c) {
            worst = std::max(worst, std::abs(f.at_flat(c) - spec.response.at_flat(c)));
        }
        if (worst + spec.noise_half_width > cls.bound_M + 1e-12) {
            throw Error(errc::bad_params, "candidate " + std::to_string(j) +
                                              " exceeds the declared bound M");
        }
    }

    // Class optimum under the true distribution, by exact search.
    double best_risk = expected_risk(cls.candidates[0], spec);
    for (int j = 1; j < cls.size(); ++j) {
        best_risk = std::min(best_risk, expected_risk(cls.candidates[static_cast<std::size_t>(j)], spec));
    }
    std::vector<double> risks(static_cast<std::size_t>(cls.size()), 0.0);
    for (int j = 0; j < cls.size(); ++j) {
        risks[static_cast<std::size_t>(j)] = expected_risk(cls.candidates[static_cast<std::size_t>(j)], spec);
    }

    std::vector<MethodSummary> out;
    out.reserve(methods.size());
    for (WeightScheme scheme : methods) {
        MethodSummary summary;
        summary.method = scheme;
        WeightVector w = scheme_weights(h, scheme);
        for (int rep = 0; rep < repetitions; ++rep) {
            NetworkedSample sample =
                draw_sample(h, spec, Rng::derive(seed, static_cast<std::uint64_t>(rep)));
            WeightedDataset data = make_weighted_dataset(h, sample, w);
            int pick = erm_select(data, cls);
            summary.selected.push_back(pick);
            summary.empirical_risk.push_back(
                weighted_empirical_risk(cls.candidates[static_cast<std::size_t>(pick)], data));
            summary.excess_risk.push_back(risks[static_cast<std::size_t>(pick)] - best_risk);
        }

        double mean = 0.0;
        for (double e : summary.excess_risk) mean += e;
        mean /= static_cast<double>(repetitions);
        double var = 0.0;
        for (double e : summary.excess_risk) var += (e - mean) * (e - mean);
        var = repetitions > 1 ? var / static_cast<double>(repetitions - 1) : 0.0;
        summary.mean_excess = mean;
        summary.std_error = std::sqrt(var / static_cast<double>(repetitions));

        std::vector<double> sorted = summary.excess_risk;
        std::sort(sorted.begin(), sorted.end());
        auto quantile = [&](double q) {
            double pos = q * static_cast<double>(sorted.size() - 1);
            std::size_t lo = static_cast<std::size_t>(pos);
            std::size_t hi = std::min(lo + 1, sorted.size() - 1);
            double frac = pos - static_cast<double>(lo);
            return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
        };
        summary.q05 = quantile(0.05);
        summary.median = quantile(0.5);
        summary.q95 = quantile(0.95);
        out.push_back(std::move(summary));
    }
    return out;
}

}  // namespace netex
