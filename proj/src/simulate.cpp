#include "netex/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "netex/weighting.hpp"

namespace netex {

void validate_spec(const Hypergraph& h, const ResponseSpec& spec) {
    for (const auto& m : spec.marginals) {
        if (m.empty()) throw Error(errc::spec_mismatch, "empty marginal");
    }
    if (spec.noise_half_width < 0.0) throw Error(errc::spec_mismatch, "negative noise bound");
    int arity = spec.response.arity();
    if (h.is_partite()) {
        int k = h.num_parts();
        if (arity != k) {
            throw Error(errc::spec_mismatch, "response arity " + std::to_string(arity) +
                                                 " != " + std::to_string(k) + " parts");
        }
        if (spec.marginals.size() != 1 && static_cast<int>(spec.marginals.size()) != k) {
            throw Error(errc::spec_mismatch, "need 1 or k marginals");
        }
        for (int l = 0; l < k; ++l) {
            if (spec.response.shape()[static_cast<std::size_t>(l)] !=
                static_cast<int>(spec.marginal_for(l).size())) {
                throw Error(errc::spec_mismatch, "alphabet mismatch on part " + std::to_string(l));
            }
        }
    } else {
        if (spec.marginals.size() != 1) {
            throw Error(errc::spec_mismatch, "non-partite hypergraphs use one shared marginal");
        }
        for (const Edge& e : h.edges()) {
            if (static_cast<int>(e.size()) != arity) {
                throw Error(errc::spec_mismatch, "edge size " + std::to_string(e.size()) +
                                                     " != response arity " + std::to_string(arity));
            }
        }
        for (int a = 0; a < arity; ++a) {
            if (spec.response.shape()[static_cast<std::size_t>(a)] !=
                static_cast<int>(spec.marginals[0].size())) {
                throw Error(errc::spec_mismatch, "alphabet mismatch on axis " + std::to_string(a));
            }
        }
    }
}

std::vector<int> edge_feature_tuple(const Hypergraph& h, const std::vector<int>& features, int edge) {
    const Edge& e = h.edge(edge);
    std::vector<int> tuple(e.size(), 0);
    if (h.is_partite()) {
        const auto& part = *h.partition();
        for (int v : e) {
            tuple[static_cast<std::size_t>(part[static_cast<std::size_t>(v)])] =
                features[static_cast<std::size_t>(v)];
        }
    } else {
        for (std::size_t i = 0; i < e.size(); ++i) {
            tuple[i] = features[static_cast<std::size_t>(e[i])];
        }
    }
    return tuple;
}

namespace {

// One sampling pass into preallocated buffers; the RNG consumes one draw per
// vertex plus one per edge when noise is enabled.
void draw_into(const Hypergraph& h, const ResponseSpec& spec, Rng& rng, std::vector<int>& features,
               std::vector<double>& values, std::vector<int>& scratch) {
    const bool partite = h.is_partite();
    const auto* part = partite ? &*h.partition() : nullptr;
    for (int v = 0; v < h.num_vertices(); ++v) {
        const auto& m = partite ? spec.marginal_for((*part)[static_cast<std::size_t>(v)])
                                : spec.marginals[0];
        features[static_cast<std::size_t>(v)] = rng.discrete(m);
    }
    for (int i = 0; i < h.num_edges(); ++i) {
        const Edge& e = h.edge(i);
        scratch.resize(e.size());
        if (partite) {
            for (int v : e) {
                scratch[static_cast<std::size_t>((*part)[static_cast<std::size_t>(v)])] =
                    features[static_cast<std::size_t>(v)];
            }
        } else {
            for (std::size_t j = 0; j < e.size(); ++j) {
                scratch[j] = features[static_cast<std::size_t>(e[j])];
            }
        }
        double y = spec.response(scratch);
        if (spec.noise_half_width > 0.0) y += rng.uniform_symmetric(spec.noise_half_width);
        values[static_cast<std::size_t>(i)] = y;
    }
}

}  // namespace

NetworkedSample draw_sample(const Hypergraph& h, const ResponseSpec& spec, std::uint64_t seed) {
    validate_spec(h, spec);
    NetworkedSample s;
    s.features.assign(static_cast<std::size_t>(h.num_vertices()), 0);
    s.edge_values.assign(static_cast<std::size_t>(h.num_edges()), 0.0);
    Rng rng(seed);
    std::vector<int> scratch;
    draw_into(h, spec, rng, s.features, s.edge_values, scratch);
    return s;
}

double response_mean(const ResponseSpec& spec) {
    const auto& shape = spec.response.shape();
    std::vector<int> idx(shape.size(), 0);
    double mean = 0.0;
    std::size_t flat = 0;
    do {
        double p = 1.0;
        for (std::size_t i = 0; i < shape.size(); ++i) {
            p *= spec.marginal_for(static_cast<int>(i))[static_cast<std::size_t>(idx[i])];
        }
        mean += p * spec.response.at_flat(flat++);
    } while (next_index(idx, shape));
    return mean;
}

double response_variance(const ResponseSpec& spec) {
    double mean = response_mean(spec);
    const auto& shape = spec.response.shape();
    std::vector<int> idx(shape.size(), 0);
    double var = 0.0;
    std::size_t flat = 0;
    do {
        double p = 1.0;
        for (std::size_t i = 0; i < shape.size(); ++i) {
            p *= spec.marginal_for(static_cast<int>(i))[static_cast<std::size_t>(idx[i])];
        }
        double dev = spec.response.at_flat(flat++) - mean;
        var += p * dev * dev;
    } while (next_index(idx, shape));
    return var + spec.noise_half_width * spec.noise_half_width / 3.0;
}

double response_deviation_bound(const ResponseSpec& spec) {
    double mean = response_mean(spec);
    double worst = 0.0;
    for (double v : spec.response.values()) worst = std::max(worst, std::abs(v - mean));
    return worst + spec.noise_half_width;
}

std::vector<TailEstimate> estimate_tail_grid(const Hypergraph& h, const ResponseSpec& spec,
                                             const WeightVector& w,
                                             const std::vector<double>& epsilons, long trials,
                                             std::uint64_t seed) {
    validate_spec(h, spec);
    if (w.size() != h.num_edges()) throw Error(errc::length_mismatch, "one weight per edge required");
    if (trials < 1) throw Error(errc::bad_params, "trials must be >= 1");
    double total = w.total();
    if (total <= 0.0) throw Error(errc::zero_weight, "weights sum to zero");
    double mu = response_mean(spec);

    std::vector<long> hits(epsilons.size(), 0);
    std::vector<int> features(static_cast<std::size_t>(h.num_vertices()), 0);
    std::vector<double> values(static_cast<std::size_t>(h.num_edges()), 0.0);
    std::vector<int> scratch;
    for (long t = 0; t < trials; ++t) {
        Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(t)));
        draw_into(h, spec, rng, features, values, scratch);
        double acc = 0.0;
        for (int i = 0; i < h.num_edges(); ++i) {
            acc += w.weights[static_cast<std::size_t>(i)] * values[static_cast<std::size_t>(i)];
        }
        double dev = acc / total - mu;
        for (std::size_t k = 0; k < epsilons.size(); ++k) {
            if (dev >= epsilons[k] - 1e-12) ++hits[k];
        }
    }
    std::vector<TailEstimate> out(epsilons.size());
    for (std::size_t k = 0; k < epsilons.size(); ++k) {
        double p = static_cast<double>(hits[k]) / static_cast<double>(trials);
        out[k] = TailEstimate{epsilons[k], trials, hits[k], p,
                              std::sqrt(p * (1.0 - p) / static_cast<double>(trials))};
    }
    return out;
}

TailEstimate estimate_tail(const Hypergraph& h, const ResponseSpec& spec, const WeightVector& w,
                           double epsilon, long trials, std::uint64_t seed) {
    return estimate_tail_grid(h, spec, w, {epsilon}, trials, seed)[0];
}

VarianceEstimate estimate_variance(const Hypergraph& h, const ResponseSpec& spec,
                                   const WeightVector& w, long trials, std::uint64_t seed) {
    validate_spec(h, spec);
    if (w.size() != h.num_edges()) throw Error(errc::length_mismatch, "one weight per edge required");
    if (trials < 2) throw Error(errc::bad_params, "trials must be >= 2");
    double total = w.total();
    if (total <= 0.0) throw Error(errc::zero_weight, "weights sum to zero");

    // Two passes over the same deterministic streams: mean, then central
    // moments (numerically safer than raw-moment accumulation).
    std::vector<int> features(static_cast<std::size_t>(h.num_vertices()), 0);
    std::vector<double> values(static_cast<std::size_t>(h.num_edges()), 0.0);
    std::vector<int> scratch;
    auto weighted_average = [&](long t) {
        Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(t)));
        draw_into(h, spec, rng, features, values, scratch);
        double acc = 0.0;
        for (int i = 0; i < h.num_edges(); ++i) {
            acc += w.weights[static_cast<std::size_t>(i)] * values[static_cast<std::size_t>(i)];
        }
        return acc / total;
    };

    double mean = 0.0;
    for (long t = 0; t < trials; ++t) mean += weighted_average(t);
    mean /= static_cast<double>(trials);

    double m2 = 0.0;
    double m4 = 0.0;
    for (long t = 0; t < trials; ++t) {
        double d = weighted_average(t) - mean;
        double d2 = d * d;
        m2 += d2;
        m4 += d2 * d2;
    }
    double n = static_cast<double>(trials);
    double variance = m2 / (n - 1.0);
    m2 /= n;
    m4 /= n;
    double se = std::sqrt(std::max(m4 - m2 * m2, 0.0) / n);
    return VarianceEstimate{variance, se, trials};
}

MgfCheck check_mgf(const Hypergraph& h, const ResponseSpec& spec, const WeightVector& w,
                   long trials, std::uint64_t seed) {
    validate_spec(h, spec);
    if (trials < 2) throw Error(errc::bad_params, "trials must be >= 2");
    if (!is_feasible(h, w)) {
        throw Error(errc::infeasible_weights, "the inequality requires feasible weights");
    }
    int n = h.num_edges();

    long num_batches = std::min<long>(100, trials);
    std::vector<double> batch_lhs;
    std::vector<double> batch_rhs;
    batch_lhs.reserve(static_cast<std::size_t>(num_batches));
    batch_rhs.reserve(static_cast<std::size_t>(num_batches));

    std::vector<int> features(static_cast<std::size_t>(h.num_vertices()), 0);
    std::vector<double> values(static_cast<std::size_t>(h.num_edges()), 0.0);
    std::vector<int> scratch;
    std::vector<double> edge_mgf(static_cast<std::size_t>(n), 0.0);

    double lhs_total = 0.0;
    std::vector<double> edge_mgf_total(static_cast<std::size_t>(n), 0.0);

    long done = 0;
    for (long b = 0; b < num_batches; ++b) {
        long batch_end = trials * (b + 1) / num_batches;
        long batch_n = batch_end - done;
        double lhs_acc = 0.0;
        std::fill(edge_mgf.begin(), edge_mgf.end(), 0.0);
        for (long t = done; t < batch_end; ++t) {
            Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(t)));
            draw_into(h, spec, rng, features, values, scratch);
            double acc = 0.0;
            for (int i = 0; i < n; ++i) {
                double x = values[static_cast<std::size_t>(i)];
                acc += w.weights[static_cast<std::size_t>(i)] * x;
                edge_mgf[static_cast<std::size_t>(i)] += std::exp(x);
            }
            lhs_acc += std::exp(acc);
        }
        done = batch_end;
        lhs_total += lhs_acc;
        double log_rhs = 0.0;
        for (int i = 0; i < n; ++i) {
            edge_mgf_total[static_cast<std::size_t>(i)] += edge_mgf[static_cast<std::size_t>(i)];
            log_rhs += w.weights[static_cast<std::size_t>(i)] *
                       std::log(edge_mgf[static_cast<std::size_t>(i)] / static_cast<double>(batch_n));
        }
        batch_lhs.push_back(lhs_acc / static_cast<double>(batch_n));
        batch_rhs.push_back(std::exp(log_rhs));
    }

    MgfCheck out;
    out.lhs = lhs_total / static_cast<double>(trials);
    double log_rhs = 0.0;
    for (int i = 0; i < n; ++i) {
        log_rhs += w.weights[static_cast<std::size_t>(i)] *
                   std::log(edge_mgf_total[static_cast<std::size_t>(i)] / static_cast<double>(trials));
    }
    out.rhs = std::exp(log_rhs);

    auto batch_se = [&](const std::vector<double>& vals, double center) {
        double acc = 0.0;
        for (double v : vals) acc += (v - center) * (v - center);
        double nb = static_cast<double>(vals.size());
        return std::sqrt(acc / (nb - 1.0) / nb);
    };
    double lhs_mean = 0.0;
    double rhs_mean = 0.0;
    for (double v : batch_lhs) lhs_mean += v;
    for (double v : batch_rhs) rhs_mean += v;
    lhs_mean /= static_cast<double>(batch_lhs.size());
    rhs_mean /= static_cast<double>(batch_rhs.size());
    out.lhs_se = batch_se(batch_lhs, lhs_mean);
    out.rhs_se = batch_se(batch_rhs, rhs_mean);
    return out;
}

SValueVarianceReport svalue_variance_check(const Hypergraph& h, const ResponseSpec& spec,
                                           long trials, std::uint64_t seed) {
    SValueVarianceReport report;
    SValueResult sv = s_value(h);
    report.s = sv.s;
    report.sigma2 = response_variance(spec);
    report.bound = report.sigma2 / sv.s;
    report.svalue = estimate_variance(h, spec, sv.weights, trials, seed);
    report.eqw = estimate_variance(h, spec, eqw_weights(h), trials, seed);
    return report;
}

ResponseSpec rademacher_product_spec(int arity, double noise_half_width) {
    std::vector<int> shape(static_cast<std::size_t>(arity), 2);
    std::size_t cells = std::size_t{1} << arity;
    std::vector<double> values(cells, 0.0);
    std::vector<int> idx(static_cast<std::size_t>(arity), 0);
    std::size_t flat = 0;
    do {
        double v = 1.0;
        for (int a = 0; a < arity; ++a) v *= (idx[static_cast<std::size_t>(a)] == 0 ? -1.0 : 1.0);
        values[flat++] = v;
    } while (next_index(idx, shape));
    ResponseSpec spec;
    spec.marginals = {{0.5, 0.5}};
    spec.response = TabulatedFunction(std::move(shape), std::move(values));
    spec.noise_half_width = noise_half_width;
    return spec;
}

ResponseSpec first_feature_spec(int arity, double noise_half_width) {
    return part_feature_spec(arity, 0, noise_half_width);
}

ResponseSpec part_feature_spec(int k, int part, double noise_half_width) {
    std::vector<int> shape(static_cast<std::size_t>(k), 2);
    std::size_t cells = std::size_t{1} << k;
    std::vector<double> values(cells, 0.0);
    std::vector<int> idx(static_cast<std::size_t>(k), 0);
    std::size_t flat = 0;
    do {
        values[flat++] = idx[static_cast<std::size_t>(part)] == 0 ? -1.0 : 1.0;
    } while (next_index(idx, shape));
    ResponseSpec spec;
    spec.marginals = {{0.5, 0.5}};
    spec.response = TabulatedFunction(std::move(shape), std::move(values));
    spec.noise_half_width = noise_half_width;
    return spec;
}

}  // namespace netex
