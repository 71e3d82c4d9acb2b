#include "netex/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace netex {

TabulatedFunction::TabulatedFunction(std::vector<int> shape, std::vector<double> values)
    : shape_(std::move(shape)), values_(std::move(values)) {
    std::size_t cells = 1;
    for (int s : shape_) {
        if (s <= 0) throw Error(errc::shape_mismatch, "axis of size " + std::to_string(s));
        cells *= static_cast<std::size_t>(s);
        if (cells > kMaxTableCells) throw Error(errc::alphabet_too_large, "table exceeds cell cap");
    }
    if (values_.size() != cells) {
        throw Error(errc::shape_mismatch, "value count " + std::to_string(values_.size()) +
                                              " does not match shape (" + std::to_string(cells) + ")");
    }
    strides_.assign(shape_.size(), 1);
    for (int i = static_cast<int>(shape_.size()) - 2; i >= 0; --i) {
        strides_[static_cast<std::size_t>(i)] =
            strides_[static_cast<std::size_t>(i + 1)] *
            static_cast<std::size_t>(shape_[static_cast<std::size_t>(i + 1)]);
    }
}

TabulatedFunction TabulatedFunction::constant(std::vector<int> shape, double value) {
    std::size_t cells = 1;
    for (int s : shape) cells *= static_cast<std::size_t>(s);
    return TabulatedFunction(std::move(shape), std::vector<double>(cells, value));
}

std::size_t TabulatedFunction::flat_index(std::span<const int> idx) const {
    std::size_t flat = 0;
    for (std::size_t i = 0; i < shape_.size(); ++i) {
        flat += static_cast<std::size_t>(idx[i]) * strides_[i];
    }
    return flat;
}

bool next_index(std::span<int> idx, std::span<const int> shape) {
    for (int i = static_cast<int>(idx.size()) - 1; i >= 0; --i) {
        if (++idx[static_cast<std::size_t>(i)] < shape[static_cast<std::size_t>(i)]) return true;
        idx[static_cast<std::size_t>(i)] = 0;
    }
    return false;
}

std::vector<int> DiscreteKDist::shape() const {
    std::vector<int> s;
    s.reserve(marginals.size());
    for (const auto& m : marginals) s.push_back(static_cast<int>(m.size()));
    return s;
}

void DiscreteKDist::validate() const {
    for (std::size_t i = 0; i < marginals.size(); ++i) {
        const auto& m = marginals[i];
        if (m.empty()) throw Error(errc::shape_mismatch, "empty marginal " + std::to_string(i));
        double sum = 0.0;
        for (double p : m) {
            if (p < 0.0) throw Error(errc::bad_params, "negative probability in marginal " + std::to_string(i));
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-12) {
            throw Error(errc::bad_params, "marginal " + std::to_string(i) + " sums to " + std::to_string(sum));
        }
    }
}

double DiscreteKDist::cell_probability(std::span<const int> idx) const {
    double p = 1.0;
    for (std::size_t i = 0; i < marginals.size(); ++i) {
        p *= marginals[i][static_cast<std::size_t>(idx[i])];
    }
    return p;
}

double AnovaDecomposition::component_value(std::uint32_t mask, std::span<const int> full_idx) const {
    std::vector<int> sub;
    for (int i = 0; i < k; ++i) {
        if (mask & (1u << i)) sub.push_back(full_idx[static_cast<std::size_t>(i)]);
    }
    return components[mask](sub);
}

double AnovaDecomposition::recompose(std::span<const int> full_idx) const {
    double total = 0.0;
    for (std::uint32_t mask = 0; mask < components.size(); ++mask) {
        total += component_value(mask, full_idx);
    }
    return total;
}

namespace {

std::vector<int> mask_parts(std::uint32_t mask, int k) {
    std::vector<int> parts;
    for (int i = 0; i < k; ++i) {
        if (mask & (1u << i)) parts.push_back(i);
    }
    return parts;
}

}  // namespace

AnovaDecomposition anova_decompose(const TabulatedFunction& f, const DiscreteKDist& d) {
    d.validate();
    int k = d.parts();
    if (f.arity() != k) {
        throw Error(errc::shape_mismatch, "function arity " + std::to_string(f.arity()) +
                                              " != " + std::to_string(k) + " parts");
    }
    std::vector<int> shape = d.shape();
    if (f.shape() != shape) throw Error(errc::shape_mismatch, "table shape does not match alphabets");

    // Cell probabilities, precomputed once.
    std::vector<double> prob(f.size());
    std::vector<int> idx(static_cast<std::size_t>(k), 0);
    std::size_t flat = 0;
    do {
        prob[flat++] = d.cell_probability(idx);
    } while (next_index(idx, shape));

    AnovaDecomposition out;
    out.k = k;
    out.mean = 0.0;
    for (std::size_t c = 0; c < f.size(); ++c) out.mean += prob[c] * f.at_flat(c);

    std::vector<double> centered(f.size());
    for (std::size_t c = 0; c < f.size(); ++c) centered[c] = f.at_flat(c) - out.mean;
    out.total_variance = 0.0;
    for (std::size_t c = 0; c < f.size(); ++c) out.total_variance += prob[c] * centered[c] * centered[c];

    std::uint32_t num_masks = 1u << k;
    out.components.resize(num_masks);
    out.component_variance.assign(num_masks, 0.0);

    // Conditional expectation tables E[f | x^(S)], and the marginal weight of
    // each S-cell, accumulated in one sweep of the full space per subset.
    for (std::uint32_t mask = 0; mask < num_masks; ++mask) {
        std::vector<int> parts = mask_parts(mask, k);
        std::vector<int> sub_shape;
        sub_shape.reserve(parts.size());
        for (int p : parts) sub_shape.push_back(shape[static_cast<std::size_t>(p)]);

        std::size_t cells = 1;
        for (int s : sub_shape) cells *= static_cast<std::size_t>(s);
        std::vector<double> cond(cells, 0.0);
        std::vector<double> sub_prob(cells, 0.0);

        TabulatedFunction sub_table(sub_shape.empty() ? std::vector<int>{} : sub_shape,
                                    std::vector<double>(cells, 0.0));
        std::fill(idx.begin(), idx.end(), 0);
        flat = 0;
        std::vector<int> sub_idx(parts.size(), 0);
        do {
            for (std::size_t i = 0; i < parts.size(); ++i) {
                sub_idx[i] = idx[static_cast<std::size_t>(parts[i])];
            }
            std::size_t sflat = sub_table.flat_index(sub_idx);
            cond[sflat] += prob[flat] * centered[flat];
            sub_prob[sflat] += prob[flat];
            ++flat;
        } while (next_index(idx, shape));
        for (std::size_t c = 0; c < cells; ++c) {
            cond[c] = sub_prob[c] > 0.0 ? cond[c] / sub_prob[c] : 0.0;
        }

        // mu_S = E[f | x^(S)] - sum over proper subsets T of mu_T(x^(T)).
        TabulatedFunction mu(sub_shape.empty() ? std::vector<int>{} : sub_shape, std::move(cond));
        if (mask != 0) {
            std::fill(sub_idx.begin(), sub_idx.end(), 0);
            std::size_t sflat = 0;
            do {
                double correction = 0.0;
                for (std::uint32_t tmask = 0; tmask < mask; ++tmask) {
                    if ((tmask & mask) != tmask) continue;
                    // Project the S-index onto T's axes.
                    std::vector<int> t_idx;
                    for (std::size_t i = 0; i < parts.size(); ++i) {
                        if (tmask & (1u << parts[i])) t_idx.push_back(sub_idx[i]);
                    }
                    correction += out.components[tmask](t_idx);
                }
                mu.values()[sflat] -= correction;
                ++sflat;
            } while (next_index(sub_idx, sub_shape));
        } else {
            mu.values()[0] = 0.0;  // centered: E f = 0
        }

        double var = 0.0;
        for (std::size_t c = 0; c < cells; ++c) {
            var += sub_prob[c] * mu.at_flat(c) * mu.at_flat(c);
        }
        out.component_variance[mask] = var;
        out.components[mask] = std::move(mu);
    }
    return out;
}

std::vector<std::vector<double>> covariance_matrix(const Hypergraph& h,
                                                   const std::vector<double>& subset_variances) {
    SharedPartSets shared = shared_index_sets(h);
    std::uint32_t num_masks = 1u << shared.num_parts;
    if (subset_variances.size() != num_masks) {
        throw Error(errc::shape_mismatch, "need one variance per part subset");
    }
    // Subset-sum (zeta) transform: acc[m] = sum over T subseteq m of sigma_T^2,
    // with the empty set contributing nothing.
    std::vector<double> acc = subset_variances;
    acc[0] = 0.0;
    for (int l = 0; l < shared.num_parts; ++l) {
        for (std::uint32_t m = 0; m < num_masks; ++m) {
            if (m & (1u << l)) acc[m] += acc[m ^ (1u << l)];
        }
    }
    int n = h.num_edges();
    std::vector<std::vector<double>> sigma(static_cast<std::size_t>(n),
                                           std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            sigma[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = acc[shared.at(i, j)];
        }
    }
    return sigma;
}

double weighted_variance(const WeightVector& w, const std::vector<std::vector<double>>& sigma) {
    int n = w.size();
    if (static_cast<int>(sigma.size()) != n) {
        throw Error(errc::length_mismatch, "matrix size does not match weights");
    }
    double total = w.total();
    if (total <= 0.0) throw Error(errc::zero_weight, "weights sum to zero");
    double quad = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) {
            row += sigma[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                   w.weights[static_cast<std::size_t>(j)];
        }
        quad += w.weights[static_cast<std::size_t>(i)] * row;
    }
    return quad / (total * total);
}

}  // namespace netex
