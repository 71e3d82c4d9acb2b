#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "netex/error.hpp"
#include "netex/hypergraph.hpp"

namespace netex {

// Dense table of reals indexed by one symbol per axis, row-major with the
// last axis fastest.
class TabulatedFunction {
public:
    TabulatedFunction() = default;
    TabulatedFunction(std::vector<int> shape, std::vector<double> values);

    static TabulatedFunction constant(std::vector<int> shape, double value);

    int arity() const noexcept { return static_cast<int>(shape_.size()); }
    const std::vector<int>& shape() const noexcept { return shape_; }
    std::size_t size() const noexcept { return values_.size(); }
    const std::vector<double>& values() const noexcept { return values_; }
    std::vector<double>& values() noexcept { return values_; }

    std::size_t flat_index(std::span<const int> idx) const;
    double operator()(std::span<const int> idx) const { return values_[flat_index(idx)]; }
    double at_flat(std::size_t i) const { return values_[i]; }

private:
    std::vector<int> shape_;
    std::vector<std::size_t> strides_;
    std::vector<double> values_;
};

// Advances a mixed-radix index; returns false after the last combination.
bool next_index(std::span<int> idx, std::span<const int> shape);

// Independent per-part marginals over finite alphabets.
struct DiscreteKDist {
    std::vector<std::vector<double>> marginals;

    int parts() const noexcept { return static_cast<int>(marginals.size()); }
    int alphabet(int i) const { return static_cast<int>(marginals[static_cast<std::size_t>(i)].size()); }
    std::vector<int> shape() const;
    void validate() const;  // each vector sums to 1 within 1e-12, entries >= 0
    double cell_probability(std::span<const int> idx) const;
};

// Orthogonal decomposition of a centered k-part function into components
// indexed by subsets of parts (bitmask order), each zero-mean in every one of
// its own coordinates. components[mask] is defined over the axes named by the
// mask, ascending.
struct AnovaDecomposition {
    int k = 0;
    double mean = 0.0;            // subtracted before decomposing
    double total_variance = 0.0;  // variance of the centered function
    std::vector<TabulatedFunction> components;
    std::vector<double> component_variance;

    // mu_S evaluated at the projection of a full index.
    double component_value(std::uint32_t mask, std::span<const int> full_idx) const;
    // sum over all S of mu_S(x^(S)); equals the centered function pointwise.
    double recompose(std::span<const int> full_idx) const;
};

inline constexpr std::size_t kMaxTableCells = 10'000'000;

AnovaDecomposition anova_decompose(const TabulatedFunction& f, const DiscreteKDist& d);

// Pairwise covariances of the per-edge function values of a k-partite
// hypergraph: entry (i,j) sums sigma_T^2 over the subsets T of the parts in
// which edges i and j share a vertex. subset_variances is indexed by part
// bitmask (the empty set's entry is ignored; a centered function has none).
std::vector<std::vector<double>> covariance_matrix(const Hypergraph& h,
                                                   const std::vector<double>& subset_variances);

// w^T Sigma w / |w|^2.
double weighted_variance(const WeightVector& w, const std::vector<std::vector<double>>& sigma);

}  // namespace netex
