#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netex/error.hpp"

namespace netex {

// A hyperedge is a sorted list of distinct vertex ids.
using Edge = std::vector<int>;

// Dependency structure over examples: vertices are shared objects, hyperedges
// are examples. Immutable after construction. Repeated hyperedges are allowed
// and kept as distinct entries; empty hyperedges are rejected (they would make
// the fractional-matching program unbounded).
class Hypergraph {
public:
    Hypergraph(int num_vertices, std::vector<Edge> edges,
               std::optional<std::vector<int>> partition = std::nullopt);

    int num_vertices() const noexcept { return num_vertices_; }
    int num_edges() const noexcept { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const Edge& edge(int i) const { return edges_.at(static_cast<std::size_t>(i)); }

    bool is_partite() const noexcept { return partition_.has_value(); }
    // Part index per vertex; present only for k-partite hypergraphs.
    const std::optional<std::vector<int>>& partition() const noexcept { return partition_; }
    // Number of parts k (0 when no partition is set).
    int num_parts() const noexcept { return num_parts_; }

    // Incident-edge count per vertex.
    std::vector<int> degrees() const;

private:
    int num_vertices_ = 0;
    std::vector<Edge> edges_;
    std::optional<std::vector<int>> partition_;
    int num_parts_ = 0;
};

// Nonnegative per-edge weights. `total()` is |w|, the quantity the
// concentration bounds are parameterized by.
struct WeightVector {
    std::vector<double> weights;

    double total() const;
    int size() const noexcept { return static_cast<int>(weights.size()); }
};

inline constexpr double kFeasibilityTol = 1e-9;

// Maximum vertex degree omega(H): the largest number of hyperedges sharing a
// single vertex. Zero for an edgeless hypergraph.
int max_degree(const Hypergraph& h);

// True iff all weights are >= -tol and, for every vertex, the incident weight
// sum is <= 1 + tol.
bool is_feasible(const Hypergraph& h, const WeightVector& w, double tol = kFeasibilityTol);

// Maximal set of pairwise vertex-disjoint edges, built by scanning edges in
// ascending index order.
std::vector<int> greedy_matching(const Hypergraph& h);

// Exact maximum matching by branch and bound. Intended as a small-instance
// oracle; throws errc::too_large above `max_edges` edges.
std::vector<int> exact_matching(const Hypergraph& h, int max_edges = 20);

// Pairwise shared-part sets for a k-partite hypergraph. masks[i*n+j] has bit
// l set iff edges i and j share the vertex in part l; the diagonal is the
// full set of parts.
struct SharedPartSets {
    int num_edges = 0;
    int num_parts = 0;
    std::vector<std::uint32_t> masks;

    std::uint32_t at(int i, int j) const {
        return masks[static_cast<std::size_t>(i) * static_cast<std::size_t>(num_edges) +
                     static_cast<std::size_t>(j)];
    }
};

SharedPartSets shared_index_sets(const Hypergraph& h);

// ---- Generators ------------------------------------------------------------
// All generators are pure functions of their parameters (and seed); the same
// inputs always produce the same edge list.

// Star: n edges {0, i} through the shared vertex 0.
Hypergraph gen_star(int n);

// n pairwise disjoint edges {2i, 2i+1}.
Hypergraph gen_disjoint(int n);

// The 3-cycle {0,1},{1,2},{0,2}.
Hypergraph gen_triangle();

// Bipartite preferential-attachment graph with |V1| = |V2| = N, starting from
// the complete bipartite K_{m,m}. Each growth step adds one vertex per side
// with m edges to the opposite side, chosen without replacement with
// probability proportional to the current opposite-side degree. Part 0 is
// vertices [0, N), part 1 is [N, 2N).
Hypergraph gen_bipartite_ba(int N, int m, std::uint64_t seed);

// Bipartite Erdos-Renyi graph: each of the N^2 cross pairs is an edge
// independently with probability p. Parts as in gen_bipartite_ba.
Hypergraph gen_bipartite_er(int N, double p, std::uint64_t seed);

// One hyperedge per ordered r-tuple of distinct vertices from [0, n); the
// edge keeps only the underlying vertex set, so each r-subset appears r!
// times. n^(r) = n(n-1)...(n-r+1) edges in total.
Hypergraph gen_u_statistic(int n, int r);

// Disjoint union: vertices of `b` are shifted past those of `a`. Partitions
// are preserved when both sides carry one with the same part count.
Hypergraph disjoint_union(const Hypergraph& a, const Hypergraph& b);

// ---- JSON interchange ------------------------------------------------------
// {"num_vertices": int, "edges": [[int,...],...], "partition": [int,...] | null}

std::string to_json(const Hypergraph& h);
Hypergraph hypergraph_from_json(const std::string& text);
Hypergraph load_hypergraph(const std::string& path);
void save_hypergraph(const Hypergraph& h, const std::string& path);

}  // namespace netex
