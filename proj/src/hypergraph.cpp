#include "netex/hypergraph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "netex/rng.hpp"

namespace netex {

namespace {

void validate_partition_edge(const Edge& e, const std::vector<int>& part, int k, int edge_index) {
    std::vector<int> seen(static_cast<std::size_t>(k), 0);
    for (int v : e) ++seen[static_cast<std::size_t>(part[static_cast<std::size_t>(v)])];
    for (int l = 0; l < k; ++l) {
        if (seen[static_cast<std::size_t>(l)] != 1) {
            throw Error(errc::not_k_partite,
                        "edge " + std::to_string(edge_index) + " meets part " +
                            std::to_string(l) + " " + std::to_string(seen[static_cast<std::size_t>(l)]) +
                            " times");
        }
    }
}

}  // namespace

Hypergraph::Hypergraph(int num_vertices, std::vector<Edge> edges,
                       std::optional<std::vector<int>> partition)
    : num_vertices_(num_vertices), edges_(std::move(edges)), partition_(std::move(partition)) {
    if (num_vertices_ < 0) throw Error(errc::bad_params, "negative vertex count");
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        Edge& e = edges_[i];
        if (e.empty()) throw Error(errc::empty_edge, "edge " + std::to_string(i) + " is empty");
        std::sort(e.begin(), e.end());
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (e[j] < 0 || e[j] >= num_vertices_) {
                throw Error(errc::out_of_range_vertex,
                            "edge " + std::to_string(i) + " contains vertex " + std::to_string(e[j]));
            }
            if (j > 0 && e[j] == e[j - 1]) {
                throw Error(errc::out_of_range_vertex,
                            "edge " + std::to_string(i) + " repeats vertex " + std::to_string(e[j]));
            }
        }
    }
    if (partition_) {
        if (static_cast<int>(partition_->size()) != num_vertices_) {
            throw Error(errc::not_k_partite, "partition length differs from vertex count");
        }
        int k = 0;
        for (int p : *partition_) {
            if (p < 0) throw Error(errc::not_k_partite, "negative part index");
            k = std::max(k, p + 1);
        }
        num_parts_ = k;
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            validate_partition_edge(edges_[i], *partition_, k, static_cast<int>(i));
        }
    }
}

std::vector<int> Hypergraph::degrees() const {
    std::vector<int> deg(static_cast<std::size_t>(num_vertices_), 0);
    for (const Edge& e : edges_) {
        for (int v : e) ++deg[static_cast<std::size_t>(v)];
    }
    return deg;
}

double WeightVector::total() const {
    return std::accumulate(weights.begin(), weights.end(), 0.0);
}

int max_degree(const Hypergraph& h) {
    auto deg = h.degrees();
    return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

bool is_feasible(const Hypergraph& h, const WeightVector& w, double tol) {
    if (w.size() != h.num_edges()) {
        throw Error(errc::length_mismatch, "weight count " + std::to_string(w.size()) +
                                               " != edge count " + std::to_string(h.num_edges()));
    }
    for (double wi : w.weights) {
        if (wi < -tol) return false;
    }
    std::vector<double> load(static_cast<std::size_t>(h.num_vertices()), 0.0);
    for (int i = 0; i < h.num_edges(); ++i) {
        for (int v : h.edge(i)) load[static_cast<std::size_t>(v)] += w.weights[static_cast<std::size_t>(i)];
    }
    for (double l : load) {
        if (l > 1.0 + tol) return false;
    }
    return true;
}

std::vector<int> greedy_matching(const Hypergraph& h) {
    std::vector<char> used(static_cast<std::size_t>(h.num_vertices()), 0);
    std::vector<int> chosen;
    for (int i = 0; i < h.num_edges(); ++i) {
        const Edge& e = h.edge(i);
        bool free = std::none_of(e.begin(), e.end(),
                                 [&](int v) { return used[static_cast<std::size_t>(v)]; });
        if (free) {
            chosen.push_back(i);
            for (int v : e) used[static_cast<std::size_t>(v)] = 1;
        }
    }
    return chosen;
}

namespace {

// Depth-first branch and bound over edges: at each level either skip edge i or
// take it if disjoint from the current pick. Prunes when even taking all
// remaining edges cannot beat the incumbent.
void bb_matching(const Hypergraph& h, int i, std::vector<char>& used, std::vector<int>& current,
                 std::vector<int>& best) {
    int n = h.num_edges();
    if (static_cast<int>(current.size()) + (n - i) <= static_cast<int>(best.size())) return;
    if (i == n) {
        if (current.size() > best.size()) best = current;
        return;
    }
    const Edge& e = h.edge(i);
    bool free = std::none_of(e.begin(), e.end(),
                             [&](int v) { return used[static_cast<std::size_t>(v)]; });
    if (free) {
        for (int v : e) used[static_cast<std::size_t>(v)] = 1;
        current.push_back(i);
        bb_matching(h, i + 1, used, current, best);
        current.pop_back();
        for (int v : e) used[static_cast<std::size_t>(v)] = 0;
    }
    bb_matching(h, i + 1, used, current, best);
    if (current.size() > best.size()) best = current;
}

}  // namespace

std::vector<int> exact_matching(const Hypergraph& h, int max_edges) {
    if (h.num_edges() > max_edges) {
        throw Error(errc::too_large, "exact matching limited to " + std::to_string(max_edges) +
                                         " edges, got " + std::to_string(h.num_edges()));
    }
    std::vector<char> used(static_cast<std::size_t>(h.num_vertices()), 0);
    std::vector<int> current;
    std::vector<int> best;
    bb_matching(h, 0, used, current, best);
    return best;
}

SharedPartSets shared_index_sets(const Hypergraph& h) {
    if (!h.is_partite()) throw Error(errc::not_k_partite, "shared_index_sets needs a partition");
    int n = h.num_edges();
    int k = h.num_parts();
    if (k > 31) throw Error(errc::too_large, "more than 31 parts");
    const auto& part = *h.partition();

    // Per edge, the vertex occupying each part.
    std::vector<std::vector<int>> slot(static_cast<std::size_t>(n),
                                       std::vector<int>(static_cast<std::size_t>(k), -1));
    for (int i = 0; i < n; ++i) {
        for (int v : h.edge(i)) slot[static_cast<std::size_t>(i)][static_cast<std::size_t>(part[static_cast<std::size_t>(v)])] = v;
    }

    SharedPartSets out;
    out.num_edges = n;
    out.num_parts = k;
    out.masks.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    std::uint32_t full = (k == 31) ? 0x7FFFFFFFu : ((1u << k) - 1u);
    for (int i = 0; i < n; ++i) {
        out.masks[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] = full;
        for (int j = i + 1; j < n; ++j) {
            std::uint32_t m = 0;
            for (int l = 0; l < k; ++l) {
                if (slot[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] ==
                    slot[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)]) {
                    m |= 1u << l;
                }
            }
            out.masks[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] = m;
            out.masks[static_cast<std::size_t>(j) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] = m;
        }
    }
    return out;
}

Hypergraph gen_star(int n) {
    if (n < 1) throw Error(errc::bad_params, "star needs n >= 1");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) edges.push_back({0, i});
    return Hypergraph(n + 1, std::move(edges));
}

Hypergraph gen_disjoint(int n) {
    if (n < 1) throw Error(errc::bad_params, "disjoint needs n >= 1");
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) edges.push_back({2 * i, 2 * i + 1});
    return Hypergraph(2 * n, std::move(edges));
}

Hypergraph gen_triangle() {
    return Hypergraph(3, {{0, 1}, {1, 2}, {0, 2}});
}

Hypergraph gen_bipartite_ba(int N, int m, std::uint64_t seed) {
    if (m < 1 || N < m) throw Error(errc::bad_params, "need N >= m >= 1");
    Rng rng(seed);
    // Side-local degrees; global ids are v for side 0 and N+v for side 1.
    std::vector<double> deg0(static_cast<std::size_t>(N), 0.0);
    std::vector<double> deg1(static_cast<std::size_t>(N), 0.0);
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(m) +
                  2u * static_cast<std::size_t>(m) * static_cast<std::size_t>(N - m));

    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            edges.push_back({i, N + j});
            deg0[static_cast<std::size_t>(i)] += 1.0;
            deg1[static_cast<std::size_t>(j)] += 1.0;
        }
    }

    // Pick m distinct targets among [0, active) with probability proportional
    // to degree, removing each chosen target from the pool.
    auto attach = [&](std::vector<double>& deg, int active, int picks, std::vector<int>& out) {
        out.clear();
        double total = 0.0;
        for (int v = 0; v < active; ++v) total += deg[static_cast<std::size_t>(v)];
        std::vector<char> taken(static_cast<std::size_t>(active), 0);
        for (int t = 0; t < picks; ++t) {
            double r = rng.uniform01() * total;
            double acc = 0.0;
            int pick = -1;
            for (int v = 0; v < active; ++v) {
                if (taken[static_cast<std::size_t>(v)]) continue;
                acc += deg[static_cast<std::size_t>(v)];
                if (r < acc) {
                    pick = v;
                    break;
                }
            }
            if (pick < 0) {  // numerical tail: take the last free vertex
                for (int v = active - 1; v >= 0; --v) {
                    if (!taken[static_cast<std::size_t>(v)]) {
                        pick = v;
                        break;
                    }
                }
            }
            taken[static_cast<std::size_t>(pick)] = 1;
            total -= deg[static_cast<std::size_t>(pick)];
            out.push_back(pick);
        }
    };

    std::vector<int> targets;
    for (int step = m; step < N; ++step) {
        // New side-0 vertex `step` attaches to side 1 (the step's new side-1
        // vertex is not yet a candidate), then the new side-1 vertex attaches
        // to side 0 including the vertex just added.
        attach(deg1, step, m, targets);
        for (int v : targets) {
            edges.push_back({step, N + v});
            deg1[static_cast<std::size_t>(v)] += 1.0;
        }
        deg0[static_cast<std::size_t>(step)] = static_cast<double>(m);

        attach(deg0, step + 1, m, targets);
        for (int v : targets) {
            edges.push_back({v, N + step});
            deg0[static_cast<std::size_t>(v)] += 1.0;
        }
        deg1[static_cast<std::size_t>(step)] = static_cast<double>(m);
    }

    std::vector<int> partition(static_cast<std::size_t>(2 * N), 0);
    for (int v = N; v < 2 * N; ++v) partition[static_cast<std::size_t>(v)] = 1;
    return Hypergraph(2 * N, std::move(edges), std::move(partition));
}

Hypergraph gen_bipartite_er(int N, double p, std::uint64_t seed) {
    if (N < 1 || p < 0.0 || p > 1.0) throw Error(errc::bad_params, "need N >= 1 and p in [0,1]");
    Rng rng(seed);
    std::vector<Edge> edges;
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            if (rng.uniform01() < p) edges.push_back({i, N + j});
        }
    }
    std::vector<int> partition(static_cast<std::size_t>(2 * N), 0);
    for (int v = N; v < 2 * N; ++v) partition[static_cast<std::size_t>(v)] = 1;
    return Hypergraph(2 * N, std::move(edges), std::move(partition));
}

Hypergraph gen_u_statistic(int n, int r) {
    if (r < 1 || n < r) throw Error(errc::bad_params, "need n >= r >= 1");
    std::vector<Edge> edges;
    std::vector<int> tuple(static_cast<std::size_t>(r), 0);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    // Enumerate ordered r-tuples of distinct vertices in lexicographic order.
    auto rec = [&](auto&& self, int depth) -> void {
        if (depth == r) {
            Edge e(tuple.begin(), tuple.end());
            edges.push_back(std::move(e));
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (used[static_cast<std::size_t>(v)]) continue;
            used[static_cast<std::size_t>(v)] = 1;
            tuple[static_cast<std::size_t>(depth)] = v;
            self(self, depth + 1);
            used[static_cast<std::size_t>(v)] = 0;
        }
    };
    rec(rec, 0);
    return Hypergraph(n, std::move(edges));
}

Hypergraph disjoint_union(const Hypergraph& a, const Hypergraph& b) {
    std::vector<Edge> edges = a.edges();
    int shift = a.num_vertices();
    for (const Edge& e : b.edges()) {
        Edge shifted;
        shifted.reserve(e.size());
        for (int v : e) shifted.push_back(v + shift);
        edges.push_back(std::move(shifted));
    }
    std::optional<std::vector<int>> partition;
    if (a.is_partite() && b.is_partite() && a.num_parts() == b.num_parts()) {
        partition = *a.partition();
        partition->insert(partition->end(), b.partition()->begin(), b.partition()->end());
    }
    return Hypergraph(a.num_vertices() + b.num_vertices(), std::move(edges), std::move(partition));
}

std::string to_json(const Hypergraph& h) {
    nlohmann::json j;
    j["num_vertices"] = h.num_vertices();
    j["edges"] = h.edges();
    if (h.is_partite()) {
        j["partition"] = *h.partition();
    } else {
        j["partition"] = nullptr;
    }
    return j.dump();
}

Hypergraph hypergraph_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(errc::parse_error, e.what());
    }
    try {
        int nv = j.at("num_vertices").get<int>();
        auto edges = j.at("edges").get<std::vector<Edge>>();
        std::optional<std::vector<int>> partition;
        if (j.contains("partition") && !j["partition"].is_null()) {
            partition = j["partition"].get<std::vector<int>>();
        }
        return Hypergraph(nv, std::move(edges), std::move(partition));
    } catch (const nlohmann::json::exception& e) {
        throw Error(errc::parse_error, e.what());
    }
}

Hypergraph load_hypergraph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(errc::io_error, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return hypergraph_from_json(ss.str());
}

void save_hypergraph(const Hypergraph& h, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(errc::io_error, "cannot open " + path);
    out << to_json(h) << "\n";
}

}  // namespace netex
