#include "netex/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace netex {

LpProblem s_value_lp(const Hypergraph& h) {
    LpProblem p;
    int n = h.num_edges();
    p.objective.assign(static_cast<std::size_t>(n), 1.0);

    auto deg = h.degrees();
    // Vertex rows for degree >= 2 vertices. A degree-1 vertex of edge e only
    // states w_e <= 1, which any other row containing e implies.
    for (int v = 0; v < h.num_vertices(); ++v) {
        if (deg[static_cast<std::size_t>(v)] < 2) continue;
        std::vector<double> r(static_cast<std::size_t>(n), 0.0);
        for (int i = 0; i < n; ++i) {
            for (int u : h.edge(i)) {
                if (u == v) r[static_cast<std::size_t>(i)] = 1.0;
            }
        }
        p.constraint_rows.push_back(std::move(r));
        p.constraint_rhs.push_back(1.0);
    }
    // Edges whose vertices are all degree <= 1 still need w_e <= 1.
    for (int i = 0; i < n; ++i) {
        bool covered = std::any_of(h.edge(i).begin(), h.edge(i).end(), [&](int v) {
            return deg[static_cast<std::size_t>(v)] >= 2;
        });
        if (covered) continue;
        std::vector<double> r(static_cast<std::size_t>(n), 0.0);
        r[static_cast<std::size_t>(i)] = 1.0;
        p.constraint_rows.push_back(std::move(r));
        p.constraint_rhs.push_back(1.0);
    }
    return p;
}

SValueResult s_value(const Hypergraph& h) {
    if (h.num_edges() == 0) return SValueResult{0.0, WeightVector{}};
    LpSolution sol = solve_lp(s_value_lp(h));

    WeightVector w{std::move(sol.solution)};
    for (double& wi : w.weights) {
        if (wi < 0.0) wi = 0.0;
    }
    // Rescale away any accumulated round-off so the vector is feasible at
    // tolerance zero; the change to the total is of the same round-off order.
    std::vector<double> load(static_cast<std::size_t>(h.num_vertices()), 0.0);
    for (int i = 0; i < h.num_edges(); ++i) {
        for (int v : h.edge(i)) load[static_cast<std::size_t>(v)] += w.weights[static_cast<std::size_t>(i)];
    }
    double max_load = load.empty() ? 0.0 : *std::max_element(load.begin(), load.end());
    if (max_load > 1.0) {
        for (double& wi : w.weights) wi /= max_load;
    }
    for (double& wi : w.weights) {
        if (wi > 1.0) wi = 1.0;
    }
    return SValueResult{w.total(), std::move(w)};
}

WeightVector eqw_weights(const Hypergraph& h) {
    int omega = max_degree(h);
    WeightVector w;
    w.weights.assign(static_cast<std::size_t>(h.num_edges()),
                     omega > 0 ? 1.0 / static_cast<double>(omega) : 0.0);
    return w;
}

WeightVector ind_weights(const Hypergraph& h) {
    WeightVector w;
    w.weights.assign(static_cast<std::size_t>(h.num_edges()), 0.0);
    for (int i : greedy_matching(h)) w.weights[static_cast<std::size_t>(i)] = 1.0;
    return w;
}

std::vector<double> MinimaxWeights::scaled() const {
    std::vector<double> out = normalized;
    for (double& x : out) x /= worst_variance;
    return out;
}

std::vector<double> project_to_simplex(std::vector<double> v) {
    // Sort-based projection: find the threshold tau with
    // sum max(v_i - tau, 0) = 1.
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<>());
    double acc = 0.0;
    double tau = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        acc += u[i];
        double t = (acc - 1.0) / static_cast<double>(i + 1);
        if (u[i] - t > 0.0) tau = t;
    }
    for (double& x : v) x = std::max(x - tau, 0.0);
    return v;
}

namespace {

// Per part l, the incidence of edges on the part-l vertices, so that
// w^T D_l w = sum over part-l vertices of (sum of incident weights)^2.
struct PartStructure {
    int num_edges;
    int num_parts;
    // groups[l] = list of edge-index groups, one group per part-l vertex with
    // degree >= 1; edges in one group share that vertex.
    std::vector<std::vector<std::vector<int>>> groups;
};

PartStructure build_part_structure(const Hypergraph& h) {
    if (!h.is_partite()) throw Error(errc::not_k_partite, "minimax weights need a partition");
    PartStructure ps;
    ps.num_edges = h.num_edges();
    ps.num_parts = h.num_parts();
    const auto& part = *h.partition();
    std::vector<std::vector<int>> by_vertex(static_cast<std::size_t>(h.num_vertices()));
    for (int i = 0; i < h.num_edges(); ++i) {
        for (int v : h.edge(i)) by_vertex[static_cast<std::size_t>(v)].push_back(i);
    }
    ps.groups.resize(static_cast<std::size_t>(ps.num_parts));
    for (int v = 0; v < h.num_vertices(); ++v) {
        if (by_vertex[static_cast<std::size_t>(v)].empty()) continue;
        ps.groups[static_cast<std::size_t>(part[static_cast<std::size_t>(v)])].push_back(
            by_vertex[static_cast<std::size_t>(v)]);
    }
    return ps;
}

double part_quadratic(const PartStructure& ps, int l, const std::vector<double>& w) {
    double total = 0.0;
    for (const auto& group : ps.groups[static_cast<std::size_t>(l)]) {
        double s = 0.0;
        for (int i : group) s += w[static_cast<std::size_t>(i)];
        total += s * s;
    }
    return total;
}

}  // namespace

double minimax_objective(const Hypergraph& h, const std::vector<double>& w) {
    PartStructure ps = build_part_structure(h);
    double worst = 0.0;
    for (int l = 0; l < ps.num_parts; ++l) worst = std::max(worst, part_quadratic(ps, l, w));
    return worst;
}

MinimaxWeights minimax_variance_weights(const Hypergraph& h, const MinimaxOptions& opts) {
    PartStructure ps = build_part_structure(h);
    int n = ps.num_edges;
    if (n == 0) throw Error(errc::bad_params, "no edges");

    std::vector<double> w(static_cast<std::size_t>(n), 1.0 / static_cast<double>(n));
    std::vector<double> grad(static_cast<std::size_t>(n));
    std::vector<double> best_w = w;
    double best_val = 0.0;
    {
        double worst = 0.0;
        for (int l = 0; l < ps.num_parts; ++l) worst = std::max(worst, part_quadratic(ps, l, w));
        best_val = worst;
    }

    double last_best = best_val;
    int since_check = 0;
    for (int iter = 1; iter <= opts.max_iterations; ++iter) {
        double worst = -1.0;
        int worst_l = 0;
        for (int l = 0; l < ps.num_parts; ++l) {
            double q = part_quadratic(ps, l, w);
            if (q > worst) {
                worst = q;
                worst_l = l;
            }
        }
        if (worst < best_val) {
            best_val = worst;
            best_w = w;
        }

        // Subgradient of w^T D_l w at the active part: 2 * (per-group sums).
        std::fill(grad.begin(), grad.end(), 0.0);
        for (const auto& group : ps.groups[static_cast<std::size_t>(worst_l)]) {
            double s = 0.0;
            for (int i : group) s += w[static_cast<std::size_t>(i)];
            for (int i : group) grad[static_cast<std::size_t>(i)] += 2.0 * s;
        }
        double step = opts.step_scale / std::sqrt(static_cast<double>(iter));
        for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] -= step * grad[static_cast<std::size_t>(i)];
        w = project_to_simplex(std::move(w));

        if (++since_check >= 500) {
            if (last_best - best_val < opts.improvement_tol) break;
            last_best = best_val;
            since_check = 0;
        }
    }
    return MinimaxWeights{std::move(best_w), best_val};
}

MinimaxWeights minimax_oracle(const Hypergraph& h, double resolution) {
    PartStructure ps = build_part_structure(h);
    int n = ps.num_edges;
    if (n > 4) throw Error(errc::too_large, "oracle limited to 4 edges");
    if (resolution <= 0.0 || resolution > 1.0) throw Error(errc::bad_params, "bad resolution");
    int q = std::max(1, static_cast<int>(std::lround(1.0 / resolution)));

    std::vector<double> w(static_cast<std::size_t>(n), 0.0);
    std::vector<double> best_w = w;
    double best_val = std::numeric_limits<double>::infinity();
    // Integer compositions of q into n parts.
    std::vector<int> comp(static_cast<std::size_t>(n), 0);
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == n - 1) {
            comp[static_cast<std::size_t>(pos)] = remaining;
            for (int i = 0; i < n; ++i) {
                w[static_cast<std::size_t>(i)] =
                    static_cast<double>(comp[static_cast<std::size_t>(i)]) / static_cast<double>(q);
            }
            double worst = 0.0;
            for (int l = 0; l < ps.num_parts; ++l) worst = std::max(worst, part_quadratic(ps, l, w));
            if (worst < best_val) {
                best_val = worst;
                best_w = w;
            }
            return;
        }
        for (int c = 0; c <= remaining; ++c) {
            comp[static_cast<std::size_t>(pos)] = c;
            self(self, pos + 1, remaining - c);
        }
    };
    rec(rec, 0, q);
    return MinimaxWeights{std::move(best_w), best_val};
}

}  // namespace netex
