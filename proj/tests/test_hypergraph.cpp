#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "netex/hypergraph.hpp"
#include "netex/rng.hpp"

using namespace netex;

namespace {

Hypergraph random_hypergraph(std::uint64_t seed, int num_vertices, int num_edges, int arity) {
    Rng rng(seed);
    std::vector<Edge> edges;
    while (static_cast<int>(edges.size()) < num_edges) {
        std::set<int> picked;
        while (static_cast<int>(picked.size()) < arity) picked.insert(rng.uniform_int(num_vertices));
        edges.emplace_back(picked.begin(), picked.end());
    }
    return Hypergraph(num_vertices, std::move(edges));
}

}  // namespace

TEST_SUITE("hypergraph") {

TEST_CASE("construction and validation") {
    Hypergraph tri = gen_triangle();
    CHECK(tri.num_edges() == 3);
    CHECK(tri.num_vertices() == 3);

    Hypergraph pair(2, {{0, 1}}, std::vector<int>{0, 1});
    CHECK(pair.is_partite());
    CHECK(pair.num_parts() == 2);

    CHECK_THROWS_AS(Hypergraph(2, {{0, 0}}), Error);
    CHECK_THROWS_AS(Hypergraph(2, {{0, 5}}), Error);
    CHECK_THROWS_AS(Hypergraph(2, {{}}), Error);

    // An edge doubling up on one part is not k-partite.
    CHECK_THROWS_WITH_AS(Hypergraph(3, {{0, 1, 2}}, std::vector<int>{0, 0, 1}),
                         doctest::Contains("NotKPartite"), Error);
}

TEST_CASE("max_degree") {
    CHECK(max_degree(gen_star(5)) == 5);
    CHECK(max_degree(gen_triangle()) == 2);
    CHECK(max_degree(gen_u_statistic(4, 2)) == 6);
    CHECK(max_degree(Hypergraph(3, {})) == 0);
}

TEST_CASE("is_feasible") {
    Hypergraph tri = gen_triangle();
    CHECK(is_feasible(tri, WeightVector{{0.5, 0.5, 0.5}}));
    CHECK_FALSE(is_feasible(tri, WeightVector{{1.0, 1.0, 0.0}}));
    CHECK(is_feasible(gen_star(5), WeightVector{{0.2, 0.2, 0.2, 0.2, 0.2}}));
    CHECK_FALSE(is_feasible(tri, WeightVector{{0.5, -0.5, 0.5}}));
    CHECK_THROWS_AS(is_feasible(tri, WeightVector{{1.0}}), Error);
}

TEST_CASE("uniform 1/omega weights are feasible on any hypergraph") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        Hypergraph h = random_hypergraph(seed, 8, 10, 2 + static_cast<int>(seed % 2));
        double inv = 1.0 / max_degree(h);
        WeightVector w{std::vector<double>(static_cast<std::size_t>(h.num_edges()), inv)};
        CHECK(is_feasible(h, w, 1e-12));
    }
}

TEST_CASE("greedy_matching") {
    CHECK(greedy_matching(gen_disjoint(6)).size() == 6);
    auto star = greedy_matching(gen_star(5));
    REQUIRE(star.size() == 1);
    CHECK(star[0] == 0);
    auto tri = greedy_matching(gen_triangle());
    REQUIRE(tri.size() == 1);
    CHECK(tri[0] == 0);
    CHECK(exact_matching(gen_triangle()).size() == 1);
}

TEST_CASE("greedy matching is disjoint and maximal") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Hypergraph h = random_hypergraph(100 + seed, 10, 12, 3);
        auto picked = greedy_matching(h);
        std::vector<char> used(static_cast<std::size_t>(h.num_vertices()), 0);
        for (int i : picked) {
            for (int v : h.edge(i)) {
                CHECK_FALSE(used[static_cast<std::size_t>(v)]);
                used[static_cast<std::size_t>(v)] = 1;
            }
        }
        for (int i = 0; i < h.num_edges(); ++i) {
            bool free = std::none_of(h.edge(i).begin(), h.edge(i).end(),
                                     [&](int v) { return used[static_cast<std::size_t>(v)]; });
            CHECK_FALSE(free);
        }
        CHECK(picked.size() <= exact_matching(h).size());
    }
}

TEST_CASE("exact matching rejects big instances") {
    CHECK_THROWS_AS(exact_matching(gen_disjoint(21)), Error);
}

TEST_CASE("shared_index_sets") {
    // Two edges sharing only the part-0 vertex, one disjoint edge.
    Hypergraph h(6, {{0, 3}, {0, 4}, {1, 5}}, std::vector<int>{0, 0, 0, 1, 1, 1});
    auto shared = shared_index_sets(h);
    CHECK(shared.at(0, 1) == 0b01);
    CHECK(shared.at(0, 2) == 0);
    CHECK(shared.at(1, 2) == 0);
    CHECK(shared.at(0, 0) == 0b11);
    CHECK(shared.at(2, 2) == 0b11);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) CHECK(shared.at(i, j) == shared.at(j, i));
    }
    CHECK_THROWS_AS(shared_index_sets(gen_triangle()), Error);
}

TEST_CASE("bipartite preferential attachment") {
    CHECK_THROWS_AS(gen_bipartite_ba(1, 2, 0), Error);

    Hypergraph k22 = gen_bipartite_ba(2, 2, 7);
    CHECK(k22.num_edges() == 4);
    CHECK(k22.num_vertices() == 4);

    Hypergraph h = gen_bipartite_ba(100, 2, 7);
    CHECK(h.num_edges() == 4 + 2 * 2 * 98);
    CHECK(h.num_vertices() == 200);
    REQUIRE(h.is_partite());

    auto deg = h.degrees();
    for (int v = 2; v < 100; ++v) CHECK(deg[static_cast<std::size_t>(v)] >= 2);
    for (int v = 102; v < 200; ++v) CHECK(deg[static_cast<std::size_t>(v)] >= 2);

    Hypergraph again = gen_bipartite_ba(100, 2, 7);
    CHECK(h.edges() == again.edges());
    Hypergraph other = gen_bipartite_ba(100, 2, 8);
    CHECK(h.edges() != other.edges());
}

TEST_CASE("preferential attachment yields a powerlaw degree tail") {
    // Pooled histogram over a few seeds, log-log fit over the mid-range.
    const int N = 1000;
    const int m = 2;
    std::vector<double> hist(64, 0.0);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Hypergraph h = gen_bipartite_ba(N, m, seed);
        for (int d : h.degrees()) {
            if (d < static_cast<int>(hist.size())) hist[static_cast<std::size_t>(d)] += 1.0;
        }
    }
    std::vector<double> xs;
    std::vector<double> ys;
    for (int d = m; d <= 40; ++d) {
        if (hist[static_cast<std::size_t>(d)] > 0) {
            xs.push_back(std::log(static_cast<double>(d)));
            ys.push_back(std::log(hist[static_cast<std::size_t>(d)]));
        }
    }
    REQUIRE(xs.size() >= 8);
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    double slope = sxy / sxx;
    CHECK(slope < -2.0);
    CHECK(slope > -4.0);
}

TEST_CASE("bipartite Erdos-Renyi") {
    CHECK(gen_bipartite_er(10, 0.0, 3).num_edges() == 0);
    CHECK(gen_bipartite_er(10, 1.0, 3).num_edges() == 100);
    CHECK_THROWS_AS(gen_bipartite_er(10, 1.5, 3), Error);

    const int N = 200;
    const double p = 2.0 / N;
    Hypergraph h = gen_bipartite_er(N, p, 11);
    double expected = p * N * N;
    double spread = 4.0 * std::sqrt(N * p * (1 - p) * N);
    CHECK(std::abs(h.num_edges() - expected) <= spread);
    CHECK(h.edges() == gen_bipartite_er(N, p, 11).edges());
}

TEST_CASE("ordered-tuple hypergraphs") {
    Hypergraph h = gen_u_statistic(4, 2);
    CHECK(h.num_edges() == 12);
    CHECK(max_degree(h) == 6);

    Hypergraph singles = gen_u_statistic(3, 1);
    CHECK(singles.num_edges() == 3);
    CHECK(max_degree(singles) == 1);

    // Every vertex sits in r * (n-1)(n-2)...(n-r+1) tuples.
    for (int n = 2; n <= 6; ++n) {
        for (int r = 1; r <= std::min(n, 3); ++r) {
            Hypergraph g = gen_u_statistic(n, r);
            long falling = 1;
            for (int t = 0; t < r; ++t) falling *= n - t;
            CHECK(g.num_edges() == falling);
            long per_vertex = r * (falling / n);
            for (int d : g.degrees()) CHECK(d == per_vertex);
        }
    }
    CHECK_THROWS_AS(gen_u_statistic(2, 3), Error);
}

TEST_CASE("fixtures") {
    CHECK(gen_star(3).num_edges() == 3);
    CHECK(gen_disjoint(4).num_edges() == 4);
    CHECK(max_degree(gen_disjoint(4)) == 1);
    Hypergraph mix = disjoint_union(gen_star(3), gen_disjoint(2));
    CHECK(mix.num_edges() == 5);
    CHECK(mix.num_vertices() == 4 + 4);
}

TEST_CASE("json round trip") {
    Hypergraph h = gen_bipartite_ba(20, 2, 5);
    Hypergraph back = hypergraph_from_json(to_json(h));
    CHECK(back.num_vertices() == h.num_vertices());
    CHECK(back.edges() == h.edges());
    REQUIRE(back.is_partite());
    CHECK(*back.partition() == *h.partition());

    Hypergraph plain = gen_triangle();
    Hypergraph plain_back = hypergraph_from_json(to_json(plain));
    CHECK_FALSE(plain_back.is_partite());
    CHECK(plain_back.edges() == plain.edges());

    CHECK_THROWS_AS(hypergraph_from_json("{not json"), Error);
    CHECK_THROWS_AS(hypergraph_from_json("{\"edges\": []}"), Error);
}

}  // TEST_SUITE
