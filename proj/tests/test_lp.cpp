#include <doctest.h>

#include <cmath>

#include "netex/lp.hpp"
#include "netex/rng.hpp"
#include "support/oracles.hpp"

using namespace netex;

namespace {

bool satisfies(const LpProblem& p, const std::vector<double>& x, double tol = 1e-9) {
    for (int r = 0; r < p.num_rows(); ++r) {
        double lhs = 0.0;
        for (int c = 0; c < p.num_vars(); ++c) {
            lhs += p.constraint_rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] *
                   x[static_cast<std::size_t>(c)];
        }
        if (lhs > p.constraint_rhs[static_cast<std::size_t>(r)] + tol) return false;
    }
    for (double xi : x) {
        if (xi < -tol) return false;
    }
    return true;
}

}  // namespace

TEST_SUITE("lp") {

TEST_CASE("single variable") {
    LpProblem p{{1.0}, {{1.0}}, {1.0}};
    auto sol = solve_lp(p);
    CHECK(sol.value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(sol.solution[0] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("triangle vertex constraints reach 1.5") {
    // Three pair variables, each vertex row touching two of them.
    LpProblem p{{1, 1, 1}, {{1, 0, 1}, {1, 1, 0}, {0, 1, 1}}, {1, 1, 1}};
    auto sol = solve_lp(p);
    CHECK(sol.value == doctest::Approx(1.5).epsilon(1e-10));
    CHECK(satisfies(p, sol.solution));
}

TEST_CASE("star constraints reach 1") {
    LpProblem p{{1, 1, 1}, {{1, 1, 1}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {1, 1, 1, 1}};
    auto sol = solve_lp(p);
    CHECK(sol.value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("infeasible and unbounded problems are reported") {
    LpProblem infeasible{{1.0}, {{1.0}, {-1.0}}, {1.0, -2.0}};
    CHECK_THROWS_WITH_AS(solve_lp(infeasible), doctest::Contains("Infeasible"), Error);

    LpProblem unbounded{{1.0, 0.0}, {{0.0, 1.0}}, {1.0}};
    CHECK_THROWS_WITH_AS(solve_lp(unbounded), doctest::Contains("Unbounded"), Error);
}

TEST_CASE("negative rhs goes through the feasibility phase") {
    // min x1 + x2 s.t. x1 + x2 >= 1 as a maximization with negated data.
    LpProblem p{{-1, -1}, {{-1, -1}}, {-1}};
    auto sol = solve_lp(p);
    CHECK(sol.value == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(sol.solution[0] + sol.solution[1] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("degenerate pivoting terminates") {
    // Classic cycling-prone data (Beale): optimum 0.05.
    LpProblem p{{0.75, -150, 0.02, -6},
                {{0.25, -60, -0.04, 9}, {0.5, -90, -0.02, 3}, {0, 0, 1, 0}},
                {0, 0, 1}};
    auto sol = solve_lp(p);
    CHECK(sol.value == doctest::Approx(0.05).epsilon(1e-8));
}

TEST_CASE("matches basic-solution enumeration on small problems") {
    std::vector<LpProblem> corpus = {
        {{1}, {{1}}, {1}},
        {{1, 1}, {{1, 2}, {3, 1}}, {4, 6}},
        {{2, 3}, {{1, 1}, {1, 3}}, {4, 6}},
        {{1, 1, 1}, {{1, 0, 1}, {1, 1, 0}, {0, 1, 1}}, {1, 1, 1}},
        {{-1, 2, 1}, {{1, 1, 1}, {2, 0, 1}}, {3, 2}},
        {{5, 4, 3}, {{2, 3, 1}, {4, 1, 2}, {3, 4, 2}}, {5, 11, 8}},
        {{0, 0, 1}, {{1, 1, 1}}, {2}},
    };
    Rng rng(99);
    for (int extra = 0; extra < 20; ++extra) {
        int n = 1 + rng.uniform_int(3);
        int m = 1 + rng.uniform_int(4);
        LpProblem p;
        for (int c = 0; c < n; ++c) p.objective.push_back(rng.uniform01() * 4.0 - 1.0);
        for (int r = 0; r < m; ++r) {
            std::vector<double> row;
            for (int c = 0; c < n; ++c) row.push_back(rng.uniform01() * 2.0);
            p.constraint_rows.push_back(std::move(row));
            p.constraint_rhs.push_back(0.5 + rng.uniform01() * 3.0);
        }
        // Cap every variable so the enumeration always has a finite optimum.
        for (int c = 0; c < n; ++c) {
            std::vector<double> row(static_cast<std::size_t>(n), 0.0);
            row[static_cast<std::size_t>(c)] = 1.0;
            p.constraint_rows.push_back(std::move(row));
            p.constraint_rhs.push_back(5.0);
        }
        corpus.push_back(std::move(p));
    }

    for (const auto& p : corpus) {
        auto expected = test::enumerate_lp_optimum(p);
        REQUIRE(expected.has_value());
        auto sol = solve_lp(p);
        CHECK(sol.value ==
              doctest::Approx(*expected).epsilon(1e-8).scale(std::max(1.0, std::abs(*expected))));
        CHECK(satisfies(p, sol.solution));
    }
}

}  // TEST_SUITE
