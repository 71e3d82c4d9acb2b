#include "netex/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "netex/lp.hpp"

namespace netex {

const char* bound_kind_name(BoundKind kind) noexcept {
    switch (kind) {
        case BoundKind::bennett: return "bennett";
        case BoundKind::bernstein: return "bernstein";
        case BoundKind::hoeffding: return "hoeffding";
        case BoundKind::janson_hoeffding: return "janson_hoeffding";
        case BoundKind::janson_bernstein: return "janson_bernstein";
        case BoundKind::eqw_bennett: return "eqw_bennett";
        case BoundKind::eqw_bernstein: return "eqw_bernstein";
        case BoundKind::eqw_hoeffding: return "eqw_hoeffding";
        case BoundKind::ustat_hoeffding: return "ustat_hoeffding";
        case BoundKind::ustat_bernstein: return "ustat_bernstein";
        case BoundKind::ustat_hoeffding_classic: return "ustat_hoeffding_classic";
        case BoundKind::sample_error_iid: return "sample_error_iid";
        case BoundKind::sample_error_eqw_chromatic: return "sample_error_eqw_chromatic";
        case BoundKind::sample_error_eqw_omega: return "sample_error_eqw_omega";
        case BoundKind::sample_error_svalue: return "sample_error_svalue";
        case BoundKind::markov: return "markov";
    }
    return "unknown";
}

BoundResult make_bound(BoundKind kind, double raw) {
    return BoundResult{kind, raw, std::clamp(raw, 0.0, 1.0)};
}

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw Error(errc::bad_params, what);
}

void check_base(const BoundQuery& q) {
    require(q.epsilon > 0.0, "epsilon must be positive");
    require(q.M > 0.0, "M must be positive");
}

}  // namespace

BoundResult networked_bennett(const BoundQuery& q) {
    check_base(q);
    require(q.sigma2 > 0.0, "sigma2 must be positive");
    require(q.total_weight > 0.0, "total weight must be positive");
    double expo = -(q.total_weight * q.epsilon / (2.0 * q.M)) *
                  std::log1p(q.M * q.epsilon / q.sigma2);
    return make_bound(BoundKind::bennett, std::exp(expo));
}

BoundResult networked_bernstein(const BoundQuery& q) {
    check_base(q);
    require(q.sigma2 >= 0.0, "sigma2 must be nonnegative");
    require(q.total_weight > 0.0, "total weight must be positive");
    double expo = -q.total_weight * q.epsilon * q.epsilon /
                  (2.0 * (q.sigma2 + q.M * q.epsilon / 3.0));
    return make_bound(BoundKind::bernstein, std::exp(expo));
}

BoundResult networked_hoeffding(const BoundQuery& q) {
    check_base(q);
    require(q.total_weight > 0.0, "total weight must be positive");
    double expo = -q.total_weight * q.epsilon * q.epsilon / (2.0 * q.M * q.M);
    return make_bound(BoundKind::hoeffding, std::exp(expo));
}

std::pair<BoundResult, BoundResult> janson_bounds(const BoundQuery& q) {
    check_base(q);
    if (q.chi_star < 1.0) throw Error(errc::missing_chi_star, "chi* >= 1 required");
    require(q.n >= 1, "n must be positive");
    double nd = static_cast<double>(q.n);
    double h = std::exp(-nd * q.epsilon * q.epsilon / (2.0 * q.chi_star * q.M * q.M));
    double b = std::exp(-8.0 * nd * q.epsilon * q.epsilon /
                        (25.0 * q.chi_star * (q.sigma2 + q.M * q.epsilon / 3.0)));
    return {make_bound(BoundKind::janson_hoeffding, h), make_bound(BoundKind::janson_bernstein, b)};
}

std::array<BoundResult, 3> eqw_bounds(const BoundQuery& q) {
    check_base(q);
    require(q.omega >= 1, "omega must be >= 1");
    require(q.n >= 1, "n must be positive");
    BoundQuery scaled = q;
    scaled.total_weight = static_cast<double>(q.n) / static_cast<double>(q.omega);
    BoundResult be = networked_bennett(scaled);
    BoundResult br = networked_bernstein(scaled);
    BoundResult ho = networked_hoeffding(scaled);
    return {make_bound(BoundKind::eqw_bennett, be.raw), make_bound(BoundKind::eqw_bernstein, br.raw),
            make_bound(BoundKind::eqw_hoeffding, ho.raw)};
}

std::array<BoundResult, 3> u_statistic_bounds(const BoundQuery& q) {
    require(q.epsilon > 0.0, "epsilon must be positive");
    require(q.r >= 1 && q.n >= q.r, "need n >= r >= 1");
    require(q.range > 0.0, "range b-a must be positive");
    double nd = static_cast<double>(q.n);
    double rd = static_cast<double>(q.r);
    double e2 = q.epsilon * q.epsilon;

    double improved_h = std::exp(-2.0 * nd * e2 / (rd * q.range * q.range));
    // Bernstein-type form; the deviation enters the linear term as well.
    double m = q.M > 0.0 ? q.M : q.range / 2.0;
    double improved_b =
        std::exp(-2.0 * (nd / rd) * e2 / (q.sigma2 + m * q.epsilon / 3.0));
    double classic = std::exp(-2.0 * std::floor(nd / rd) * e2 / (q.range * q.range));
    return {make_bound(BoundKind::ustat_hoeffding, improved_h),
            make_bound(BoundKind::ustat_bernstein, improved_b),
            make_bound(BoundKind::ustat_hoeffding_classic, classic)};
}

BoundResult sample_error_bound(SampleErrorKind kind, const BoundQuery& q) {
    check_base(q);
    require(q.covering >= 1.0, "covering prefactor must be >= 1");
    double m2 = q.M * q.M;
    double m4 = m2 * m2;
    double raw = 0.0;
    switch (kind) {
        case SampleErrorKind::iid:
            require(q.n >= 1, "n must be positive");
            raw = q.covering * std::exp(-static_cast<double>(q.n) * q.epsilon / (300.0 * m4));
            return make_bound(BoundKind::sample_error_iid, raw);
        case SampleErrorKind::eqw_chromatic:
            require(q.n >= 1, "n must be positive");
            if (q.chi_star < 1.0) throw Error(errc::missing_chi_star, "chi* >= 1 required");
            raw = q.covering * std::exp(-3.0 * static_cast<double>(q.n) * q.epsilon /
                                        (1400.0 * q.chi_star * m4));
            return make_bound(BoundKind::sample_error_eqw_chromatic, raw);
        case SampleErrorKind::eqw_omega:
            require(q.n >= 1, "n must be positive");
            require(q.omega >= 1, "omega must be >= 1");
            raw = q.covering * std::exp(-static_cast<double>(q.n) * q.epsilon /
                                        (300.0 * static_cast<double>(q.omega) * m4));
            return make_bound(BoundKind::sample_error_eqw_omega, raw);
        case SampleErrorKind::s_value:
            require(q.total_weight > 0.0, "s must be positive");
            raw = q.covering * std::exp(-q.total_weight * q.epsilon / (300.0 * m2));
            return make_bound(BoundKind::sample_error_svalue, raw);
    }
    throw Error(errc::bad_params, "unknown sample-error kind");
}

BoundResult markov_bound(double mean, double deviation) {
    require(mean >= 0.0, "mean must be nonnegative");
    require(deviation > 0.0, "deviation must be positive");
    return make_bound(BoundKind::markov, mean / (deviation + mean));
}

namespace {

// All maximal matchings, by depth-first extension over edge indices.
void enumerate_maximal_matchings(const Hypergraph& h, int start, std::vector<char>& used,
                                 std::vector<int>& current, std::vector<std::vector<int>>& out) {
    bool extended = false;
    for (int i = start; i < h.num_edges(); ++i) {
        const Edge& e = h.edge(i);
        bool free = std::none_of(e.begin(), e.end(),
                                 [&](int v) { return used[static_cast<std::size_t>(v)]; });
        if (!free) continue;
        extended = true;
        for (int v : e) used[static_cast<std::size_t>(v)] = 1;
        current.push_back(i);
        enumerate_maximal_matchings(h, i + 1, used, current, out);
        current.pop_back();
        for (int v : e) used[static_cast<std::size_t>(v)] = 0;
    }
    if (!extended) {
        // Maximal only if no earlier edge could extend it either.
        for (int i = 0; i < start; ++i) {
            const Edge& e = h.edge(i);
            bool in_current = std::find(current.begin(), current.end(), i) != current.end();
            if (in_current) continue;
            bool free = std::none_of(e.begin(), e.end(),
                                     [&](int v) { return used[static_cast<std::size_t>(v)]; });
            if (free) return;
        }
        out.push_back(current);
    }
}

}  // namespace

double chi_star_oracle(const Hypergraph& h, int max_edges) {
    int n = h.num_edges();
    if (n == 0) return 0.0;
    if (n > max_edges) {
        throw Error(errc::too_large, "chi* oracle limited to " + std::to_string(max_edges) + " edges");
    }
    std::vector<std::vector<int>> matchings;
    std::vector<char> used(static_cast<std::size_t>(h.num_vertices()), 0);
    std::vector<int> current;
    enumerate_maximal_matchings(h, 0, used, current, matchings);

    // min sum_j x_j  s.t.  for every edge e: sum_{j: e in M_j} x_j >= 1, x >= 0,
    // stated as a maximization with negated data.
    LpProblem p;
    p.objective.assign(matchings.size(), -1.0);
    for (int e = 0; e < n; ++e) {
        std::vector<double> row(matchings.size(), 0.0);
        for (std::size_t j = 0; j < matchings.size(); ++j) {
            if (std::find(matchings[j].begin(), matchings[j].end(), e) != matchings[j].end()) {
                row[j] = -1.0;
            }
        }
        p.constraint_rows.push_back(std::move(row));
        p.constraint_rhs.push_back(-1.0);
    }
    LpSolution sol = solve_lp(p);
    return -sol.value;
}

}  // namespace netex
