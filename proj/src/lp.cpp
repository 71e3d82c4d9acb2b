#include "netex/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace netex {

namespace {

// Dictionary simplex tableau. Structural variables carry labels [0, n),
// slacks [n, n+m), the artificial column the label -1. Column layout:
// nonbasic columns 0..n-1, artificial column n, rhs column n+1. Row layout:
// constraint rows 0..m-1, objective row m, feasibility-objective row m+1.
class Tableau {
public:
    Tableau(const LpProblem& p, const LpOptions& opts)
        : m_(p.num_rows()), n_(p.num_vars()), width_(n_ + 2), opts_(opts) {
        tab_.assign(static_cast<std::size_t>(m_ + 2) * static_cast<std::size_t>(width_), 0.0);
        basic_.resize(static_cast<std::size_t>(m_));
        nonbasic_.resize(static_cast<std::size_t>(n_ + 1));
        for (int i = 0; i < m_; ++i) {
            const auto& r = p.constraint_rows[static_cast<std::size_t>(i)];
            if (static_cast<int>(r.size()) != n_) {
                throw Error(errc::shape_mismatch, "constraint row " + std::to_string(i) +
                                                      " has length " + std::to_string(r.size()));
            }
            double* row_i = row(i);
            std::copy(r.begin(), r.end(), row_i);
            row_i[n_] = -1.0;
            row_i[n_ + 1] = p.constraint_rhs[static_cast<std::size_t>(i)];
            basic_[static_cast<std::size_t>(i)] = n_ + i;
        }
        double* obj = row(m_);
        for (int j = 0; j < n_; ++j) {
            obj[j] = -p.objective[static_cast<std::size_t>(j)];
            nonbasic_[static_cast<std::size_t>(j)] = j;
        }
        nonbasic_[static_cast<std::size_t>(n_)] = -1;
        row(m_ + 1)[n_] = 1.0;

        max_iterations_ = opts.max_iterations > 0
                              ? opts.max_iterations
                              : 4000 + 64L * static_cast<long>(m_ + n_);
    }

    double* row(int i) { return tab_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(width_); }

    void pivot(int r, int s) {
        double* a = row(r);
        double inv = 1.0 / a[s];
        for (int i = 0; i < m_ + 2; ++i) {
            if (i == r) continue;
            double* b = row(i);
            if (std::abs(b[s]) <= 1e-14) continue;
            double f = b[s] * inv;
            for (int j = 0; j < width_; ++j) b[j] -= a[j] * f;
            b[s] = a[s] * f;
        }
        for (int j = 0; j < width_; ++j) {
            if (j != s) a[j] *= inv;
        }
        for (int i = 0; i < m_ + 2; ++i) {
            if (i != r) row(i)[s] *= -inv;
        }
        a[s] = inv;
        std::swap(basic_[static_cast<std::size_t>(r)], nonbasic_[static_cast<std::size_t>(s)]);
        ++iterations_;
    }

    // Runs pivots on the given objective row until no reduced cost is below
    // -eps. Returns false when the chosen column is unbounded. `skip_label`
    // excludes the artificial column during the optimality phase.
    bool optimize(int obj_row, int skip_label) {
        const double eps = opts_.eps;
        bool bland = false;
        int stall = 0;
        double prev = row(obj_row)[n_ + 1];
        for (;;) {
            if (iterations_ >= max_iterations_) {
                throw Error(errc::iteration_limit,
                            "simplex exceeded " + std::to_string(max_iterations_) + " pivots");
            }
            const double* obj = row(obj_row);
            int s = -1;
            if (!bland) {
                double best = -eps;
                for (int j = 0; j <= n_; ++j) {
                    int label = nonbasic_[static_cast<std::size_t>(j)];
                    if (label == skip_label) continue;
                    double v = obj[j];
                    if (v < best || (s >= 0 && v == best &&
                                     label < nonbasic_[static_cast<std::size_t>(s)])) {
                        best = v;
                        s = j;
                    }
                }
            } else {
                int best_label = std::numeric_limits<int>::max();
                for (int j = 0; j <= n_; ++j) {
                    int label = nonbasic_[static_cast<std::size_t>(j)];
                    if (label == skip_label) continue;
                    if (obj[j] < -eps && label < best_label) {
                        best_label = label;
                        s = j;
                    }
                }
            }
            if (s < 0) return true;

            int r = -1;
            double best_ratio = 0.0;
            for (int i = 0; i < m_; ++i) {
                double a = row(i)[s];
                if (a <= eps) continue;
                double ratio = row(i)[n_ + 1] / a;
                if (r < 0 || ratio < best_ratio ||
                    (ratio == best_ratio &&
                     basic_[static_cast<std::size_t>(i)] < basic_[static_cast<std::size_t>(r)])) {
                    r = i;
                    best_ratio = ratio;
                }
            }
            if (r < 0) return false;
            pivot(r, s);

            double cur = row(obj_row)[n_ + 1];
            if (cur > prev + 1e-13 * (1.0 + std::abs(prev))) {
                stall = 0;
                bland = false;
            } else if (++stall >= opts_.stall_threshold) {
                bland = true;
            }
            prev = cur;
        }
    }

    LpSolution solve() {
        // Feasibility phase only when some rhs is negative.
        int r = 0;
        for (int i = 1; i < m_; ++i) {
            if (row(i)[n_ + 1] < row(r)[n_ + 1]) r = i;
        }
        if (m_ > 0 && row(r)[n_ + 1] < -opts_.eps) {
            pivot(r, n_);
            if (!optimize(m_ + 1, std::numeric_limits<int>::min()) ||
                row(m_ + 1)[n_ + 1] < -opts_.eps) {
                throw Error(errc::infeasible, "feasibility phase ended at " +
                                                  std::to_string(-row(m_ + 1)[n_ + 1]));
            }
            // Pivot a still-basic artificial out at level zero. A row with no
            // usable entry is redundant and can keep its artificial.
            for (int i = 0; i < m_; ++i) {
                if (basic_[static_cast<std::size_t>(i)] != -1) continue;
                int s = -1;
                for (int j = 0; j <= n_; ++j) {
                    if (nonbasic_[static_cast<std::size_t>(j)] == -1) continue;
                    if (s < 0 || std::abs(row(i)[j]) > std::abs(row(i)[s])) s = j;
                }
                if (s >= 0 && std::abs(row(i)[s]) > opts_.eps) pivot(i, s);
            }
        }
        if (!optimize(m_, -1)) {
            throw Error(errc::unbounded, "objective is unbounded above");
        }
        LpSolution out;
        out.solution.assign(static_cast<std::size_t>(n_), 0.0);
        for (int i = 0; i < m_; ++i) {
            int label = basic_[static_cast<std::size_t>(i)];
            if (label >= 0 && label < n_) {
                out.solution[static_cast<std::size_t>(label)] = row(i)[n_ + 1];
            }
        }
        out.value = row(m_)[n_ + 1];
        out.iterations = iterations_;
        return out;
    }

private:
    int m_;
    int n_;
    int width_;
    LpOptions opts_;
    long max_iterations_ = 0;
    long iterations_ = 0;
    std::vector<double> tab_;
    std::vector<int> basic_;
    std::vector<int> nonbasic_;
};

}  // namespace

LpSolution solve_lp(const LpProblem& p, const LpOptions& opts) {
    if (p.constraint_rhs.size() != p.constraint_rows.size()) {
        throw Error(errc::shape_mismatch, "rhs length differs from row count");
    }
    for (double b : p.constraint_rhs) {
        if (!std::isfinite(b)) throw Error(errc::bad_params, "rhs must be finite");
    }
    if (p.num_vars() == 0) return LpSolution{};
    Tableau t(p, opts);
    return t.solve();
}

}  // namespace netex
