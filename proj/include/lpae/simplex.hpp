#pragma once

#include <cstddef>
#include <vector>

#include "lpae/lp.hpp"

namespace lpae {

namespace detail {

// Dense simplex tableau. Rows: 0 = objective, 1..m = constraints.
// Columns: [0, n) structural, [n, n+m) slacks, [n+m, n+m+n_art) artificials,
// last = rhs.
struct Tableau {
    std::size_t m = 0, n = 0, n_art = 0;
    std::size_t width = 0;
    std::vector<double> t;       // (m + 1) * width
    std::vector<std::size_t> basis; // per constraint row

    double* row(std::size_t i) { return t.data() + i * width; }
    const double* row(std::size_t i) const { return t.data() + i * width; }
    double rhs(std::size_t i) const { return row(i)[width - 1]; }

    void pivot(std::size_t prow, std::size_t pcol) {
        double* pr = row(prow);
        const double p = pr[pcol];
        for (std::size_t j = 0; j < width; ++j) pr[j] /= p;
        pr[pcol] = 1.0; // squash rounding on the pivot itself
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == prow) continue;
            double* ri = row(i);
            const double f = ri[pcol];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < width; ++j) ri[j] -= f * pr[j];
            ri[pcol] = 0.0;
        }
        basis[prow - 1] = pcol;
    }
};

constexpr double kPivotTol = 1e-9;

enum class LoopExit { Optimal, Unbounded, IterLimit };

// Primal simplex loop with Bland's anti-cycling rule: entering column is the
// lowest-index negative reduced cost; ratio-test ties go to the lowest basis
// index. max_cols caps the entering scan (used to exclude artificials).
inline LoopExit run_simplex(Tableau& tab, std::size_t max_cols, std::size_t& iters_left) {
    while (iters_left > 0) {
        --iters_left;
        const double* obj = tab.row(0);
        std::size_t enter = max_cols;
        for (std::size_t j = 0; j < max_cols; ++j) {
            if (obj[j] < -kPivotTol) {
                enter = j;
                break;
            }
        }
        if (enter == max_cols) return LoopExit::Optimal;

        std::size_t leave = 0;
        double best_ratio = 0.0;
        bool found = false;
        for (std::size_t i = 1; i <= tab.m; ++i) {
            const double coef = tab.row(i)[enter];
            if (coef <= kPivotTol) continue;
            const double ratio = tab.rhs(i) / coef;
            if (!found || ratio < best_ratio - 1e-12 ||
                (ratio <= best_ratio + 1e-12 && tab.basis[i - 1] < tab.basis[leave - 1])) {
                best_ratio = ratio;
                leave = i;
                found = true;
            }
        }
        if (!found) return LoopExit::Unbounded;
        tab.pivot(leave, enter);
    }
    return LoopExit::IterLimit;
}

} // namespace detail

// Exact primal simplex on the slack-augmented tableau. Instances with b >= 0
// start directly from the slack basis; otherwise a phase-1 artificial problem
// establishes feasibility first. The dual vector is read from the reduced
// costs of the slack columns in the final tableau.
inline LpSolution solve_simplex(const LinearProgram& lp, std::size_t max_iters = 10000) {
    lp.validate();
    if (max_iters < 1) throw std::invalid_argument("solve_simplex: max_iters must be >= 1");
    const std::size_t m = lp.rows();
    const std::size_t n = lp.cols();

    std::size_t n_art = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (lp.b[i] < 0.0) ++n_art;

    detail::Tableau tab;
    tab.m = m;
    tab.n = n;
    tab.n_art = n_art;
    tab.width = n + m + n_art + 1;
    tab.t.assign((m + 1) * tab.width, 0.0);
    tab.basis.assign(m, 0);
    const std::size_t rhs_col = tab.width - 1;

    std::size_t next_art = n + m;
    for (std::size_t i = 0; i < m; ++i) {
        double* r = tab.row(i + 1);
        const double sign = lp.b[i] < 0.0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) r[j] = sign * lp.a(i, j);
        r[n + i] = sign;
        r[rhs_col] = sign * lp.b[i];
        if (sign < 0.0) {
            r[next_art] = 1.0;
            tab.basis[i] = next_art++;
        } else {
            tab.basis[i] = n + i;
        }
    }

    std::size_t iters_left = max_iters;
    LpSolution sol;

    if (n_art > 0) {
        // Phase 1: maximize -(sum of artificials). Reduced costs start at +1
        // on artificial columns; eliminate the basic ones.
        double* obj = tab.row(0);
        for (std::size_t j = n + m; j < n + m + n_art; ++j) obj[j] = 1.0;
        for (std::size_t i = 1; i <= m; ++i) {
            if (tab.basis[i - 1] < n + m) continue;
            const double* r = tab.row(i);
            for (std::size_t j = 0; j < tab.width; ++j) obj[j] -= r[j];
        }
        const auto exit = detail::run_simplex(tab, n + m + n_art, iters_left);
        if (exit == detail::LoopExit::IterLimit || exit == detail::LoopExit::Unbounded) {
            sol.status = LpStatus::IterLimit;
            return sol;
        }
        if (tab.row(0)[rhs_col] < -1e-7) {
            sol.status = LpStatus::Infeasible;
            return sol;
        }
        // Pivot remaining artificials out where possible; a row with no
        // nonzero non-artificial entry is redundant and stays inert.
        for (std::size_t i = 1; i <= m; ++i) {
            if (tab.basis[i - 1] < n + m) continue;
            const double* r = tab.row(i);
            for (std::size_t j = 0; j < n + m; ++j) {
                if (std::fabs(r[j]) > detail::kPivotTol) {
                    tab.pivot(i, j);
                    break;
                }
            }
        }
        // Restore the phase-2 objective and re-eliminate basic columns.
        double* o2 = tab.row(0);
        for (std::size_t j = 0; j < tab.width; ++j) o2[j] = 0.0;
        for (std::size_t j = 0; j < n; ++j) o2[j] = -lp.c[j];
        for (std::size_t i = 1; i <= m; ++i) {
            const std::size_t bj = tab.basis[i - 1];
            if (bj >= n + m) continue;
            const double f = o2[bj];
            if (f == 0.0) continue;
            const double* r = tab.row(i);
            for (std::size_t j = 0; j < tab.width; ++j) o2[j] -= f * r[j];
        }
    } else {
        double* obj = tab.row(0);
        for (std::size_t j = 0; j < n; ++j) obj[j] = -lp.c[j];
    }

    const auto exit = detail::run_simplex(tab, n + m, iters_left);
    if (exit == detail::LoopExit::Unbounded) {
        sol.status = LpStatus::Unbounded;
        return sol;
    }
    if (exit == detail::LoopExit::IterLimit) {
        sol.status = LpStatus::IterLimit;
        return sol;
    }

    sol.status = LpStatus::Optimal;
    sol.x.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t bj = tab.basis[i];
        if (bj < n) sol.x[bj] = tab.rhs(i + 1);
    }
    sol.y.assign(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) sol.y[j] = tab.row(0)[n + j];
    const Vec ax = matvec(lp.a, sol.x);
    sol.s.assign(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) sol.s[j] = lp.b[j] - ax[j];
    sol.objective = dot(lp.c, sol.x);
    return sol;
}

} // namespace lpae
