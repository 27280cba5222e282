#pragma once

#include <cstddef>

#include "lpae/lp.hpp"
#include "lpae/simplex.hpp"

namespace lpae {

// Euclidean projection onto {z | A z <= b, z >= 0} by Frank-Wolfe on
// f(z) = ||z - z0||^2. Each step solves one LP (the linear-minimization
// oracle) and takes the exact line-search step on the quadratic, so the
// distance to z0 is non-increasing. Stops when the Frank-Wolfe gap drops
// below tol. Iterates are convex combinations of vertices, hence feasible.
inline Vec project_onto_polytope(const LinearProgram& lp, const Vec& z0,
                                 std::size_t max_iters = 500, double tol = 1e-6) {
    if (z0.size() != lp.cols()) throw std::invalid_argument("project_onto_polytope: dim(z0) != n");
    if (max_iters < 1) throw std::invalid_argument("project_onto_polytope: max_iters must be >= 1");
    if (is_feasible(lp, z0, tol)) return z0;

    // Feasible start: any vertex works; the LP optimum is already at hand.
    LpSolution start = solve_simplex(lp);
    if (start.status != LpStatus::Optimal)
        throw std::runtime_error("project_onto_polytope: inner solve failed: " +
                                 std::string(to_string(start.status)));
    Vec z = start.x;

    LinearProgram oracle = lp; // objective replaced per iteration
    for (std::size_t k = 0; k < max_iters; ++k) {
        // grad f = 2 (z - z0); LMO maximizes -grad^T v over the polytope.
        Vec grad = sub(z, z0);
        for (double& g : grad) g *= 2.0;
        for (std::size_t j = 0; j < oracle.c.size(); ++j) oracle.c[j] = -grad[j];
        LpSolution lm = solve_simplex(oracle);
        if (lm.status != LpStatus::Optimal)
            throw std::runtime_error("project_onto_polytope: inner solve failed: " +
                                     std::string(to_string(lm.status)));
        const Vec d = sub(lm.x, z);
        const double gap = -dot(grad, d); // grad^T (z - v) >= 0
        if (gap < tol) break;
        const double dd = norm2_sq(d);
        if (dd <= 0.0) break;
        double step = -dot(grad, d) / (2.0 * dd);
        if (step > 1.0) step = 1.0;
        if (step <= 0.0) break;
        axpy(step, d, z);
    }
    return z;
}

} // namespace lpae
