#pragma once

#include <cstddef>
#include <vector>

#include "lpae/lp.hpp"

namespace lpae {

// Brute-force enumeration of the basic feasible solutions of
// {z | A z <= b, z >= 0}: every choice of n tight constraints out of the
// m + n available defines a candidate vertex. Exponential; guarded to
// m + n <= 24. Deduplicates at 1e-9 (max-norm).
inline std::vector<Vec> enumerate_vertices(const LinearProgram& lp) {
    const std::size_t m = lp.rows();
    const std::size_t n = lp.cols();
    if (m + n > 24) throw std::invalid_argument("enumerate_vertices: m + n > 24, refusing combinatorial blowup");

    const std::size_t total = m + n;
    std::vector<Vec> vertices;
    std::vector<std::size_t> pick(n);
    for (std::size_t i = 0; i < n; ++i) pick[i] = i;

    const auto consider = [&](const std::vector<std::size_t>& tight) {
        Matrix k(n, n, 0.0);
        Vec r(n, 0.0);
        for (std::size_t row = 0; row < n; ++row) {
            const std::size_t idx = tight[row];
            if (idx < m) {
                for (std::size_t j = 0; j < n; ++j) k(row, j) = lp.a(idx, j);
                r[row] = lp.b[idx];
            } else {
                k(row, idx - m) = 1.0; // z_j = 0
                r[row] = 0.0;
            }
        }
        Vec z;
        if (!solve_dense(k, r, z)) return;
        if (!is_feasible(lp, z, 1e-9)) return;
        for (const Vec& v : vertices) {
            double d = 0.0;
            for (std::size_t j = 0; j < n; ++j) d = std::max(d, std::fabs(v[j] - z[j]));
            if (d <= 1e-9) return;
        }
        vertices.push_back(std::move(z));
    };

    // lexicographic n-subsets of {0, ..., m+n-1}
    while (true) {
        consider(pick);
        std::size_t i = n;
        while (i-- > 0) {
            if (pick[i] != i + total - n) {
                ++pick[i];
                for (std::size_t j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
                break;
            }
            if (i == 0) return vertices;
        }
    }
}

} // namespace lpae
