#pragma once

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "lpae/linalg.hpp"
#include "lpae/numio.hpp"

namespace lpae {

// max c^T z  subject to  A z <= b,  z >= 0.
struct LinearProgram {
    Matrix a;  // m x n constraint matrix
    Vec b;     // m right-hand sides
    Vec c;     // n objective coefficients

    LinearProgram() = default;
    LinearProgram(Matrix a_, Vec b_, Vec c_) : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {
        validate();
    }

    std::size_t rows() const { return a.rows(); }
    std::size_t cols() const { return a.cols(); }

    void validate() const {
        if (a.rows() < 1 || a.cols() < 1) throw std::invalid_argument("LinearProgram: need m >= 1, n >= 1");
        if (b.size() != a.rows()) throw std::invalid_argument("LinearProgram: b size != m");
        if (c.size() != a.cols()) throw std::invalid_argument("LinearProgram: c size != n");
        if (!a.all_finite() || !all_finite(b) || !all_finite(c))
            throw std::invalid_argument("LinearProgram: non-finite entry");
    }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterLimit };

inline const char* to_string(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
        case LpStatus::IterLimit: return "iter_limit";
    }
    return "unknown";
}

// Primal/dual pair. x, y, s and objective are meaningful only when
// status == Optimal.
struct LpSolution {
    Vec x;                  // primal, length n
    Vec y;                  // dual, length m
    Vec s;                  // slack b - A x, length m
    double objective = 0.0; // c^T x
    LpStatus status = LpStatus::IterLimit;
};

// Squared hinge barrier: sum_j max{0, u_j}^2. Zero exactly on u <= 0.
inline double phi(const Vec& u) {
    double s = 0.0;
    for (double v : u) {
        if (!std::isfinite(v)) throw std::domain_error("phi: non-finite input");
        if (v > 0.0) s += v * v;
    }
    return s;
}

// phi(A z - b): the constraint-violation loss for a candidate decision z.
inline double violation(const LinearProgram& lp, const Vec& z) {
    if (z.size() != lp.cols()) throw std::invalid_argument("violation: dim(z) != n");
    Vec r = matvec(lp.a, z);
    for (std::size_t j = 0; j < r.size(); ++j) r[j] -= lp.b[j];
    return phi(r);
}

// Gradient of violation() in z: 2 A^T max{0, A z - b}.
inline Vec violation_grad(const LinearProgram& lp, const Vec& z) {
    if (z.size() != lp.cols()) throw std::invalid_argument("violation_grad: dim(z) != n");
    Vec r = matvec(lp.a, z);
    for (std::size_t j = 0; j < r.size(); ++j) {
        r[j] -= lp.b[j];
        if (r[j] < 0.0) r[j] = 0.0;
    }
    Vec g = mat_t_vec(lp.a, r);
    for (double& v : g) v *= 2.0;
    return g;
}

// Membership in the polytope {z | A z <= b, z >= 0} at tolerance tol.
inline bool is_feasible(const LinearProgram& lp, const Vec& z, double tol) {
    if (z.size() != lp.cols()) throw std::invalid_argument("is_feasible: dim(z) != n");
    for (double v : z)
        if (v < -tol) return false;
    const Vec az = matvec(lp.a, z);
    for (std::size_t j = 0; j < az.size(); ++j)
        if (az[j] > lp.b[j] + tol) return false;
    return true;
}

// All four KKT blocks: primal feasibility, dual feasibility, and both
// complementary-slackness conditions, each within tol.
inline bool check_kkt(const LinearProgram& lp, const Vec& x, const Vec& y, double tol) {
    if (x.size() != lp.cols() || y.size() != lp.rows()) throw std::invalid_argument("check_kkt: dim mismatch");
    if (tol <= 0.0) throw std::invalid_argument("check_kkt: tol must be > 0");
    const Vec ax = matvec(lp.a, x);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] < -tol) return false;
    for (std::size_t j = 0; j < lp.rows(); ++j) {
        if (ax[j] > lp.b[j] + tol) return false; // slack s_j = b_j - (Ax)_j >= -tol
        if (y[j] < -tol) return false;
    }
    const Vec aty = mat_t_vec(lp.a, y);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (aty[i] < lp.c[i] - tol) return false;
    for (std::size_t j = 0; j < lp.rows(); ++j) {
        const double slack = lp.b[j] - ax[j];
        if (std::fabs(y[j] * slack) > tol) return false;
    }
    for (std::size_t i = 0; i < x.size(); ++i)
        if (std::fabs((aty[i] - lp.c[i]) * x[i]) > tol) return false;
    return true;
}

// --- text format ---------------------------------------------------------
// Header line "m n", then m rows of A, one row b, one row c, all
// space-separated shortest round-trip decimals.

inline void write_lp(std::ostream& os, const LinearProgram& lp) {
    os << lp.rows() << ' ' << lp.cols() << '\n';
    for (std::size_t i = 0; i < lp.rows(); ++i) {
        for (std::size_t j = 0; j < lp.cols(); ++j) {
            if (j) os << ' ';
            os << format_double(lp.a(i, j));
        }
        os << '\n';
    }
    for (std::size_t j = 0; j < lp.rows(); ++j) os << (j ? " " : "") << format_double(lp.b[j]);
    os << '\n';
    for (std::size_t j = 0; j < lp.cols(); ++j) os << (j ? " " : "") << format_double(lp.c[j]);
    os << '\n';
}

inline LinearProgram read_lp(std::istream& is) {
    std::size_t m = 0, n = 0;
    if (!(is >> m >> n)) throw std::runtime_error("read_lp: missing header");
    auto next = [&is]() {
        std::string tok;
        if (!(is >> tok)) throw std::runtime_error("read_lp: truncated input");
        return parse_double(tok);
    };
    Matrix a(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = next();
    Vec b(m), c(n);
    for (std::size_t j = 0; j < m; ++j) b[j] = next();
    for (std::size_t j = 0; j < n; ++j) c[j] = next();
    return LinearProgram(std::move(a), std::move(b), std::move(c));
}

inline std::string lp_to_string(const LinearProgram& lp) {
    std::ostringstream os;
    write_lp(os, lp);
    return os.str();
}

inline LinearProgram lp_from_string(const std::string& text) {
    std::istringstream is(text);
    return read_lp(is);
}

} // namespace lpae
