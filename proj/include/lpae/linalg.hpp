#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace lpae {

using Vec = std::vector<double>;

// Dense row-major matrix. Problem sizes here are small (hundreds of rows at
// most), so a flat vector with explicit loops is all we need.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix from_rows(const std::vector<Vec>& rows) {
        if (rows.empty()) throw std::invalid_argument("Matrix::from_rows: empty");
        Matrix m(rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw std::invalid_argument("Matrix::from_rows: ragged rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    double* row_ptr(std::size_t i) { return data_.data() + i * cols_; }
    const double* row_ptr(std::size_t i) const { return data_.data() + i * cols_; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    bool all_finite() const {
        for (double v : data_)
            if (!std::isfinite(v)) return false;
        return true;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// y = A x
inline Vec matvec(const Matrix& a, const Vec& x) {
    Vec y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* row = a.row_ptr(i);
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += row[j] * x[j];
        y[i] = s;
    }
    return y;
}

// y = A^T x
inline Vec mat_t_vec(const Matrix& a, const Vec& x) {
    Vec y(a.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* row = a.row_ptr(i);
        for (std::size_t j = 0; j < a.cols(); ++j) y[j] += row[j] * x[i];
    }
    return y;
}

inline double norm2_sq(const Vec& v) { return dot(v, v); }
inline double norm2(const Vec& v) { return std::sqrt(norm2_sq(v)); }

inline Vec sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec scaled(const Vec& a, double s) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

// y += alpha * x
inline void axpy(double alpha, const Vec& x, Vec& y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline bool all_finite(const Vec& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

// Solves K z = r by Gaussian elimination with partial pivoting.
// Returns false if K is numerically singular (pivot below tol).
inline bool solve_dense(Matrix k, Vec r, Vec& out, double tol = 1e-10) {
    const std::size_t n = k.rows();
    if (k.cols() != n || r.size() != n) throw std::invalid_argument("solve_dense: shape mismatch");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t i = col + 1; i < n; ++i)
            if (std::fabs(k(i, col)) > std::fabs(k(piv, col))) piv = i;
        if (std::fabs(k(piv, col)) < tol) return false;
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(k(col, j), k(piv, j));
            std::swap(r[col], r[piv]);
        }
        for (std::size_t i = col + 1; i < n; ++i) {
            const double f = k(i, col) / k(col, col);
            if (f == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) k(i, j) -= f * k(col, j);
            r[i] -= f * r[col];
        }
    }
    out.assign(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = r[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= k(i, j) * out[j];
        out[i] = s / k(i, i);
    }
    return true;
}

} // namespace lpae
