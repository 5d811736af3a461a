#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"

namespace lti {

/// A matrix is treated as numerically singular when a pivot falls below
/// this fraction of the infinity norm, or when the estimated condition
/// number exceeds the limit below.
inline constexpr double kSingularPivotTol = 1e-13;
inline constexpr double kConditionLimit   = 1e12;

namespace detail {

struct LuFactorization {
    Matrix lu;                       // unit-lower L below the diagonal, U on and above
    std::vector<std::size_t> perm;   // row permutation applied to the input
    double parity = 1.0;             // determinant sign of the permutation
    double min_pivot = 0.0;
    bool   completed = false;        // false when elimination hit an exactly zero column
};

/// Partial-pivoting LU. Never throws; a structurally singular input is
/// reported through min_pivot / completed so determinant() can still
/// return zero.
inline LuFactorization lu_factor(Matrix a) {
    a.require_square("LU factorization");
    const std::size_t n = a.rows();
    LuFactorization f;
    f.perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;
    f.min_pivot = std::numeric_limits<double>::infinity();

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot_row = k;
        double pivot_mag = std::abs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double mag = std::abs(a(i, k));
            if (mag > pivot_mag) {
                pivot_mag = mag;
                pivot_row = i;
            }
        }
        if (pivot_mag == 0.0) {
            f.min_pivot = 0.0;
            f.lu = std::move(a);
            return f;
        }
        if (pivot_row != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(pivot_row, j));
            std::swap(f.perm[k], f.perm[pivot_row]);
            f.parity = -f.parity;
        }
        f.min_pivot = std::min(f.min_pivot, pivot_mag);
        const double inv_pivot = 1.0 / a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = a(i, k) * inv_pivot;
            a(i, k) = m;
            if (m == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= m * a(k, j);
        }
    }
    f.completed = true;
    f.lu = std::move(a);
    return f;
}

/// Forward/back substitution for one right-hand side already permuted in.
inline Vector lu_solve_one(const LuFactorization& f, const Vector& b) {
    const std::size_t n = f.lu.rows();
    Vector y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[f.perm[i]];
        for (std::size_t j = 0; j < i; ++j) s -= f.lu(i, j) * y[j];
        y[i] = s;
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = y[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= f.lu(ii, j) * y[j];
        y[ii] = s / f.lu(ii, ii);
    }
    return y;
}

inline bool is_upper_triangular(const Matrix& a) {
    for (std::size_t i = 1; i < a.rows(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (a(i, j) != 0.0) return false;
    return true;
}

inline bool is_lower_triangular(const Matrix& a) {
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j)
            if (a(i, j) != 0.0) return false;
    return true;
}

} // namespace detail

/// Determinant. Exact for triangular inputs (product of the diagonal);
/// otherwise via partial-pivoting LU. Zero is an ordinary return value.
inline double determinant(const Matrix& a) {
    a.require_square("determinant");
    if (detail::is_upper_triangular(a) || detail::is_lower_triangular(a)) {
        double d = 1.0;
        for (std::size_t i = 0; i < a.rows(); ++i) d *= a(i, i);
        return d;
    }
    const auto f = detail::lu_factor(a);
    if (!f.completed) return 0.0;
    double d = f.parity;
    for (std::size_t i = 0; i < a.rows(); ++i) d *= f.lu(i, i);
    return d;
}

/// Solves A X = B columnwise with partial pivoting. Throws SingularMatrix
/// when a pivot falls under kSingularPivotTol * ||A||_inf or the computed
/// condition number exceeds kConditionLimit.
inline Matrix solve(const Matrix& a, const Matrix& b,
                    double pivot_tol = kSingularPivotTol,
                    double condition_limit = kConditionLimit) {
    a.require_square("solve");
    if (b.rows() != a.rows()) {
        throw DimensionMismatch("solve: right-hand side has " + std::to_string(b.rows()) +
                                " rows, matrix has " + std::to_string(a.rows()));
    }
    const std::size_t n = a.rows();
    const double anorm = a.norm_inf();
    const auto f = detail::lu_factor(a);
    if (!f.completed || f.min_pivot < pivot_tol * std::max(anorm, 1e-300)) {
        throw SingularMatrix("pivot below singularity threshold");
    }

    // Exact infinity-norm condition number from the factorization; the
    // matrices here are desk scale, so forming the inverse is cheap.
    double inv_norm = 0.0;
    {
        std::vector<Vector> inv_cols(n);
        Vector e(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            e[j] = 1.0;
            inv_cols[j] = detail::lu_solve_one(f, e);
            e[j] = 0.0;
        }
        for (std::size_t i = 0; i < n; ++i) {
            double row_sum = 0.0;
            for (std::size_t j = 0; j < n; ++j) row_sum += std::abs(inv_cols[j][i]);
            inv_norm = std::max(inv_norm, row_sum);
        }
    }
    if (anorm * inv_norm > condition_limit) {
        throw SingularMatrix("condition number estimate exceeds limit");
    }

    Matrix x(n, b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        Vector col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = b(i, j);
        const Vector sol = detail::lu_solve_one(f, col);
        for (std::size_t i = 0; i < n; ++i) x(i, j) = sol[i];
    }
    return x;
}

inline Vector solve(const Matrix& a, const Vector& b,
                    double pivot_tol = kSingularPivotTol,
                    double condition_limit = kConditionLimit) {
    const Matrix x = solve(a, Matrix::column(b), pivot_tol, condition_limit);
    return x.column_vector(0);
}

inline Matrix inverse(const Matrix& a,
                      double pivot_tol = kSingularPivotTol,
                      double condition_limit = kConditionLimit) {
    return solve(a, Matrix::identity(a.rows()), pivot_tol, condition_limit);
}

/// Infinity-norm condition number ||A||_inf * ||A^-1||_inf; +inf when the
/// factorization breaks down.
inline double condition_inf(const Matrix& a) {
    a.require_square("condition_inf");
    const auto f = detail::lu_factor(a);
    if (!f.completed || f.min_pivot == 0.0) return std::numeric_limits<double>::infinity();
    const std::size_t n = a.rows();
    std::vector<Vector> inv_cols(n);
    Vector e(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        e[j] = 1.0;
        inv_cols[j] = detail::lu_solve_one(f, e);
        e[j] = 0.0;
    }
    double inv_norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row_sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) row_sum += std::abs(inv_cols[j][i]);
        inv_norm = std::max(inv_norm, row_sum);
    }
    return a.norm_inf() * inv_norm;
}

/// True when the matrix passes the toolkit-wide nonsingularity test.
inline bool is_numerically_nonsingular(const Matrix& a,
                                       double pivot_tol = kSingularPivotTol,
                                       double condition_limit = kConditionLimit) {
    const auto f = detail::lu_factor(a);
    if (!f.completed) return false;
    if (f.min_pivot < pivot_tol * std::max(a.norm_inf(), 1e-300)) return false;
    return condition_inf(a) <= condition_limit;
}

/// Integer matrix power by repeated squaring.
inline Matrix matrix_power(const Matrix& a, unsigned long long p) {
    a.require_square("matrix_power");
    Matrix result = Matrix::identity(a.rows());
    Matrix base = a;
    while (p > 0) {
        if (p & 1ULL) result = result * base;
        base = base * base;
        p >>= 1ULL;
    }
    return result;
}

} // namespace lti
