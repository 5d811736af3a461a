#pragma once

#include <cmath>
#include <cstddef>

#include "errors.hpp"
#include "linalg.hpp"
#include "matrix.hpp"

namespace lti {

namespace detail {

/// Diagonal Pade(6,6) approximant of exp(M) for ||M||_inf <= 0.5.
inline Matrix expm_pade6(const Matrix& m) {
    // b_k = (12-k)! 6! / (12! k! (6-k)!)
    static constexpr double b[7] = {
        1.0, 1.0 / 2.0, 5.0 / 44.0, 1.0 / 66.0, 1.0 / 792.0, 1.0 / 15840.0, 1.0 / 665280.0};
    const std::size_t n = m.rows();
    const Matrix I = Matrix::identity(n);
    const Matrix m2 = m * m;
    const Matrix m4 = m2 * m2;
    const Matrix m6 = m4 * m2;

    const Matrix u = m * (I * b[1] + m2 * b[3] + m4 * b[5]);
    const Matrix v = I * b[0] + m2 * b[2] + m4 * b[4] + m6 * b[6];
    // exp(M) ~ (V - U)^-1 (V + U); V - U is well conditioned at this norm.
    return solve(v - u, v + u);
}

} // namespace detail

/**
 * @brief Matrix exponential exp(A t) by scaling and squaring.
 *
 * The scaled norm is brought to at most 0.5 before the Pade step, then
 * the result is squared back up.
 */
inline Matrix expm(const Matrix& a, double t = 1.0) {
    a.require_square("expm");
    if (!std::isfinite(t)) throw NonFiniteValue("expm: non-finite time");
    if (!a.all_finite()) throw NonFiniteValue("expm: non-finite entries");

    const std::size_t n = a.rows();
    Matrix m = a * t;
    const double nm = m.norm_inf();
    if (nm == 0.0) return Matrix::identity(n);

    int s = 0;
    double scaled = nm;
    while (scaled > 0.5) {
        scaled *= 0.5;
        ++s;
    }
    if (s > 0) m *= std::ldexp(1.0, -s);

    Matrix e = detail::expm_pade6(m);
    for (int i = 0; i < s; ++i) e = e * e;
    return e;
}

/**
 * @brief Exact zero-order-hold discretization over a step of length h.
 *
 * Returns (Ad, Bd) with Ad = exp(A h) and Bd = (int_0^h exp(A s) ds) B,
 * computed from the exponential of the augmented block matrix
 * [[A, B], [0, 0]].
 */
inline std::pair<Matrix, Matrix> zoh_discretize(const Matrix& a, const Matrix& b, double h) {
    a.require_square("zoh_discretize");
    if (b.rows() != a.rows()) throw DimensionMismatch("zoh_discretize: B rows must match A");
    const std::size_t n = a.rows();
    const std::size_t m = b.cols();
    Matrix aug(n + m, n + m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        for (std::size_t j = 0; j < m; ++j) aug(i, n + j) = b(i, j);
    }
    const Matrix e = expm(aug, h);
    Matrix ad(n, n);
    Matrix bd(n, m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) ad(i, j) = e(i, j);
        for (std::size_t j = 0; j < m; ++j) bd(i, j) = e(i, n + j);
    }
    return {ad, bd};
}

} // namespace lti
