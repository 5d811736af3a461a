#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "eigen.hpp"
#include "errors.hpp"
#include "expm.hpp"
#include "linalg.hpp"
#include "matrix.hpp"

namespace lti {

enum class TimeDomain { Continuous, Discrete };

inline std::string to_string(TimeDomain d) {
    return d == TimeDomain::Continuous ? "continuous" : "discrete";
}

/**
 * @brief Linear time-invariant system x' = A x + B u, y = C x
 *        (or its discrete-time analog x(t+1) = A x(t) + B u(t)).
 */
struct StateSpaceModel {
    TimeDomain domain = TimeDomain::Continuous;
    Matrix A;   // n x n state map
    Matrix B;   // n x m input map
    Matrix C;   // p x n output map

    StateSpaceModel() = default;

    StateSpaceModel(TimeDomain dom, Matrix a, Matrix b, Matrix c)
        : domain(dom), A(std::move(a)), B(std::move(b)), C(std::move(c)) {
        validate();
    }

    std::size_t order() const noexcept { return A.rows(); }
    std::size_t inputs() const noexcept { return B.cols(); }
    std::size_t outputs() const noexcept { return C.rows(); }

    bool is_continuous() const noexcept { return domain == TimeDomain::Continuous; }
    bool is_discrete() const noexcept { return domain == TimeDomain::Discrete; }

    void validate() const {
        if (!A.is_square()) throw DimensionMismatch("model: A must be square and nonempty");
        if (B.rows() != A.rows() || B.cols() == 0) {
            throw DimensionMismatch("model: B must be " + std::to_string(A.rows()) + " x m, m >= 1");
        }
        if (C.cols() != A.rows() || C.rows() == 0) {
            throw DimensionMismatch("model: C must be p x " + std::to_string(A.rows()) + ", p >= 1");
        }
        if (!A.all_finite() || !B.all_finite() || !C.all_finite()) {
            throw NonFiniteValue("model: matrices contain non-finite entries");
        }
    }
};

/**
 * @brief State-transition matrix phi(t, tau).
 *
 * Continuous systems: exp(A (t - tau)). Discrete systems: A^(t - tau)
 * with integer times and t >= tau.
 */
inline Matrix transition_matrix(const StateSpaceModel& model, double t, double tau) {
    if (model.is_continuous()) {
        if (t == tau) return Matrix::identity(model.order());
        return expm(model.A, t - tau);
    }
    const double dt = t - tau;
    const double rt = std::round(t);
    const double rtau = std::round(tau);
    if (std::abs(t - rt) > 1e-9 || std::abs(tau - rtau) > 1e-9) {
        throw InvalidTime("transition_matrix: discrete times must be integers");
    }
    if (rt < rtau) throw InvalidTime("transition_matrix: discrete requires t >= tau");
    if (dt == 0.0) return Matrix::identity(model.order());
    return matrix_power(model.A, static_cast<unsigned long long>(rt - rtau));
}

/**
 * @brief Monic characteristic polynomial, coefficients from highest
 *        degree down (leading coefficient exactly 1).
 */
struct CharPoly {
    std::vector<double> coefficients;

    std::size_t degree() const noexcept {
        return coefficients.empty() ? 0 : coefficients.size() - 1;
    }

    double evaluate(double z) const {
        double v = 0.0;
        for (double c : coefficients) v = v * z + c;
        return v;
    }

    /// Coefficient of z^k.
    double coeff_of_power(std::size_t k) const {
        return coefficients[coefficients.size() - 1 - k];
    }
};

/// Characteristic polynomial expanded from the computed spectrum; the
/// imaginary parts cancel for real input matrices and are dropped.
inline CharPoly characteristic_polynomial(const Matrix& a) {
    a.require_square("characteristic_polynomial");
    const Spectrum spec = eigenvalues(a);
    std::vector<std::complex<double>> c{1.0};
    for (const auto& lambda : spec.values) {
        c.push_back(0.0);
        for (std::size_t k = c.size() - 1; k >= 1; --k) c[k] -= lambda * c[k - 1];
    }
    CharPoly poly;
    poly.coefficients.reserve(c.size());
    for (const auto& v : c) poly.coefficients.push_back(v.real());
    poly.coefficients[0] = 1.0;
    return poly;
}

/// Companion matrix of a monic polynomial: ones on the superdiagonal,
/// negated coefficients (ascending) in the last row.
inline Matrix companion_matrix(const CharPoly& poly) {
    const std::size_t n = poly.degree();
    if (n == 0) throw DimensionMismatch("companion_matrix: degree must be >= 1");
    Matrix a(n, n);
    for (std::size_t i = 0; i + 1 < n; ++i) a(i, i + 1) = 1.0;
    for (std::size_t j = 0; j < n; ++j) a(n - 1, j) = -poly.coeff_of_power(j);
    return a;
}

/// [B, AB, ..., A^(n-1) B], the n x (n m) controllability matrix.
inline Matrix controllability_matrix(const Matrix& a, const Matrix& b) {
    a.require_square("controllability_matrix");
    if (b.rows() != a.rows()) throw DimensionMismatch("controllability_matrix: B rows must match A");
    const std::size_t n = a.rows();
    const std::size_t m = b.cols();
    Matrix result(n, n * m);
    Matrix block = b;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j) result(i, k * m + j) = block(i, j);
        if (k + 1 < n) block = a * block;
    }
    return result;
}

/// [C; CA; ...; C A^(n-1)], the (n p) x n observability matrix.
inline Matrix observability_matrix(const Matrix& a, const Matrix& c) {
    a.require_square("observability_matrix");
    if (c.cols() != a.rows()) throw DimensionMismatch("observability_matrix: C cols must match A");
    const std::size_t n = a.rows();
    const std::size_t p = c.rows();
    Matrix result(n * p, n);
    Matrix block = c;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < n; ++j) result(k * p + i, j) = block(i, j);
        if (k + 1 < n) block = block * a;
    }
    return result;
}

/**
 * @brief Phase-variable canonical realization together with the change
 *        of basis T relating original and canonical states, x = T x'.
 */
struct CanonicalForm {
    StateSpaceModel model;   // companion A', B' = e_n, C' = C T
    Matrix T;
};

/**
 * @brief Similarity transform of a single-input system to phase-variable
 *        canonical form.
 *
 * T is built from the two controllability matrices,
 * T = ctrb(A, B) ctrb(A', B')^-1, which reproduces textbook values digit
 * for digit on the worked positioning example.
 */
inline CanonicalForm to_phase_variable(const StateSpaceModel& model) {
    if (model.inputs() != 1) {
        throw MultiInput("to_phase_variable: single-input systems only");
    }
    const std::size_t n = model.order();
    const Matrix ctrb = controllability_matrix(model.A, model.B);
    if (!is_numerically_nonsingular(ctrb)) {
        throw Uncontrollable("to_phase_variable: controllability matrix is singular");
    }

    const CharPoly poly = characteristic_polynomial(model.A);
    const Matrix a_canon = companion_matrix(poly);
    Matrix b_canon(n, 1);
    b_canon(n - 1, 0) = 1.0;

    const Matrix ctrb_canon = controllability_matrix(a_canon, b_canon);
    // T = ctrb * ctrb_canon^-1, computed through the transposed solve.
    const Matrix t = solve(ctrb_canon.transpose(), ctrb.transpose()).transpose();

    CanonicalForm form;
    form.T = t;
    form.model = StateSpaceModel(model.domain, a_canon, b_canon, model.C * t);
    return form;
}

} // namespace lti
