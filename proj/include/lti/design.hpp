#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "eigen.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "matrix.hpp"
#include "state_space.hpp"

namespace lti {

/// Weight matrices are symmetrized after passing this asymmetry check.
inline constexpr double kWeightSymmetryTol = 1e-10;

/**
 * @brief State-feedback design result for u = -F x.
 *
 * canonical_gain is the same gain expressed in phase-variable
 * coordinates, where pole placement is a coefficient subtraction.
 */
struct FeedbackGain {
    Matrix F;                              // m x n
    std::optional<Matrix> canonical_gain;  // m x n, in canonical coordinates
    CharPoly desired_poly;
};

/**
 * @brief Single-input pole placement via the phase-variable form.
 *
 * In canonical coordinates the closed-loop coefficients are free:
 * f'_j = d_j - a_j for the ascending coefficients of the desired and the
 * current characteristic polynomial. The gain maps back as F = F' T^-1.
 */
inline FeedbackGain state_feedback_gain(const StateSpaceModel& model, const CharPoly& desired) {
    const std::size_t n = model.order();
    if (desired.degree() != n) {
        throw DimensionMismatch("state_feedback_gain: desired polynomial degree must equal the model order");
    }
    if (desired.coefficients.front() != 1.0) {
        throw DimensionMismatch("state_feedback_gain: desired polynomial must be monic");
    }

    const CanonicalForm canon = to_phase_variable(model);   // throws MultiInput / Uncontrollable
    const CharPoly current = characteristic_polynomial(model.A);

    Matrix canonical_gain(1, n);
    for (std::size_t j = 0; j < n; ++j) {
        canonical_gain(0, j) = desired.coeff_of_power(j) - current.coeff_of_power(j);
    }

    // F = F' T^-1  <=>  T^T F^T = F'^T.
    const Matrix f = solve(canon.T.transpose(), canonical_gain.transpose()).transpose();

    FeedbackGain result;
    result.F = f;
    result.canonical_gain = canonical_gain;
    result.desired_poly = desired;
    return result;
}

/// Places every closed-loop eigenvalue at zero, making A - B F nilpotent:
/// any initial state reaches the origin in at most n steps.
inline FeedbackGain deadbeat_gain(const StateSpaceModel& model) {
    CharPoly desired;
    desired.coefficients.assign(model.order() + 1, 0.0);
    desired.coefficients.front() = 1.0;
    return state_feedback_gain(model, desired);
}

/// The model under u = -F x: state map A - B F, same B and C.
inline StateSpaceModel closed_loop(const StateSpaceModel& model, const Matrix& f) {
    if (f.rows() != model.inputs() || f.cols() != model.order()) {
        throw DimensionMismatch("closed_loop: gain must be m x n");
    }
    return StateSpaceModel(model.domain, model.A - model.B * f, model.B, model.C);
}

inline StateSpaceModel closed_loop(const StateSpaceModel& model, const FeedbackGain& gain) {
    return closed_loop(model, gain.F);
}

/**
 * @brief Finite-horizon discrete LQR solution.
 *
 * gains[k] is F(i0 + k) for k = 0..i1-i0-1; riccati[k] is P(i0 + k) for
 * k = 0..i1-i0, with riccati.back() the supplied terminal matrix. The
 * achieved criterion value from state x0 is x0^T P(i0) x0.
 */
struct LqrSolution {
    long i0 = 0;
    long i1 = 0;
    std::vector<Matrix> gains;
    std::vector<Matrix> riccati;

    const Matrix& gain_at(long i) const { return gains.at(static_cast<std::size_t>(i - i0)); }
    const Matrix& riccati_at(long i) const { return riccati.at(static_cast<std::size_t>(i - i0)); }

    double cost_of(const Vector& x0) const {
        const Vector px = matvec(riccati.front(), x0);
        return dot(x0, px);
    }
};

namespace detail {

inline Matrix checked_weight(const Matrix& w, std::size_t dim, const char* name,
                             bool require_definite) {
    if (!w.is_square() || w.rows() != dim) {
        throw DimensionMismatch(std::string("lqr: ") + name + " has the wrong shape");
    }
    if (asymmetry_inf(w) > kWeightSymmetryTol * std::max(1.0, w.norm_inf())) {
        throw NonSymmetricWeight(std::string("lqr: ") + name + " is not symmetric");
    }
    const Matrix s = symmetrized(w);
    const double min_eig = min_symmetric_eigenvalue(s);
    const double scale = s.norm_inf();
    if (require_definite) {
        if (!(scale > 0.0) || !(min_eig > 1e-9 * scale)) {
            throw IndefiniteWeight(std::string("lqr: ") + name + " must be positive definite");
        }
    } else if (min_eig < -1e-9 * std::max(1.0, scale)) {
        throw IndefiniteWeight(std::string("lqr: ") + name + " must be positive semidefinite");
    }
    return s;
}

} // namespace detail

/**
 * @brief Backward Riccati recursion for the criterion
 *        J = sum_{i=i0}^{i1-1} [ x(i+1)^T R1 x(i+1) + u(i)^T R u(i) ]
 *            + x(i1)^T P1 x(i1).
 *
 * F(i) = [R + B^T (R1 + P(i+1)) B]^-1 B^T (R1 + P(i+1)) A,
 * P(i) = A^T (R1 + P(i+1)) (A - B F(i)), with P(i1) = P1. The inverse
 * exists because R is positive definite.
 */
inline LqrSolution lqr(const StateSpaceModel& model, const Matrix& r1, const Matrix& r,
                       const Matrix& p1, long i0, long i1) {
    if (!model.is_discrete()) {
        throw TimeDomainMismatch("lqr: discrete models only");
    }
    if (i1 <= i0) throw InvalidHorizon("lqr: need i1 > i0");

    const std::size_t n = model.order();
    const std::size_t m = model.inputs();
    const Matrix state_weight = detail::checked_weight(r1, n, "R1", false);
    const Matrix input_weight = detail::checked_weight(r, m, "R", true);
    const Matrix terminal = detail::checked_weight(p1, n, "P1", false);

    const std::size_t horizon = static_cast<std::size_t>(i1 - i0);
    LqrSolution sol;
    sol.i0 = i0;
    sol.i1 = i1;
    sol.gains.resize(horizon);
    sol.riccati.resize(horizon + 1);
    sol.riccati[horizon] = terminal;

    const Matrix at = model.A.transpose();
    const Matrix bt = model.B.transpose();
    for (std::size_t k = horizon; k-- > 0;) {
        const Matrix q = state_weight + sol.riccati[k + 1];   // R1 + P(i+1)
        const Matrix qb = q * model.B;
        const Matrix gain = solve(input_weight + bt * qb, bt * q * model.A);
        sol.gains[k] = gain;
        sol.riccati[k] = symmetrized(at * q * (model.A - model.B * gain));
    }
    return sol;
}

/// Builds the state weight R1 = D^T Rs D from an output map and an
/// output-space weight.
inline Matrix state_weight_from_output(const Matrix& d, const Matrix& rs) {
    if (rs.rows() != d.rows() || !rs.is_square()) {
        throw DimensionMismatch("state_weight_from_output: Rs must be square with D's row count");
    }
    return d.transpose() * rs * d;
}

} // namespace lti
