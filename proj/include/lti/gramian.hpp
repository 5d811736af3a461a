#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "eigen.hpp"
#include "errors.hpp"
#include "expm.hpp"
#include "linalg.hpp"
#include "matrix.hpp"
#include "signal.hpp"
#include "simulate.hpp"
#include "state_space.hpp"

namespace lti {

/// Entrywise refinement tolerance and panel cap for the continuous
/// Gramian quadrature.
inline constexpr double kGramianQuadTol = 1e-9;
inline constexpr std::size_t kGramianPanelCap = 1u << 14;

/// Relative minimum-eigenvalue threshold of the nonsingularity verdict.
inline constexpr double kGramianMinEigRel = 1e-10;

enum class GramianKind { Controllability, Observability };

inline std::string to_string(GramianKind k) {
    return k == GramianKind::Controllability ? "Controllability" : "Observability";
}

/**
 * @brief Finite-horizon Gramian with its nonsingularity verdict.
 *
 * W is symmetric positive semidefinite by construction. The verdict
 * combines the determinant with a relative minimum-eigenvalue threshold
 * so that scale alone cannot flip it.
 */
struct GramianReport {
    GramianKind kind = GramianKind::Controllability;
    double t0 = 0.0;
    double t1 = 0.0;
    Matrix W;
    double det = 0.0;
    bool nonsingular = false;
    double min_eigenvalue = 0.0;
    std::size_t panels_used = 0;   // 0 for the discrete sums
};

namespace detail {

inline void finish_report(GramianReport& report) {
    report.W = symmetrized(report.W);
    report.det = determinant(report.W);
    report.min_eigenvalue = min_symmetric_eigenvalue(report.W);
    const double scale = report.W.norm_inf();
    const std::size_t n = report.W.rows();
    const double det_floor = std::pow(kGramianMinEigRel * scale, static_cast<double>(n));
    report.nonsingular = scale > 0.0 &&
                         report.min_eigenvalue > kGramianMinEigRel * scale &&
                         std::abs(report.det) > det_floor;
}

/// Composite Simpson quadrature of G(s) = F(s) F(s)^T, F(s) = exp(A s) M,
/// over [0, L], refined until successive halvings agree entrywise.
inline Matrix integrate_outer_product(const Matrix& a, const Matrix& m, double L,
                                      double quad_tol, std::size_t& panels_used) {
    const std::size_t n = a.rows();
    Matrix previous;
    for (std::size_t panels = 16; panels <= kGramianPanelCap; panels *= 2) {
        const double h = L / static_cast<double>(panels);
        const Matrix step = expm(a, h);
        Matrix acc(n, n);
        Matrix f = m;   // exp(A * 0) * M
        for (std::size_t j = 0; j <= panels; ++j) {
            const double w = (j == 0 || j == panels) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
            const double coeff = w * h / 3.0;
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c)
                    for (std::size_t k = 0; k < m.cols(); ++k)
                        acc(r, c) += coeff * f(r, k) * f(c, k);
            if (j < panels) f = step * f;
        }
        if (!previous.empty() && max_abs_diff(acc, previous) < quad_tol) {
            panels_used = panels;
            return acc;
        }
        previous = std::move(acc);
        panels_used = panels;
    }
    return previous;
}

} // namespace detail

/**
 * @brief Controllability Gramian on [t0, t1].
 *
 * Continuous: int_{t0}^{t1} phi(t1,tau) B B^T phi(t1,tau)^T dtau, by
 * Simpson quadrature with step refinement. Discrete: the sum
 * sum_{tau=0}^{t1-1} A^tau B B^T (A^tau)^T with t0 fixed at 0.
 */
inline GramianReport controllability_gramian(const StateSpaceModel& model, double t0, double t1,
                                             double quad_tol = kGramianQuadTol) {
    GramianReport report;
    report.kind = GramianKind::Controllability;
    report.t0 = t0;
    report.t1 = t1;
    const std::size_t n = model.order();

    if (model.is_continuous()) {
        if (t1 < t0) throw InvalidHorizon("controllability_gramian: need t1 >= t0");
        if (t1 == t0) {
            report.W = Matrix(n, n);
            detail::finish_report(report);
            return report;
        }
        report.W = detail::integrate_outer_product(model.A, model.B, t1 - t0, quad_tol,
                                                   report.panels_used);
    } else {
        const double rt1 = std::round(t1);
        if (t0 != 0.0) throw InvalidHorizon("controllability_gramian: discrete horizon starts at 0");
        if (std::abs(t1 - rt1) > 1e-9 || rt1 < 1.0) {
            throw InvalidHorizon("controllability_gramian: discrete t1 must be an integer >= 1");
        }
        Matrix acc(n, n);
        Matrix block = model.B;   // A^tau B
        for (long tau = 0; tau < static_cast<long>(rt1); ++tau) {
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c)
                    for (std::size_t k = 0; k < model.inputs(); ++k)
                        acc(r, c) += block(r, k) * block(c, k);
            block = model.A * block;
        }
        report.W = acc;
    }
    detail::finish_report(report);
    return report;
}

/**
 * @brief Observability Gramian on [0, t1].
 *
 * Continuous: int_0^{t1} phi(tau,0)^T C^T C phi(tau,0) dtau. Discrete:
 * sum_{tau=0}^{t1-1} (A^tau)^T C^T C A^tau.
 */
inline GramianReport observability_gramian(const StateSpaceModel& model, double t1,
                                           double quad_tol = kGramianQuadTol) {
    GramianReport report;
    report.kind = GramianKind::Observability;
    report.t0 = 0.0;
    report.t1 = t1;
    const std::size_t n = model.order();

    if (model.is_continuous()) {
        if (!(t1 > 0.0)) throw InvalidHorizon("observability_gramian: need t1 > 0");
        // Duality: M(A, C, t1) equals the controllability integrand with
        // A^T and C^T.
        report.W = detail::integrate_outer_product(model.A.transpose(), model.C.transpose(), t1,
                                                   quad_tol, report.panels_used);
    } else {
        const double rt1 = std::round(t1);
        if (std::abs(t1 - rt1) > 1e-9 || rt1 < 1.0) {
            throw InvalidHorizon("observability_gramian: discrete t1 must be an integer >= 1");
        }
        Matrix acc(n, n);
        Matrix block = model.C;   // C A^tau
        for (long tau = 0; tau < static_cast<long>(rt1); ++tau) {
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c)
                    for (std::size_t k = 0; k < model.outputs(); ++k)
                        acc(r, c) += block(k, r) * block(k, c);
            block = block * model.A;
        }
        report.W = acc;
    }
    detail::finish_report(report);
    return report;
}

/**
 * @brief Minimum-energy input steering x0 to x1 by time t1.
 *
 * Discrete systems solve the horizon-t1 steering problem exactly through
 * the inverse controllability Gramian. Continuous systems are realized as
 * a zero-order-hold input on `grid` equal intervals: the hold-sampled
 * system is steered exactly through its own lifted Gramian, so simulating
 * the returned Samples signal reaches x1 up to solve roundoff.
 */
inline InputSignal min_energy_input(const StateSpaceModel& model, const Vector& x0,
                                    const Vector& x1, double t1, std::size_t grid = 64) {
    const std::size_t n = model.order();
    if (x0.size() != n || x1.size() != n) {
        throw DimensionMismatch("min_energy_input: state vectors must have the model order");
    }

    Matrix ad;
    Matrix bd;
    std::size_t horizon = 0;
    double hold = 1.0;
    if (model.is_discrete()) {
        const double rt1 = std::round(t1);
        if (std::abs(t1 - rt1) > 1e-9 || rt1 < 1.0) {
            throw InvalidHorizon("min_energy_input: discrete t1 must be an integer >= 1");
        }
        ad = model.A;
        bd = model.B;
        horizon = static_cast<std::size_t>(rt1);
    } else {
        if (!(t1 > 0.0)) throw InvalidHorizon("min_energy_input: need t1 > 0");
        if (grid < 1) throw InvalidGrid("min_energy_input: need grid >= 1");
        hold = t1 / static_cast<double>(grid);
        std::tie(ad, bd) = zoh_discretize(model.A, model.B, hold);
        horizon = grid;
    }

    // Lifted Gramian and reachability defect of the hold-sampled system.
    Matrix w(n, n);
    std::vector<Matrix> powers(horizon);   // Ad^k Bd for k = 0..horizon-1
    Matrix block = bd;
    for (std::size_t k = 0; k < horizon; ++k) {
        powers[k] = block;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t j = 0; j < bd.cols(); ++j)
                    w(r, c) += block(r, j) * block(c, j);
        block = ad * block;
    }
    w = symmetrized(w);
    const double scale = w.norm_inf();
    if (!(scale > 0.0) || !(min_symmetric_eigenvalue(w) > kGramianMinEigRel * scale)) {
        throw SingularGramian("min_energy_input: system not controllable on this horizon");
    }

    const Vector drift = matvec(matrix_power(ad, horizon), x0);
    const Vector eta = solve(w, sub(x1, drift));

    std::vector<double> times(horizon);
    std::vector<Vector> values(horizon);
    for (std::size_t k = 0; k < horizon; ++k) {
        // u(k) = Bd^T (Ad^(horizon-k-1))^T eta
        const Matrix& reach = powers[horizon - k - 1];
        Vector u(bd.cols(), 0.0);
        for (std::size_t j = 0; j < bd.cols(); ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += reach(i, j) * eta[i];
            u[j] = s;
        }
        times[k] = model.is_discrete() ? static_cast<double>(k) : hold * static_cast<double>(k);
        values[k] = u;
    }
    return InputSignal::samples(std::move(times), std::move(values));
}

/**
 * @brief Initial-state reconstruction from an input/output record.
 *
 * Subtracts the forced response, then solves the least-squares problem
 * min_x0 sum_k w_k || C phi(t_k, 0) x0 - r(t_k) ||^2 with trapezoid
 * weights (continuous) or unit weights over tau = 0..t1-1 (discrete).
 */
inline Vector reconstruct_initial_state(const StateSpaceModel& model, const InputSignal& u,
                                        const Trajectory& observed, double t1) {
    const std::size_t n = model.order();
    const std::size_t p = model.outputs();
    u.require_channels(model.inputs(), "reconstruct_initial_state");
    if (observed.size() < 2) throw GridMismatch("reconstruct_initial_state: record too short");
    if (observed.outputs.size() != observed.size() || observed.times.size() != observed.size()) {
        throw GridMismatch("reconstruct_initial_state: inconsistent record");
    }
    for (const auto& y : observed.outputs) {
        if (y.size() != p) {
            throw DimensionMismatch("reconstruct_initial_state: output dimension mismatch");
        }
    }

    std::size_t count = 0;    // number of usable record points
    Trajectory forced;
    std::vector<double> weights;

    if (model.is_discrete()) {
        const double rt1 = std::round(t1);
        if (std::abs(t1 - rt1) > 1e-9 || rt1 < 1.0) {
            throw InvalidHorizon("reconstruct_initial_state: discrete t1 must be an integer >= 1");
        }
        const auto horizon = static_cast<std::size_t>(rt1);
        if (observed.size() < horizon) {
            throw GridMismatch("reconstruct_initial_state: record shorter than the horizon");
        }
        for (std::size_t k = 0; k < horizon; ++k) {
            if (std::abs(observed.times[k] - static_cast<double>(k)) > 1e-9) {
                throw GridMismatch("reconstruct_initial_state: discrete record must be sampled at 0,1,2,...");
            }
        }
        forced = simulate_discrete(model, Vector(n, 0.0), u, static_cast<long>(horizon));
        count = horizon;
        weights.assign(count, 1.0);
    } else {
        if (!(t1 > 0.0)) throw InvalidHorizon("reconstruct_initial_state: need t1 > 0");
        const std::size_t steps = observed.size() - 1;
        const double h = t1 / static_cast<double>(steps);
        for (std::size_t k = 0; k < observed.size(); ++k) {
            const double expected = h * static_cast<double>(k);
            if (std::abs(observed.times[k] - expected) > 1e-9 * std::max(1.0, t1)) {
                throw GridMismatch("reconstruct_initial_state: record must be a uniform grid on [0, t1]");
            }
        }
        forced = simulate_continuous(model, Vector(n, 0.0), u, 0.0, t1, steps);
        count = observed.size();
        weights.assign(count, h);
        weights.front() = 0.5 * h;
        weights.back() = 0.5 * h;
    }

    // Normal equations of the weighted least-squares problem.
    Matrix normal(n, n);
    Vector rhs(n, 0.0);
    Matrix phi = Matrix::identity(n);
    const Matrix phi_step = model.is_discrete() ? model.A : expm(model.A, observed.times[1] - observed.times[0]);
    for (std::size_t k = 0; k < count; ++k) {
        const Matrix cphi = model.C * phi;
        const Vector r = sub(observed.outputs[k], forced.outputs[k]);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                double s = 0.0;
                for (std::size_t q = 0; q < p; ++q) s += cphi(q, i) * cphi(q, j);
                normal(i, j) += weights[k] * s;
            }
            double s = 0.0;
            for (std::size_t q = 0; q < p; ++q) s += cphi(q, i) * r[q];
            rhs[i] += weights[k] * s;
        }
        phi = phi_step * phi;
    }

    normal = symmetrized(normal);
    const double scale = normal.norm_inf();
    if (!(scale > 0.0) || !(min_symmetric_eigenvalue(normal) > kGramianMinEigRel * scale)) {
        throw SingularGramian("reconstruct_initial_state: system not observable on this horizon");
    }
    return solve(normal, rhs);
}

} // namespace lti
