#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "eigen.hpp"
#include "errors.hpp"
#include "expm.hpp"
#include "linalg.hpp"
#include "matrix.hpp"
#include "state_space.hpp"

namespace lti {

/// Tolerance for eigenvalue sign tests; the rotation system of the worked
/// examples sits exactly on the stability boundary, hence the explicit
/// Marginal verdict.
inline constexpr double kStabilityTol = 1e-9;

enum class StabilityClass { AsymptoticallyStable, Marginal, Unstable };

inline std::string to_string(StabilityClass c) {
    switch (c) {
        case StabilityClass::AsymptoticallyStable: return "AsymptoticallyStable";
        case StabilityClass::Marginal: return "Marginal";
        case StabilityClass::Unstable: return "Unstable";
    }
    return "Unstable";
}

enum class LyapunovVerdict { CertifiesStability, CertifiesAsymptotic, Fails };

inline std::string to_string(LyapunovVerdict v) {
    switch (v) {
        case LyapunovVerdict::CertifiesStability: return "CertifiesStability";
        case LyapunovVerdict::CertifiesAsymptotic: return "CertifiesAsymptotic";
        case LyapunovVerdict::Fails: return "Fails";
    }
    return "Fails";
}

struct LyapunovCertificate {
    Matrix P;
    LyapunovVerdict verdict = LyapunovVerdict::Fails;
    Matrix derivative_form;   // S = A^T P + P A
    double min_eig_P = 0.0;
    double max_eig_S = 0.0;
};

struct StabilityReport {
    Spectrum eigenvalues;
    StabilityClass classification = StabilityClass::Unstable;
    bool bibo_by_theorem33 = false;
    std::optional<LyapunovCertificate> lyapunov_certificate;
};

/**
 * @brief Constant-input equilibrium: the solution of A x + B u = 0.
 */
inline Vector equilibrium(const StateSpaceModel& model, const Vector& u_const) {
    if (!model.is_continuous()) {
        throw TimeDomainMismatch("equilibrium: continuous models only");
    }
    if (u_const.size() != model.inputs()) {
        throw DimensionMismatch("equilibrium: input vector length must equal the input count");
    }
    return solve(model.A, scaled(matvec(model.B, u_const), -1.0));
}

/**
 * @brief Eigenvalue stability classification.
 *
 * AsymptoticallyStable requires every eigenvalue strictly inside the
 * stability region (half plane or unit disk) by kStabilityTol; Unstable
 * requires one strictly outside; everything else is Marginal. The BIBO
 * flag reports the strict eigenvalue sufficient condition.
 */
inline StabilityReport classify(const StateSpaceModel& model) {
    StabilityReport report;
    report.eigenvalues = eigenvalues(model.A);

    bool all_strictly_inside = true;
    bool any_strictly_outside = false;
    for (const auto& lambda : report.eigenvalues.values) {
        const double margin = model.is_continuous() ? lambda.real() : std::abs(lambda) - 1.0;
        if (!(margin < -kStabilityTol)) all_strictly_inside = false;
        if (margin > kStabilityTol) any_strictly_outside = true;
    }
    report.classification = all_strictly_inside ? StabilityClass::AsymptoticallyStable
                            : any_strictly_outside ? StabilityClass::Unstable
                                                   : StabilityClass::Marginal;
    report.bibo_by_theorem33 = all_strictly_inside;
    return report;
}

/**
 * @brief Checks the quadratic candidate V(x) = (x - x_bar)^T P (x - x_bar).
 *
 * P must be symmetric and positive definite. The derivative of V along
 * free motion is the quadratic form of S = A^T P + P A; S negative
 * definite certifies asymptotic stability, negative semidefinite (within
 * tolerance) certifies stability.
 */
inline LyapunovCertificate lyapunov_check(const StateSpaceModel& model, const Vector& x_bar,
                                          const Matrix& p) {
    if (!model.is_continuous()) {
        throw TimeDomainMismatch("lyapunov_check: continuous models only");
    }
    if (x_bar.size() != model.order()) {
        throw DimensionMismatch("lyapunov_check: x_bar length must equal the model order");
    }
    if (!p.is_square() || p.rows() != model.order()) {
        throw DimensionMismatch("lyapunov_check: P must be n x n");
    }
    if (asymmetry_inf(p) > 1e-10 * std::max(1.0, p.norm_inf())) {
        throw NonSymmetricWeight("lyapunov_check: P is not symmetric");
    }

    LyapunovCertificate cert;
    cert.P = symmetrized(p);
    cert.min_eig_P = min_symmetric_eigenvalue(cert.P);
    if (!(cert.min_eig_P > kStabilityTol * cert.P.norm_inf())) {
        throw NotPositiveDefinite("lyapunov_check: P is not positive definite");
    }

    cert.derivative_form = model.A.transpose() * cert.P + cert.P * model.A;
    cert.max_eig_S = max_symmetric_eigenvalue(cert.derivative_form);
    const double s_scale = kStabilityTol * cert.derivative_form.norm_inf();
    if (cert.max_eig_S < -s_scale) {
        cert.verdict = LyapunovVerdict::CertifiesAsymptotic;
    } else if (cert.max_eig_S <= s_scale) {
        cert.verdict = LyapunovVerdict::CertifiesStability;
    } else {
        cert.verdict = LyapunovVerdict::Fails;
    }
    return cert;
}

enum class BiboVerdict { Bounded, Growing };

inline std::string to_string(BiboVerdict v) {
    return v == BiboVerdict::Bounded ? "Bounded" : "Growing";
}

/// Trend threshold for the heuristic Bounded/Growing verdict.
inline constexpr double kBiboSlopeTol = 1e-6;

/**
 * @brief Cumulative impulse-response absolute integrals
 *        I_ij(t) = int_0^t |(C exp(A s) B)_ij| ds.
 *
 * integral_values[k] holds the p x m matrix I(sample_times[k]); entries
 * are non-decreasing in t. The Growing/Bounded verdict is a declared
 * heuristic trend test on the last quarter of the horizon; the rigorous
 * sufficient condition lives in classify().
 */
struct BiboProfile {
    std::vector<double> sample_times;
    std::vector<Matrix> integral_values;
    BiboVerdict verdict = BiboVerdict::Bounded;
    std::size_t panels_used = 0;
};

inline BiboProfile bibo_integral(const StateSpaceModel& model, double t_end, std::size_t samples,
                                 double quad_tol = 1e-7) {
    if (!model.is_continuous()) {
        throw TimeDomainMismatch("bibo_integral: continuous models only");
    }
    if (!(t_end > 0.0)) throw InvalidGrid("bibo_integral: need t_end > 0");
    if (samples < 2) throw InvalidGrid("bibo_integral: need at least 2 samples");

    const std::size_t p = model.outputs();
    const std::size_t m = model.inputs();

    // Cumulative trapezoid on a uniform fine grid, globally doubled until
    // the endpoint settles. The integrand |C exp(A s) B| has kinks at sign
    // changes, where trapezoid keeps its robustness.
    const std::size_t cap = 1u << 20;
    std::vector<Matrix> profile;
    double previous_endpoint_sum = -1.0;
    std::size_t refine = 8;
    std::size_t used = 0;

    for (;; refine *= 2) {
        const std::size_t fine = samples * refine;
        const double h = t_end / static_cast<double>(fine);
        const Matrix step = expm(model.A, h);

        profile.assign(samples + 1, Matrix(p, m));
        Matrix phi = Matrix::identity(model.order());
        Matrix integrand_prev(p, m);
        {
            const Matrix g = model.C * model.B;
            for (std::size_t i = 0; i < p; ++i)
                for (std::size_t j = 0; j < m; ++j) integrand_prev(i, j) = std::abs(g(i, j));
        }
        Matrix acc(p, m);
        for (std::size_t k = 1; k <= fine; ++k) {
            phi = phi * step;
            const Matrix g = model.C * phi * model.B;
            for (std::size_t i = 0; i < p; ++i) {
                for (std::size_t j = 0; j < m; ++j) {
                    const double gij = std::abs(g(i, j));
                    acc(i, j) += 0.5 * h * (integrand_prev(i, j) + gij);
                    integrand_prev(i, j) = gij;
                }
            }
            if (k % refine == 0) profile[k / refine] = acc;
        }

        double endpoint_sum = 0.0;
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < m; ++j) endpoint_sum += profile[samples](i, j);
        used = fine;
        if (previous_endpoint_sum >= 0.0 &&
            std::abs(endpoint_sum - previous_endpoint_sum) < quad_tol) {
            break;
        }
        previous_endpoint_sum = endpoint_sum;
        if (fine * 2 > cap) break;
    }

    BiboProfile result;
    result.panels_used = used;
    result.sample_times.resize(samples + 1);
    for (std::size_t k = 0; k <= samples; ++k) {
        result.sample_times[k] = t_end * static_cast<double>(k) / static_cast<double>(samples);
    }
    result.integral_values = std::move(profile);

    // Average slope over the last quarter of the horizon, per channel pair.
    const std::size_t k_end = samples;
    const std::size_t k_q = (3 * samples) / 4;
    const double dt = result.sample_times[k_end] - result.sample_times[k_q];
    bool growing = false;
    for (std::size_t i = 0; i < p && !growing; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double slope =
                (result.integral_values[k_end](i, j) - result.integral_values[k_q](i, j)) / dt;
            if (slope > kBiboSlopeTol) {
                growing = true;
                break;
            }
        }
    }
    result.verdict = growing ? BiboVerdict::Growing : BiboVerdict::Bounded;
    return result;
}

} // namespace lti
