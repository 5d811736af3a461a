#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "matrix.hpp"

namespace lti {

/// Desk-scale bound for the eigenvalue solver.
inline constexpr std::size_t kMaxEigenOrder = 32;

/// A subdiagonal is deflated when it falls below this fraction of its
/// neighbors' magnitude. Setting it to zero is a backward perturbation of
/// the same relative size, far inside the 1e-8 residual contract; pure
/// machine-epsilon deflation can stall on chase roundoff.
inline constexpr double kEigenDeflationTol = 1e-12;

/// Once a block has iterated this long without deflating, shift
/// information is being lost crossing small interior subdiagonals and the
/// iteration plateaus. The relaxed tier splits the block at any
/// subdiagonal this small; the perturbation still sits an order below the
/// residual contract.
inline constexpr int    kEigenStallIterations  = 16;
inline constexpr double kEigenStalledDeflation = 1e-9;

/**
 * @brief Eigenvalues of a real matrix.
 *
 * Complex values occur in exact conjugate pairs (each 2x2 deflation emits
 * a value and its conjugate). Entries are sorted by real part, then by
 * imaginary part, so output is deterministic.
 */
struct Spectrum {
    std::vector<std::complex<double>> values;

    std::size_t size() const noexcept { return values.size(); }

    double max_real() const {
        double m = -std::numeric_limits<double>::infinity();
        for (const auto& v : values) m = std::max(m, v.real());
        return m;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : values) m = std::max(m, std::abs(v));
        return m;
    }
};

namespace detail {

/// Householder similarity reduction to upper Hessenberg form.
inline Matrix hessenberg(Matrix h) {
    const std::size_t n = h.rows();
    if (n < 3) return h;
    std::vector<double> v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double col_norm = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) col_norm += h(i, k) * h(i, k);
        col_norm = std::sqrt(col_norm);
        if (col_norm == 0.0) continue;

        const double x0 = h(k + 1, k);
        const double alpha = (x0 >= 0.0) ? -col_norm : col_norm;
        v[k + 1] = x0 - alpha;
        for (std::size_t i = k + 2; i < n; ++i) v[i] = h(i, k);
        double vtv = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) vtv += v[i] * v[i];
        if (vtv == 0.0) continue;
        const double beta = 2.0 / vtv;

        // Left: H <- P H on rows k+1..n-1.
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = k + 1; i < n; ++i) s += v[i] * h(i, j);
            s *= beta;
            for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= v[i] * s;
        }
        // Right: H <- H P on columns k+1..n-1.
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) s += h(i, j) * v[j];
            s *= beta;
            for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= s * v[j];
        }
        h(k + 1, k) = alpha;
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
    }
    return h;
}

/// Eigenvalues of a 2x2 block, with a cancellation-safe real branch.
inline void eig2x2(double a, double b, double c, double d,
                   std::complex<double>& l1, std::complex<double>& l2) {
    const double mid = 0.5 * (a + d);
    const double p = 0.5 * (a - d);
    const double disc = p * p + b * c;
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        const double big = mid + ((mid >= 0.0) ? s : -s);
        const double det = a * d - b * c;
        if (big != 0.0) {
            l1 = big;
            l2 = det / big;
        } else {
            l1 = mid + s;
            l2 = mid - s;
        }
    } else {
        const double s = std::sqrt(-disc);
        l1 = {mid, s};
        l2 = {mid, -s};
    }
}

/// Applies an implicit 3x3 (or trailing 2x2) Householder similarity on
/// rows/columns k..k+len-1 of H. Breadth is the full matrix: entries
/// outside the bulge are exact zeros, so no fill or error is introduced.
inline void apply_bulge_reflector(Matrix& h, std::size_t k, const double* v, std::size_t len) {
    double vtv = 0.0;
    for (std::size_t i = 0; i < len; ++i) vtv += v[i] * v[i];
    if (vtv <= 0.0) return;
    const double beta = 2.0 / vtv;
    const std::size_t n = h.rows();
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < len; ++i) s += v[i] * h(k + i, j);
        s *= beta;
        for (std::size_t i = 0; i < len; ++i) h(k + i, j) -= v[i] * s;
    }
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < len; ++j) s += h(i, k + j) * v[j];
        s *= beta;
        for (std::size_t j = 0; j < len; ++j) h(i, k + j) -= s * v[j];
    }
}

/// Householder vector mapping x to a multiple of e1; returns false when
/// x is already in that form.
inline bool make_reflector(double* v, std::size_t len) {
    double nrm = 0.0;
    for (std::size_t i = 0; i < len; ++i) nrm += v[i] * v[i];
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) return false;
    bool trailing_zero = true;
    for (std::size_t i = 1; i < len; ++i)
        if (v[i] != 0.0) trailing_zero = false;
    if (trailing_zero) return false;
    const double alpha = (v[0] >= 0.0) ? -nrm : nrm;
    v[0] -= alpha;
    return true;
}

} // namespace detail

/**
 * @brief Eigenvalues via Hessenberg reduction and Francis double-shift QR.
 *
 * Orders up to kMaxEigenOrder. Throws ConvergenceFailure if a block fails
 * to deflate within the sweep budget.
 */
inline Spectrum eigenvalues(const Matrix& a) {
    a.require_square("eigenvalues");
    if (a.rows() > kMaxEigenOrder) {
        throw DimensionMismatch("eigenvalues: order exceeds desk-scale bound of " +
                                std::to_string(kMaxEigenOrder));
    }
    if (!a.all_finite()) throw NonFiniteValue("eigenvalues: non-finite entries");

    const std::size_t n = a.rows();
    Spectrum spec;
    spec.values.reserve(n);

    if (n == 1) {
        spec.values.push_back(a(0, 0));
        return spec;
    }

    Matrix h = detail::hessenberg(a);
    const double hnorm = std::max(h.norm_inf(), std::numeric_limits<double>::min());

    long hi = static_cast<long>(n) - 1;
    int its_since_deflation = 0;
    const int per_block_budget = 60;

    while (hi >= 0) {
        // Walk up to the first negligible subdiagonal above hi.
        const double deflate_tol = its_since_deflation >= kEigenStallIterations
                                       ? kEigenStalledDeflation
                                       : kEigenDeflationTol;
        long lo = hi;
        while (lo > 0) {
            double s = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
            if (s == 0.0) s = hnorm;
            if (std::abs(h(lo, lo - 1)) <= deflate_tol * s) {
                h(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }

        if (lo == hi) {
            spec.values.push_back(h(hi, hi));
            --hi;
            its_since_deflation = 0;
            continue;
        }
        if (lo == hi - 1) {
            std::complex<double> l1, l2;
            detail::eig2x2(h(lo, lo), h(lo, hi), h(hi, lo), h(hi, hi), l1, l2);
            spec.values.push_back(l1);
            spec.values.push_back(l2);
            hi -= 2;
            its_since_deflation = 0;
            continue;
        }

        ++its_since_deflation;
        if (its_since_deflation > per_block_budget) {
            throw ConvergenceFailure("eigenvalues: QR sweep budget exceeded");
        }

        // Shift polynomial (H - s1)(H - s2) with s1+s2 = sum, s1*s2 = prod.
        double sum, prod;
        if (its_since_deflation % 10 == 0) {
            // Exceptional shift to break symmetry-induced cycles.
            const double w = std::abs(h(hi, hi - 1)) + std::abs(h(hi - 1, hi - 2));
            sum = 1.5 * w;
            prod = -0.4375 * w * w;
        } else {
            sum = h(hi - 1, hi - 1) + h(hi, hi);
            prod = h(hi - 1, hi - 1) * h(hi, hi) - h(hi - 1, hi) * h(hi, hi - 1);
        }

        double x = h(lo, lo) * h(lo, lo) + h(lo, lo + 1) * h(lo + 1, lo) - sum * h(lo, lo) + prod;
        double y = h(lo + 1, lo) * (h(lo, lo) + h(lo + 1, lo + 1) - sum);
        double z = (lo + 2 <= hi) ? h(lo + 2, lo + 1) * h(lo + 1, lo) : 0.0;

        for (long k = lo; k <= hi - 2; ++k) {
            double v[3] = {x, y, z};
            if (detail::make_reflector(v, 3)) {
                detail::apply_bulge_reflector(h, static_cast<std::size_t>(k), v, 3);
            }
            x = h(k + 1, k);
            y = h(k + 2, k);
            z = (k + 3 <= hi) ? h(k + 3, k) : 0.0;
        }
        // Restore the Hessenberg profile in the last two rows.
        {
            double v[2] = {x, y};
            if (detail::make_reflector(v, 2)) {
                detail::apply_bulge_reflector(h, static_cast<std::size_t>(hi - 1), v, 2);
            }
        }
    }

    std::sort(spec.values.begin(), spec.values.end(),
              [](const std::complex<double>& p, const std::complex<double>& q) {
                  if (p.real() != q.real()) return p.real() < q.real();
                  return p.imag() < q.imag();
              });
    return spec;
}

/// Smallest eigenvalue of a (numerically) symmetric matrix; used for
/// definiteness tests. The input is symmetrized first.
inline double min_symmetric_eigenvalue(const Matrix& s) {
    const Spectrum spec = eigenvalues(symmetrized(s));
    double m = std::numeric_limits<double>::infinity();
    for (const auto& v : spec.values) m = std::min(m, v.real());
    return m;
}

inline double max_symmetric_eigenvalue(const Matrix& s) {
    const Spectrum spec = eigenvalues(symmetrized(s));
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& v : spec.values) m = std::max(m, v.real());
    return m;
}

} // namespace lti
