#pragma once

#include <algorithm>
#include <complex>
#include <random>
#include <vector>

#include <lti/lti.hpp>

namespace testsupport {

using lti::Matrix;
using lti::Vector;

inline std::mt19937_64 make_rng(unsigned long long seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                            double lo = -1.0, double hi = 1.0) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(rng, lo, hi);
    return m;
}

inline Vector random_vector(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
    Vector v(n);
    for (double& x : v) x = uniform(rng, lo, hi);
    return v;
}

/// Rejection sampling keeps the solve/determinant property tests on
/// matrices their contracts cover.
inline Matrix random_well_conditioned(std::mt19937_64& rng, std::size_t n,
                                      double cond_limit = 1e4) {
    for (;;) {
        Matrix m = random_matrix(rng, n, n);
        if (lti::condition_inf(m) < cond_limit) return m;
    }
}

inline bool approx_equal(const Matrix& a, const Matrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    return lti::max_abs_diff(a, b) <= tol;
}

inline bool approx_equal(const Vector& a, const Vector& b, double tol) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > tol) return false;
    return true;
}

inline std::vector<std::complex<double>> sorted_complex(std::vector<std::complex<double>> v) {
    std::sort(v.begin(), v.end(), [](const auto& p, const auto& q) {
        if (p.real() != q.real()) return p.real() < q.real();
        return p.imag() < q.imag();
    });
    return v;
}

/// Multiset comparison of complex values within an absolute tolerance.
inline bool same_spectrum(std::vector<std::complex<double>> a,
                          std::vector<std::complex<double>> b, double tol) {
    if (a.size() != b.size()) return false;
    for (const auto& x : a) {
        auto best = b.end();
        double best_dist = tol;
        for (auto it = b.begin(); it != b.end(); ++it) {
            const double d = std::abs(x - *it);
            if (d <= best_dist) {
                best_dist = d;
                best = it;
            }
        }
        if (best == b.end()) return false;
        b.erase(best);
    }
    return true;
}

/// Characteristic polynomial by the Faddeev-LeVerrier trace recursion;
/// an implementation-independent oracle for the eigenvalue route.
inline std::vector<double> charpoly_faddeev(const Matrix& a) {
    const std::size_t n = a.rows();
    std::vector<double> c(n + 1, 0.0);
    c[0] = 1.0;
    Matrix m = Matrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        m = a * m;
        const double ck = -m.trace() / static_cast<double>(k);
        c[k] = ck;
        for (std::size_t i = 0; i < n; ++i) m(i, i) += ck;
    }
    return c;
}

/// Random continuous or discrete LTI model with moderate norms.
inline lti::StateSpaceModel random_model(std::mt19937_64& rng, lti::TimeDomain domain,
                                         std::size_t n, std::size_t m, std::size_t p,
                                         double scale = 1.0) {
    return lti::StateSpaceModel(domain, random_matrix(rng, n, n, -scale, scale),
                                random_matrix(rng, n, m, -scale, scale),
                                random_matrix(rng, p, n, -scale, scale));
}

/// Random single-input model whose controllability matrix is comfortably
/// nonsingular.
inline lti::StateSpaceModel random_controllable(std::mt19937_64& rng, lti::TimeDomain domain,
                                                std::size_t n, std::size_t p = 1,
                                                double scale = 1.0) {
    for (;;) {
        auto model = random_model(rng, domain, n, 1, p, scale);
        const Matrix ctrb = lti::controllability_matrix(model.A, model.B);
        if (lti::condition_inf(ctrb) < 1e6) return model;
    }
}

inline lti::StateSpaceModel random_observable(std::mt19937_64& rng, lti::TimeDomain domain,
                                              std::size_t n, std::size_t m = 1,
                                              double scale = 1.0) {
    for (;;) {
        auto model = random_model(rng, domain, n, m, 1, scale);
        const Matrix obsv = lti::observability_matrix(model.A, model.C);
        if (lti::condition_inf(obsv) < 1e6) return model;
    }
}

/// Exact continuous controllability Gramian through the exponential of
/// the block matrix [[-A, B B^T], [0, A^T]]; independent of the Simpson
/// quadrature route.
inline Matrix gramian_block_exponential(const Matrix& a, const Matrix& b, double t) {
    const std::size_t n = a.rows();
    Matrix block(2 * n, 2 * n);
    const Matrix bbt = b * b.transpose();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            block(i, j) = -a(i, j);
            block(i, n + j) = bbt(i, j);
            block(n + i, n + j) = a(j, i);
        }
    }
    const Matrix e = lti::expm(block, t);
    Matrix f2(n, n);
    Matrix g1(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            g1(i, j) = e(i, n + j);
            f2(i, j) = e(n + i, n + j);
        }
    }
    return f2.transpose() * g1;
}

inline lti::StateSpaceModel rotation_model(double omega) {
    return lti::StateSpaceModel(lti::TimeDomain::Continuous,
                                Matrix{{0.0, omega}, {-omega, 0.0}},
                                Matrix{{0.0}, {1.0}},
                                Matrix{{1.0, 1.0}});
}

inline const lti::StateSpaceModel& double_integrator_model() {
    static const lti::StateSpaceModel model(lti::TimeDomain::Discrete,
                                            Matrix{{1.0, 1.0}, {0.0, 1.0}},
                                            Matrix{{0.0}, {1.0}},
                                            Matrix{{1.0, 1.0}});
    return model;
}

/// Digital positioning plant. The state map's off-diagonal entry and the
/// extra digits of B are pinned by consistency with the textbook
/// transformation matrix (its second column equals B).
inline const lti::StateSpaceModel& digital_position_model() {
    static const lti::StateSpaceModel model(lti::TimeDomain::Discrete,
                                            Matrix{{1.0, 0.08015}, {0.0, 0.6313}},
                                            Matrix{{0.00339}, {0.06308}},
                                            Matrix{{1.0, 0.0}});
    return model;
}

} // namespace testsupport
