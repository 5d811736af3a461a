#include <catch2/catch_amalgamated.hpp>

#include <complex>

#include <lti/lti.hpp>

#include "support/test_helpers.hpp"

using namespace lti;
using namespace testsupport;

TEST_CASE("eigenvalues: diagonal matrix") {
    const Spectrum s = eigenvalues(Matrix{{-1.0, 0.0}, {0.0, -2.0}});
    REQUIRE(same_spectrum(s.values, {{-1.0, 0.0}, {-2.0, 0.0}}, 1e-12));
}

TEST_CASE("eigenvalues: rotation block gives a conjugate pair") {
    const Spectrum s = eigenvalues(Matrix{{0.0, 2.0}, {-2.0, 0.0}});
    REQUIRE(same_spectrum(s.values, {{0.0, 2.0}, {0.0, -2.0}}, 1e-12));
}

TEST_CASE("eigenvalues: triangular matrix eigenvalues are the diagonal") {
    const Spectrum s = eigenvalues(Matrix{{1.0, 0.08015}, {0.0, 0.6313}});
    REQUIRE(same_spectrum(s.values, {{1.0, 0.0}, {0.6313, 0.0}}, 1e-12));
}

TEST_CASE("eigenvalues: permutation cycle needs exceptional shifts") {
    const Matrix p{{0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}};
    const Spectrum s = eigenvalues(p);
    const double half_sqrt3 = std::sqrt(3.0) / 2.0;
    REQUIRE(same_spectrum(s.values,
                          {{1.0, 0.0}, {-0.5, half_sqrt3}, {-0.5, -half_sqrt3}}, 1e-9));
}

TEST_CASE("eigenvalues: order bound enforced") {
    REQUIRE_THROWS_AS(eigenvalues(Matrix(33, 33)), DimensionMismatch);
    REQUIRE_THROWS_AS(eigenvalues(Matrix(2, 3)), DimensionMismatch);
}

TEST_CASE("spectrum invariants on random matrices") {
    auto rng = make_rng(606);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 5);
        const Matrix a = random_matrix(rng, n, n);
        const Spectrum s = eigenvalues(a);
        REQUIRE(s.size() == n);

        // Conjugate pairing: the spectrum equals its conjugate as a multiset.
        std::vector<std::complex<double>> conj;
        for (const auto& v : s.values) conj.push_back(std::conj(v));
        REQUIRE(same_spectrum(s.values, conj, 1e-8));

        // Product of eigenvalues equals the determinant.
        std::complex<double> prod = 1.0;
        for (const auto& v : s.values) prod *= v;
        const double det = determinant(a);
        REQUIRE(std::abs(prod.real() - det) <= 1e-8 * std::max(1.0, std::abs(det)));
        REQUIRE(std::abs(prod.imag()) <= 1e-8 * std::max(1.0, std::abs(det)));

        // Sum of eigenvalues equals the trace.
        std::complex<double> sum = 0.0;
        for (const auto& v : s.values) sum += v;
        REQUIRE(std::abs(sum.real() - a.trace()) <= 1e-8 * std::max(1.0, std::abs(a.trace())));
    }
}

TEST_CASE("spectrum of expm equals exp of spectrum") {
    auto rng = make_rng(707);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
        Matrix a = random_matrix(rng, n, n);
        if (a.norm_inf() > 2.0) a *= 2.0 / a.norm_inf();

        const Spectrum sa = eigenvalues(a);
        std::vector<std::complex<double>> expected;
        for (const auto& v : sa.values) expected.push_back(std::exp(v));
        const Spectrum se = eigenvalues(expm(a, 1.0));
        REQUIRE(same_spectrum(se.values, expected, 1e-7));
    }
}

TEST_CASE("symmetric eigenvalue helpers bracket the definiteness tests") {
    const Matrix s{{2.0, 1.0}, {1.0, 2.0}};
    REQUIRE(min_symmetric_eigenvalue(s) == Catch::Approx(1.0).margin(1e-10));
    REQUIRE(max_symmetric_eigenvalue(s) == Catch::Approx(3.0).margin(1e-10));
}
