#include <catch2/catch_amalgamated.hpp>

#include <lti/lti.hpp>

#include "support/test_helpers.hpp"

using namespace lti;
using namespace testsupport;

TEST_CASE("solve: identity system returns the right-hand side") {
    const Vector x = solve(Matrix::identity(2), Vector{3.0, 4.0});
    REQUIRE(x[0] == Catch::Approx(3.0).margin(1e-14));
    REQUIRE(x[1] == Catch::Approx(4.0).margin(1e-14));
}

TEST_CASE("solve: rotation equilibrium system") {
    // A x = -B u for the rotation system with omega = 2, u = 1.
    const Matrix a{{0.0, 2.0}, {-2.0, 0.0}};
    const Vector x = solve(a, Vector{0.0, -1.0});
    REQUIRE(x[0] == Catch::Approx(0.5).margin(1e-12));
    REQUIRE(x[1] == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("solve: rank-deficient matrix is rejected") {
    const Matrix a{{1.0, 2.0}, {2.0, 4.0}};
    REQUIRE_THROWS_AS(solve(a, Vector{1.0, 0.0}), SingularMatrix);
}

TEST_CASE("solve: shape mismatch is rejected") {
    REQUIRE_THROWS_AS(solve(Matrix::identity(2), Vector{1.0, 2.0, 3.0}), DimensionMismatch);
    REQUIRE_THROWS_AS(solve(Matrix(2, 3), Matrix(2, 1)), DimensionMismatch);
}

TEST_CASE("solve round-trip residual on random well-conditioned systems") {
    auto rng = make_rng(101);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 6);
        const Matrix a = random_well_conditioned(rng, n);
        const Vector b = random_vector(rng, n);
        const Vector x = solve(a, b);
        const Vector residual = sub(matvec(a, x), b);
        REQUIRE(norm_inf(residual) <= 1e-9 * (1.0 + norm_inf(b)));
    }
}

TEST_CASE("determinant: identity and paper values") {
    REQUIRE(determinant(Matrix::identity(3)) == 1.0);
    REQUIRE(determinant(Matrix{{1.0, 1.0}, {1.0, 2.0}}) == Catch::Approx(1.0).epsilon(1e-12));
    REQUIRE(determinant(Matrix{{1.0, 2.0}, {2.0, 4.0}}) == 0.0);
}

TEST_CASE("determinant: exact for triangular matrices") {
    const Matrix upper{{2.0, 5.0, -1.0}, {0.0, 3.0, 7.0}, {0.0, 0.0, 0.25}};
    REQUIRE(determinant(upper) == 2.0 * 3.0 * 0.25);
    const Matrix lower{{2.0, 0.0}, {3.0, 4.0}};
    REQUIRE(determinant(lower) == 8.0);
    REQUIRE(determinant(Matrix{{1.0, 0.08015}, {0.0, 0.6313}}) == 1.0 * 0.6313);
}

TEST_CASE("determinant multiplicativity on random 3x3 matrices") {
    auto rng = make_rng(202);
    for (int trial = 0; trial < 200; ++trial) {
        const Matrix a = random_matrix(rng, 3, 3);
        const Matrix b = random_matrix(rng, 3, 3);
        const double lhs = determinant(a * b);
        const double rhs = determinant(a) * determinant(b);
        REQUIRE(std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("inverse round trip") {
    auto rng = make_rng(303);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 4);
        const Matrix a = random_well_conditioned(rng, n);
        REQUIRE(approx_equal(a * inverse(a), Matrix::identity(n), 1e-10));
    }
}

TEST_CASE("condition number flags near-singular matrices") {
    REQUIRE(condition_inf(Matrix::identity(3)) == Catch::Approx(1.0));
    REQUIRE(condition_inf(Matrix{{1.0, 2.0}, {2.0, 4.0}}) == std::numeric_limits<double>::infinity());
    REQUIRE_FALSE(is_numerically_nonsingular(Matrix{{1.0, 1.0}, {1.0, 1.0 + 1e-15}}));
}

TEST_CASE("matrix_power matches repeated multiplication") {
    const Matrix a{{1.0, 1.0}, {0.0, 1.0}};
    const Matrix a5 = matrix_power(a, 5);
    REQUIRE(a5(0, 1) == 5.0);
    REQUIRE(matrix_power(a, 0) == Matrix::identity(2));
}

TEST_CASE("expm: identity at t = 0") {
    auto rng = make_rng(404);
    const Matrix a = random_matrix(rng, 3, 3);
    REQUIRE(expm(a, 0.0) == Matrix::identity(3));
}

TEST_CASE("expm: quarter-turn rotation") {
    const Matrix a{{0.0, 1.0}, {-1.0, 0.0}};
    const double t = std::acos(-1.0) / 2.0;
    const Matrix expected{{0.0, 1.0}, {-1.0, 0.0}};
    REQUIRE(approx_equal(expm(a, t), expected, 1e-12));
}

TEST_CASE("expm: nilpotent series terminates") {
    const Matrix a{{0.0, 1.0}, {0.0, 0.0}};
    const Matrix expected{{1.0, 3.0}, {0.0, 1.0}};
    REQUIRE(approx_equal(expm(a, 3.0), expected, 1e-13));
}

TEST_CASE("expm group law and inverse on random matrices") {
    auto rng = make_rng(505);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
        Matrix a = random_matrix(rng, n, n);
        if (a.norm_inf() > 2.0) a *= 2.0 / a.norm_inf();
        const double s = uniform(rng, -2.0, 2.0);
        const double t = uniform(rng, -2.0, 2.0);
        REQUIRE(approx_equal(expm(a, s) * expm(a, t), expm(a, s + t), 1e-9));
        REQUIRE(approx_equal(expm(a, t) * expm(a, -t), Matrix::identity(n), 1e-9));
    }
}

TEST_CASE("expm matches the scalar exponential against large scaling") {
    const Matrix a{{-3.0, 0.0}, {0.0, 2.5}};
    const Matrix e = expm(a, 10.0);   // ||At|| = 30, within the accuracy envelope
    REQUIRE(e(0, 0) == Catch::Approx(std::exp(-30.0)).epsilon(1e-10));
    REQUIRE(e(1, 1) == Catch::Approx(std::exp(25.0)).epsilon(1e-10));
    REQUIRE(e(0, 1) == 0.0);
}

TEST_CASE("zoh_discretize reproduces the integrator closed form") {
    // x' = u: Ad = 1, Bd = h.
    const auto [ad, bd] = zoh_discretize(Matrix{{0.0}}, Matrix{{1.0}}, 0.25);
    REQUIRE(ad(0, 0) == Catch::Approx(1.0));
    REQUIRE(bd(0, 0) == Catch::Approx(0.25).epsilon(1e-14));
}
