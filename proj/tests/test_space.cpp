#include <doctest.h>

#include <cmath>

#include "blaschke_lab/blaschke.hpp"
#include "blaschke_lab/errors.hpp"
#include "blaschke_lab/random.hpp"
#include "blaschke_lab/space.hpp"
#include "helpers.hpp"

using namespace blaschke_lab;
using test::max_diff;

TEST_CASE("weighted inner product") {
    const Weight w0{0.0}, wm{-1.0};
    CHECK(std::abs(weighted_inner(TaylorPoly::monomial(2, 4), TaylorPoly::monomial(3, 4), w0)) == 0.0);
    CHECK(weighted_inner(TaylorPoly::monomial(3, 3), TaylorPoly::monomial(3, 3), wm).real() == doctest::Approx(0.25));
    CHECK(weighted_inner(TaylorPoly{1.0, 1.0}, TaylorPoly{1.0, 1.0}, w0).real() == doctest::Approx(2.0));

    Rng rng(11, 0);
    for (int i = 0; i < 10; ++i) {
        const TaylorPoly f = rng.poly(7), g = rng.poly(5);
        const Complex a = weighted_inner(f, g, Weight{0.7});
        const Complex b = weighted_inner(g, f, Weight{0.7});
        CHECK(std::abs(a - std::conj(b)) < 1e-14);
    }
}

TEST_CASE("weighted norm") {
    CHECK(weighted_norm(TaylorPoly::zero(3), Weight{1.0}) == 0.0);
    for (double a : {-1.0, 0.0, 1.5})
        CHECK(weighted_norm(TaylorPoly::monomial(4, 4), Weight{a}) == doctest::Approx(std::pow(5.0, a / 2)));
    CHECK(weighted_norm(TaylorPoly{1.0, 2.0, 3.0}, Weight{-1.0}) == doctest::Approx(std::sqrt(6.0)));
}

TEST_CASE("multiply against a brute-force convolution") {
    const TaylorPoly f{1.0, Complex(0, 2), -3.0};
    CHECK(max_diff(multiply(f, TaylorPoly{1.0}, 2), f, 2) == 0.0);
    CHECK(max_diff(multiply(TaylorPoly{1.0, 1.0}, TaylorPoly{1.0, -1.0}, 2), TaylorPoly{1.0, 0.0, -1.0}, 2) == 0.0);

    Rng rng(12, 0);
    for (int i = 0; i < 5; ++i) {
        const TaylorPoly a = rng.poly(10), b = rng.poly(10);
        std::vector<Complex> ref(21);
        for (std::size_t p = 0; p <= 10; ++p)
            for (std::size_t q = 0; q <= 10; ++q) ref[p + q] += a[p] * b[q];
        CHECK(max_diff(multiply(a, b, 20), TaylorPoly(ref), 20) < 1e-14);
        CHECK(max_diff(multiply(a, b, 7), TaylorPoly(ref), 7) < 1e-14);
    }
}

TEST_CASE("composition") {
    const BlaschkeProduct m = BlaschkeProduct::mobius_power(0.5, 1);
    const TaylorPoly b = taylor(m, 40);
    CHECK(max_diff(compose_truncated(TaylorPoly{0.0, 1.0}, b, 40), b, 40) < 1e-15);
    CHECK(max_diff(compose_truncated(TaylorPoly::monomial(2, 2), TaylorPoly::monomial(3, 3), 6),
                   TaylorPoly::monomial(6, 6), 6) == 0.0);

    // f = 1/(1 - z/2), summed at points of |z| <= 0.5 against the closed form.
    std::vector<Complex> fc(200);
    for (std::size_t k = 0; k < fc.size(); ++k) fc[k] = std::pow(0.5, static_cast<double>(k));
    const std::size_t D = 80;
    const TaylorPoly g = compose_truncated(TaylorPoly(fc), taylor(m, D), D);
    Rng rng(13, 0);
    for (int i = 0; i < 20; ++i) {
        const Complex z = rng.disc(0.5);
        const Complex Bz = (z - 0.5) / (1.0 - 0.5 * z);
        CHECK(std::abs(test::sum_series(g, z) - 1.0 / (1.0 - Bz / 2.0)) < 1e-10);
    }
}

TEST_CASE("composition consistency at D = 64") {
    const BlaschkeProduct B(0.3, {{Complex(0.8, 0), 1}, {Complex(-0.2, 0.5), 1}});
    const std::size_t D = 64;
    const TaylorPoly f{1.0, -2.0, Complex(0, 1), 0.5};
    const TaylorPoly g = compose_truncated(f, taylor(B, D), D);
    for (const Complex z : {Complex(0.1, 0.2), Complex(-0.3, 0.0), Complex(0.0, -0.25)}) {
        const Complex Bz = eval(B, z);
        CHECK(std::abs(test::sum_series(g, z) - f.evaluate(Bz)) < 1e-9);
    }
}

TEST_CASE("composition that does not settle raises") {
    // f(B) with |B(0)| close to 1 and slowly decaying f needs more than 4D terms.
    std::vector<Complex> fc(500, 1.0);
    const TaylorPoly b{0.999, 0.0};
    CHECK_THROWS_AS(compose_truncated(TaylorPoly(fc), b, 10), DivergenceError);
}

TEST_CASE("Toeplitz matrices") {
    const std::size_t D = 12;
    const Weight w{-1.0};
    CHECK(toeplitz_matrix(TaylorPoly{1.0}, D, w).entries().isIdentity());
    const Eigen::MatrixXcd S = toeplitz_matrix(TaylorPoly{0.0, 1.0}, D, w).entries();
    for (Eigen::Index j = 0; j <= 12; ++j)
        for (Eigen::Index k = 0; k <= 12; ++k) CHECK(S(j, k) == Complex(j == k + 1 ? 1.0 : 0.0));

    Rng rng(14, 0);
    const TaylorPoly g = rng.poly(4), f = rng.poly(6);
    CHECK(max_diff(apply(toeplitz_matrix(g, D, w), f.truncated(D)), multiply(g, f, D), D) < 1e-14);

    // Homomorphism on the block that cannot see the truncation edge.
    const TaylorPoly p = rng.poly(3), q = rng.poly(2);
    const Eigen::MatrixXcd lhs = toeplitz_matrix(multiply(p, q, D), D, w).entries();
    const Eigen::MatrixXcd rhs = (toeplitz_matrix(p, D, w) * toeplitz_matrix(q, D, w)).entries();
    const Eigen::Index keep = static_cast<Eigen::Index>(D - 3 - 2 + 1);
    CHECK((lhs - rhs).topLeftCorner(keep, keep).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("weighted adjoint") {
    const std::size_t D = 32;
    const Weight wm{-1.0};
    CHECK(weighted_adjoint(OperatorMatrix::identity(D, wm), wm).entries().isIdentity());

    Rng rng(15, 0);
    Eigen::MatrixXcd A(5, 5);
    for (Eigen::Index j = 0; j < 5; ++j)
        for (Eigen::Index k = 0; k < 5; ++k) A(j, k) = rng.unit_square();
    CHECK((weighted_adjoint(OperatorMatrix(A, Weight{}), Weight{}).entries() - A.adjoint()).norm() == 0.0);
    const OperatorMatrix twice = weighted_adjoint(weighted_adjoint(OperatorMatrix(A, wm), wm), wm);
    CHECK((twice.entries() - A).norm() < 1e-14 * A.norm());

    const OperatorMatrix T = toeplitz_matrix(TaylorPoly{0.0, 1.0}, D, wm);
    const OperatorMatrix Ts = weighted_adjoint(T, wm);
    for (int i = 0; i < 50; ++i) {
        const TaylorPoly f = rng.poly(D), g = rng.poly(D);
        const Complex lhs = weighted_inner(apply(T, f), g, wm);
        const Complex rhs = weighted_inner(f, apply(Ts, g), wm);
        CHECK(std::abs(lhs - rhs) < 1e-13);
    }
}

TEST_CASE("apply") {
    const std::size_t D = 6;
    const TaylorPoly f{1.0, 1.0};
    CHECK(max_diff(apply(OperatorMatrix::identity(D, Weight{}), f), f, D) == 0.0);
    CHECK(max_diff(apply(toeplitz_matrix(TaylorPoly{0.0, 1.0}, D, Weight{}), f), TaylorPoly{0.0, 1.0, 1.0}, D) == 0.0);
    CHECK_THROWS_AS(apply(OperatorMatrix::identity(2, Weight{}), TaylorPoly::monomial(3, 3)), DimensionMismatch);

    Rng rng(16, 0);
    Eigen::MatrixXcd A(D + 1, D + 1);
    for (Eigen::Index j = 0; j <= 6; ++j)
        for (Eigen::Index k = 0; k <= 6; ++k) A(j, k) = rng.unit_square();
    const TaylorPoly g = rng.poly(D);
    const TaylorPoly out = apply(OperatorMatrix(A, Weight{}), g);
    for (Eigen::Index j = 0; j <= 6; ++j) {
        Complex dot = 0.0;
        for (Eigen::Index k = 0; k <= 6; ++k) dot += A(j, k) * g[static_cast<std::size_t>(k)];
        CHECK(std::abs(out[static_cast<std::size_t>(j)] - dot) < 1e-14);
    }
}

TEST_CASE("orthonormalize") {
    const Weight w{1.0};
    Rng rng(17, 0);
    Eigen::MatrixXcd X(9, 4);
    for (Eigen::Index c = 0; c < 4; ++c) X.col(c) = rng.poly(8).to_vector();
    const Eigen::MatrixXcd Q = orthonormalize(X, w, 1e-10);
    const Eigen::MatrixXcd G = Q.adjoint() * w.diagonal(8).asDiagonal() * Q;
    CHECK((G - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-13);

    X.col(3) = 2.0 * X.col(0) - X.col(1);
    CHECK_THROWS_AS(orthonormalize(X, w, 1e-10), RankError);
}
