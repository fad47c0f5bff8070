#include <doctest.h>

#include <cmath>

#include "blaschke_lab/blaschke.hpp"
#include "blaschke_lab/errors.hpp"
#include "blaschke_lab/random.hpp"
#include "blaschke_lab/wold.hpp"
#include "helpers.hpp"

using namespace blaschke_lab;
using test::max_diff;

TEST_CASE("slicing for B = z^2") {
    const BlaschkeProduct B = BlaschkeProduct::monomial(2);
    const ShellDecomposition dec = analyze(TaylorPoly{1.0, 2.0, 3.0, 4.0}, B, 2, 6);
    const auto comps = dec.components();
    REQUIRE(comps.size() == 2);
    CHECK(max_diff(comps[0], TaylorPoly{1.0, 3.0}, 2) < 1e-15);
    CHECK(max_diff(comps[1], TaylorPoly{2.0, 4.0}, 2) < 1e-15);
    CHECK(max_diff(synthesize(dec, 6), TaylorPoly{1.0, 2.0, 3.0, 4.0}, 6) < 1e-15);
}

TEST_CASE("orthonormal coordinates") {
    const BlaschkeProduct B(0.2, {{0.5, 1}, {Complex(-0.3, 0.2), 1}, {0.1, 1}});
    const std::size_t D = 96;
    const ShellFrame frame(B, 24, D);
    const ModelSpaceBasis& basis = frame.basis();
    const ShellDecomposition dec = analyze(basis.orthonormal[0].truncated(D), frame);
    for (Eigen::Index j = 0; j < dec.coefficients.rows(); ++j)
        for (Eigen::Index k = 0; k < dec.coefficients.cols(); ++k)
            CHECK(std::abs(dec.coefficients(j, k) - Complex(j == 0 && k == 0 ? 1.0 : 0.0)) < 1e-12);

    ShellDecomposition cell{B, 3, Eigen::MatrixXcd::Zero(3, 4)};
    cell.coefficients(0, 1) = 1.0;
    CHECK(max_diff(synthesize(cell, D), multiply(basis.orthonormal[0], taylor(B, D), D), D) < 1e-13);
    CHECK(synthesize(ShellDecomposition{B, 3, Eigen::MatrixXcd::Zero(3, 4)}, D).max_abs() == 0.0);
}

TEST_CASE("round trip for a degree-3 product") {
    const BlaschkeProduct B(0.0, {{0.5, 1}, {Complex(-0.3, 0.2), 1}, {0.1, 1}});
    Rng rng(31, 0);
    for (int i = 0; i < 5; ++i) {
        const TaylorPoly f = rng.poly(20);
        const TaylorPoly g = synthesize(analyze(f.truncated(96), B, 24, 96), 96);
        CHECK(max_diff(f.truncated(48), g, 48) < 1e-8);
    }
}

TEST_CASE("exact slicing for monomial B") {
    Rng rng(32, 0);
    for (std::size_t n : {1u, 2u, 5u}) {
        const BlaschkeProduct B = BlaschkeProduct::monomial(n);
        const std::size_t D = 40;
        const TaylorPoly f = rng.poly(D);
        const TaylorPoly g = synthesize(analyze(f, B, D / n, D), D);
        CHECK(max_diff(f, g, D) < 1e-14);
    }
}

TEST_CASE("shell index shifts under multiplication by B") {
    const BlaschkeProduct B(0.0, {{0.4, 1}, {Complex(0, -0.6), 1}});
    const std::size_t D = 120;
    Rng rng(33, 0);
    const TaylorPoly f = rng.poly(10);
    const ShellDecomposition a = analyze(f.truncated(D), B, 40, D);
    const ShellDecomposition b = analyze(multiply(f, taylor(B, D), D), B, 40, D);
    for (Eigen::Index k = 0; k + 1 < 20; ++k)
        CHECK((b.coefficients.col(k + 1) - a.coefficients.col(k)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(b.coefficients.col(0).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("least-squares inversion agrees with analyze") {
    const BlaschkeProduct B(0.0, {{0.5, 1}, {-0.3, 1}});
    const ShellFrame frame(B, 24, 96);
    Rng rng(34, 0);
    const TaylorPoly f = rng.poly(20).truncated(96);
    const ShellDecomposition a = analyze(f, frame);
    const ShellDecomposition b = analyze_least_squares(f, frame);
    CHECK((a.coefficients.leftCols(12) - b.coefficients.leftCols(12)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("B-norm") {
    const std::size_t D = 90;
    const BlaschkeProduct B(0.0, {{0.5, 1}, {Complex(0.1, 0.4), 1}});
    const ShellFrame frame(B, 30, D);
    const TaylorPoly u = frame.basis().orthonormal[0].truncated(D);
    for (double alpha : {-1.0, 0.0, 1.0}) {
        const Weight w{alpha};
        CHECK(b_norm(analyze(u, frame), w) == doctest::Approx(1.0).epsilon(1e-12));
        for (std::size_t k : {1u, 3u, 6u}) {
            const TaylorPoly hk = multiply(u, power_taylor(B, k, D), D);
            CHECK(b_norm(analyze(hk, frame), w) ==
                  doctest::Approx(std::pow(static_cast<double>(k + 1), alpha / 2)).epsilon(1e-9));
        }
        CHECK(norm_equivalence_ratio(u, B, w, 30, D) ==
              doctest::Approx(1.0 / std::pow(weighted_norm(u, w), 2)).epsilon(1e-9));
    }

    Rng rng(35, 0);
    const TaylorPoly f = rng.poly(30);
    const BlaschkeProduct z3 = BlaschkeProduct::monomial(3);
    CHECK(b_norm(analyze(f, z3, 10, 30), Weight{}) == doctest::Approx(weighted_norm(f, Weight{})).epsilon(1e-14));
    CHECK(norm_equivalence_ratio(f, z3, Weight{}, 10, 30) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(norm_equivalence_ratio(TaylorPoly::zero(30), z3, Weight{}, 10, 30), DomainError);
}

TEST_CASE("preconditions") {
    const BlaschkeProduct B = BlaschkeProduct::monomial(2);
    CHECK_THROWS_AS(analyze(TaylorPoly::monomial(9, 9), B, 2, 6), DimensionMismatch);
    CHECK_THROWS_AS(ShellFrame(B, 10, 6), TailError);
}
