#include <doctest.h>

#include <cmath>
#include <numbers>

#include "blaschke_lab/blaschke.hpp"
#include "blaschke_lab/errors.hpp"
#include "blaschke_lab/random.hpp"
#include "helpers.hpp"

using namespace blaschke_lab;
using test::max_diff;

TEST_CASE("evaluation") {
    CHECK(std::abs(eval(BlaschkeProduct::monomial(3), 0.5) - 0.125) < 1e-15);
    CHECK(std::abs(eval(BlaschkeProduct(0.0, {{0.5, 1}}), 0.0) + 0.5) < 1e-15);

    Rng rng(21, 0);
    std::vector<BlaschkeZero> zs;
    for (int i = 0; i < 4; ++i) zs.push_back({rng.disc(0.8), 1});
    const BlaschkeProduct B(1.1, zs);
    for (int i = 0; i < 100; ++i) {
        const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
        CHECK(std::abs(std::abs(eval(B, z)) - 1.0) < 1e-13);
    }
}

TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(BlaschkeProduct(0.0, {{0.9, 1}}), DomainError);
    CHECK_THROWS_AS(BlaschkeProduct(0.0, {}), DomainError);
    CHECK_THROWS_AS(BlaschkeProduct(0.0, {{0.1, 0}}), DomainError);
    const BlaschkeProduct merged(0.0, {{0.3, 1}, {0.3, 2}});
    CHECK(merged.degree() == 3);
    CHECK(merged.zeros().size() == 1);
    CHECK(merged.has_repeated_zeros());
}

TEST_CASE("Taylor coefficients") {
    const TaylorPoly z4 = taylor(BlaschkeProduct::monomial(4), 10);
    for (std::size_t k = 0; k <= 10; ++k) CHECK(z4[k] == Complex(k == 4 ? 1.0 : 0.0));

    // (z - a)/(1 - a z) = -a + (1 - a^2) sum_{k>=1} a^{k-1} z^k
    const TaylorPoly t = taylor(BlaschkeProduct(0.0, {{0.5, 1}}), 12);
    CHECK(std::abs(t[0] + 0.5) < 1e-15);
    for (std::size_t k = 1; k <= 12; ++k)
        CHECK(std::abs(t[k] - 0.75 * std::pow(0.5, static_cast<double>(k - 1))) < 1e-15);

    const BlaschkeProduct B(0.4, {{Complex(0.6, 0.2), 1}, {Complex(-0.5, 0), 2}});
    CHECK(std::abs(test::sum_series(taylor(B, 64), 0.3) - eval(B, 0.3)) < 1e-12);
}

TEST_CASE("powers of B") {
    const BlaschkeProduct z2 = BlaschkeProduct::monomial(2);
    CHECK(max_diff(power_taylor(z2, 0, 8), TaylorPoly{1.0}, 8) == 0.0);
    CHECK(max_diff(power_taylor(z2, 3, 8), TaylorPoly::monomial(6, 8), 8) == 0.0);

    // Compare B^m truncated at D = 96 against a much longer expansion. With a
    // zero of modulus 0.6 the l1 tail passes 1e-10 at m = 8 (4.8e-8 at m = 10).
    const BlaschkeProduct B(0.0, {{0.6, 1}, {Complex(-0.3, 0.4), 1}, {Complex(0, -0.55), 1}});
    for (std::size_t m : {1u, 4u, 7u, 10u}) {
        const TaylorPoly shortp = power_taylor(B, m, 96);
        const TaylorPoly longp = power_taylor(B, m, 400);
        double tail = 0.0;
        for (std::size_t k = 97; k <= 400; ++k) tail += std::abs(longp[k]);
        CHECK(tail < (m <= 7 ? 1e-10 : 1e-7));
        CHECK(max_diff(shortp, longp, 96) < 1e-12);
        CHECK(std::abs(test::sum_series(shortp, 0.4) - std::pow(eval(B, 0.4), static_cast<double>(m))) < 1e-12);
    }
}

TEST_CASE("model space bases") {
    const std::size_t D = 60;
    const ModelSpaceBasis mono = model_basis(BlaschkeProduct::monomial(3), D);
    CHECK(mono.kind == BasisKind::monomial);
    REQUIRE(mono.raw.size() == 3);
    for (std::size_t j = 0; j < 3; ++j) CHECK(max_diff(mono.raw[j], TaylorPoly::monomial(j, D), D) == 0.0);

    const BlaschkeProduct distinct(0.0, {{0.5, 1}, {-0.3, 1}});
    const ModelSpaceBasis cauchy = model_basis(distinct, D);
    CHECK(cauchy.kind == BasisKind::cauchy);
    for (std::size_t k = 0; k <= 10; ++k) {
        CHECK(std::abs(cauchy.raw[0][k] - std::pow(0.5, static_cast<double>(k))) < 1e-15);
        CHECK(std::abs(cauchy.raw[1][k] - std::pow(-0.3, static_cast<double>(k))) < 1e-15);
    }

    const BlaschkeProduct repeated = BlaschkeProduct::mobius_power(0.5, 2);
    CHECK(model_basis(repeated, D).kind == BasisKind::confluent);

    for (const BlaschkeProduct& B : {BlaschkeProduct::monomial(3), distinct, repeated}) {
        const ModelSpaceBasis basis = model_basis(B, D);
        CHECK(basis.size() == B.degree());
        CHECK(model_space_defect(basis.orthonormal, B, D / 2, D) < 1e-10);
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = 0; j < basis.size(); ++j) {
                const Complex g = weighted_inner(basis.orthonormal[i], basis.orthonormal[j], Weight{});
                CHECK(std::abs(g - Complex(i == j ? 1.0 : 0.0)) < 1e-12);
            }
    }

    // A function outside K_B fails the membership test.
    CHECK(model_space_defect({TaylorPoly::monomial(3, D)}, BlaschkeProduct::monomial(3), 10, D) > 0.5);
}

TEST_CASE("reproducing kernel") {
    const TaylorPoly k0 = reproducing_kernel(0.0, 8);
    CHECK(max_diff(k0, TaylorPoly{1.0}, 8) == 0.0);
    const TaylorPoly k5 = reproducing_kernel(0.5, 8);
    for (std::size_t k = 0; k <= 8; ++k) CHECK(std::abs(k5[k] - std::pow(0.5, static_cast<double>(k))) < 1e-15);

    Rng rng(22, 0);
    const TaylorPoly f = rng.poly(10);
    const Complex a(0.4, 0.0);
    CHECK(std::abs(weighted_inner(f, reproducing_kernel(a, 10), Weight{}) - test::sum_series(f, a)) < 1e-10);
}
