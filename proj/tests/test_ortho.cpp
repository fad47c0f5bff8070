#include <doctest.h>

#include <cmath>

#include "blaschke_lab/blaschke.hpp"
#include "blaschke_lab/commutant.hpp"
#include "blaschke_lab/errors.hpp"
#include "blaschke_lab/ortho.hpp"
#include "blaschke_lab/random.hpp"
#include "blaschke_lab/reducing.hpp"
#include "helpers.hpp"

using namespace blaschke_lab;

namespace {

Eigen::MatrixXcd columns(const std::vector<TaylorPoly>& fs, std::size_t D) {
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(D + 1), static_cast<Eigen::Index>(fs.size()));
    for (std::size_t i = 0; i < fs.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = fs[i].to_vector(D);
    return m;
}

}  // namespace

TEST_CASE("monomial B: blocks are monomial spans") {
    const std::size_t N = 3, D = 60, kmax = 4;
    for (double alpha : {-1.0, 0.0, 1.0}) {
        const Weight w{alpha};
        const XSpaceChain chain = x_spaces(BlaschkeProduct::monomial(N), w, kmax, D);
        REQUIRE(chain.blocks.size() == kmax + 1);
        for (std::size_t k = 0; k <= kmax; ++k) {
            std::vector<TaylorPoly> ref;
            for (std::size_t i = 0; i < N; ++i) ref.push_back(TaylorPoly::monomial(k * N + i, D));
            const Eigen::VectorXd c = principal_cosines(chain.block_coefficients(k), columns(ref, D), w);
            CHECK(c.minCoeff() > 1.0 - 1e-12);
        }
        const KSpaces K = k_spaces(chain);
        for (std::size_t k = 0; k <= kmax; ++k) {
            std::vector<TaylorPoly> ref;
            for (std::size_t i = 0; i < N; ++i) ref.push_back(TaylorPoly::monomial(i, D));
            CHECK(principal_cosines(columns(K.bases[k], D), columns(ref, D), w).minCoeff() > 1.0 - 1e-10);
            CHECK(K.residuals[k] < 1e-8);
        }
        CHECK(b_span_codimension(BlaschkeProduct::monomial(N), w, D) == N);
    }
}

TEST_CASE("block 0 is orthogonal to B A") {
    const std::size_t D = 80;
    const BlaschkeProduct B(0.0, {{0.5, 1}, {-0.3, 1}});
    const Weight w{-1.0};
    const XSpaceChain chain = x_spaces(B, w, 0, D);
    const TaylorPoly b = taylor(B, D);
    double worst = 0.0;
    for (const auto& v : chain.blocks[0])
        for (std::size_t m = 0; m <= safe_degree(D); ++m)
            worst = std::max(worst, std::abs(weighted_inner(v, multiply(b, TaylorPoly::monomial(m, m), D), w)));
    CHECK(worst < 1e-9);
}

TEST_CASE("Mobius square: block 0 is the kernel span") {
    const std::size_t D = 120;
    const Complex a = 0.5;
    const XSpaceChain chain = x_spaces(BlaschkeProduct::mobius_power(a, 2), Weight{-1.0}, 2, D);
    // 1/(1 - z/2)^2 and z/(1 - z/2)^3 from their binomial series.
    std::vector<Complex> k0(D + 1), k1(D + 1);
    for (std::size_t m = 0; m <= D; ++m) {
        const double p = std::pow(0.5, static_cast<double>(m));
        k0[m] = static_cast<double>(m + 1) * p;
        if (m >= 1) k1[m] = 0.5 * static_cast<double>(m) * static_cast<double>(m + 1) * std::pow(0.5, m - 1.0);
    }
    const Eigen::VectorXd c =
        principal_cosines(chain.block_coefficients(0), columns({TaylorPoly(k0), TaylorPoly(k1)}, D), Weight{-1.0});
    CHECK(std::acos(std::min(1.0, c.minCoeff())) < 1e-6);
    CHECK(chain_orthogonality_defect(chain) < 1e-9);
    CHECK(shift_action_residual(chain) < 1e-9);
}

TEST_CASE("block matrices") {
    const std::size_t D = 120, kmax = 3;
    const BlaschkeProduct B(0.0, {{0.5, 1}, {-0.3, 1}});
    const Weight w{-1.0};
    const XSpaceChain chain = x_spaces(B, w, kmax, D);

    const BlockArray id = block_matrix(OperatorMatrix::identity(D, w), chain);
    for (std::size_t l = 0; l <= kmax; ++l)
        for (std::size_t k = 0; k <= kmax; ++k) {
            const Eigen::MatrixXcd ref = Eigen::MatrixXcd::Identity(2, 2) * (l == k ? 1.0 : 0.0);
            CHECK((id[l][k] - ref).cwiseAbs().maxCoeff() < 1e-10);
        }

    const BlockArray tb = block_matrix(toeplitz_matrix(taylor(B, D), D, w), chain);
    for (std::size_t l = 0; l <= kmax; ++l)
        for (std::size_t k = 0; k <= kmax; ++k)
            if (l <= k) CHECK(tb[l][k].norm() < 1e-9);
    CHECK(tb[1][0].norm() > 0.1);

    Rng rng(51, 0);
    const CommutantOperator W = build(rng.multiplier(2, 2), B, w, D / 2, D);
    CHECK(max_upper_block_norm(block_matrix(W.realization, chain)) < 1e-7);
}

TEST_CASE("selfadjoint block check") {
    const std::size_t D = 60;
    const BlaschkeProduct z2 = BlaschkeProduct::monomial(2);
    const Weight w{-1.0};
    const XSpaceChain chain = x_spaces(z2, w, 3, D);

    const SelfAdjointBlockReport id = selfadjoint_block_check(OperatorMatrix::identity(D, w), chain);
    CHECK(id.input_defect == 0.0);
    CHECK(id.max_offdiag < 1e-12);
    CHECK(id.max_block_defect < 1e-12);

    const SubspaceProjection P = monomial_reducing_projection(2, 0, w, D);
    const SelfAdjointBlockReport r = selfadjoint_block_check(P.matrix, chain);
    CHECK(r.max_offdiag < 1e-9);
    CHECK(r.max_block_defect < 1e-10);

    CHECK_THROWS_AS(selfadjoint_block_check(toeplitz_matrix(taylor(z2, D), D, w), chain), NotSelfAdjointError);
}

TEST_CASE("x_spaces preconditions") {
    CHECK_THROWS_AS(x_spaces(BlaschkeProduct::monomial(3), Weight{}, 5, 20), DomainError);
}
