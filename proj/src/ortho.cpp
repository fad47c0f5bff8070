#include "blaschke_lab/ortho.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "blaschke_lab/errors.hpp"

namespace blaschke_lab {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t v) { return static_cast<Index>(v); }

// Columns p * z^m truncated at D, m = 0..last.
Eigen::MatrixXcd shifted_columns(const TaylorPoly& p, std::size_t last, std::size_t degree) {
    const Eigen::VectorXcd v = p.to_vector(degree);
    Eigen::MatrixXcd cols = Eigen::MatrixXcd::Zero(idx(degree + 1), idx(last + 1));
    for (std::size_t m = 0; m <= last && m <= degree; ++m) cols.col(idx(m)).tail(idx(degree + 1 - m)) = v.head(idx(degree + 1 - m));
    return cols;
}

Eigen::MatrixXcd thin_q(const Eigen::MatrixXcd& Y) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Y);
    return qr.householderQ() * Eigen::MatrixXcd::Identity(Y.rows(), Y.cols());
}

}  // namespace

Eigen::MatrixXcd XSpaceChain::block_coefficients(std::size_t k) const {
    const auto& b = blocks.at(k);
    Eigen::MatrixXcd m(idx(degree + 1), idx(b.size()));
    for (std::size_t i = 0; i < b.size(); ++i) m.col(idx(i)) = b[i].to_vector(degree);
    return m;
}

std::size_t span_guard(const BlaschkeProduct& B) { return B.degree(); }

Eigen::VectorXd principal_cosines(const Eigen::MatrixXcd& X, const Eigen::MatrixXcd& Y, Weight w) {
    const Eigen::VectorXd sL = w.diagonal(static_cast<std::size_t>(X.rows()) - 1).array().sqrt();
    const Eigen::MatrixXcd qx = thin_q(sL.asDiagonal() * X);
    const Eigen::MatrixXcd qy = thin_q(sL.asDiagonal() * Y);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(qx.adjoint() * qy);
    return svd.singularValues();
}

XSpaceChain x_spaces(const BlaschkeProduct& B, Weight w, std::size_t kmax, std::size_t degree,
                     const Settings& settings) {
    const std::size_t N = B.degree();
    const std::size_t guard = span_guard(B);
    if (degree < (kmax + 2) * N + guard)
        throw DomainError("x_spaces needs D >= (kmax + 2) N + guard = " + std::to_string((kmax + 2) * N + guard));

    const Eigen::VectorXd L = w.diagonal(degree);
    const Eigen::VectorXd sL = L.array().sqrt();
    const TaylorPoly b = taylor(B, degree);

    XSpaceChain chain{B, w, {}, {}, {}, kmax, degree};
    TaylorPoly power = TaylorPoly::monomial(0, degree);
    for (std::size_t k = 0; k <= kmax; ++k) {
        const TaylorPoly next = multiply(power, b, degree);
        const std::size_t outer_last = degree - (k + 1) * N - guard;
        const std::size_t inner_last = outer_last / 2;

        const Eigen::MatrixXcd qk = thin_q(sL.asDiagonal() * shifted_columns(power, inner_last, degree));
        const Eigen::MatrixXcd qz = thin_q(sL.asDiagonal() * shifted_columns(next, outer_last, degree));
        Eigen::MatrixXcd c = qk - qz * (qz.adjoint() * qk);
        c -= qz * (qz.adjoint() * c);

        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(c, Eigen::ComputeThinV);
        const Eigen::VectorXd& s = svd.singularValues();
        const auto dim = static_cast<std::size_t>((s.array() > settings.gap_tol).count());
        if (dim != N)
            throw GapError("X_" + std::to_string(k) + " has " + std::to_string(dim) +
                           " singular values above gap_tol instead of " + std::to_string(N) + "; increase D");
        chain.gaps.push_back(s(idx(N - 1)));
        chain.trailing.push_back(idx(N) < s.size() ? s(idx(N)) : 0.0);

        Eigen::MatrixXcd x = qk * svd.matrixV().leftCols(idx(N));
        x -= qz * (qz.adjoint() * x);
        const Eigen::MatrixXcd q = thin_q(x);
        std::vector<TaylorPoly> block;
        for (std::size_t i = 0; i < N; ++i)
            block.push_back(TaylorPoly::from_vector(q.col(idx(i)).cwiseQuotient(sL.cast<Complex>())));
        chain.blocks.push_back(std::move(block));
        power = next;
    }
    return chain;
}

KSpaces k_spaces(const XSpaceChain& chain, const Settings& settings) {
    const std::size_t D = chain.degree;
    const std::size_t N = chain.n();
    const std::size_t guard = span_guard(chain.B);
    const Eigen::VectorXd sL = chain.alpha.diagonal(D).array().sqrt();
    const TaylorPoly b = taylor(chain.B, D);

    KSpaces out;
    TaylorPoly power = TaylorPoly::monomial(0, D);
    for (std::size_t k = 0; k <= chain.kmax; ++k) {
        const std::size_t last = D - k * N - guard;
        const Eigen::MatrixXcd A = sL.asDiagonal() * shifted_columns(power, last, D);
        const Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(A);
        std::vector<TaylorPoly> basis;
        double worst = 0.0;
        for (const auto& x : chain.blocks[k]) {
            const Eigen::VectorXcd rhs = sL.asDiagonal() * x.to_vector(D);
            const Eigen::VectorXcd g = qr.solve(rhs);
            worst = std::max(worst, (A * g - rhs).norm());
            basis.push_back(TaylorPoly::from_vector(g));
        }
        if (worst > settings.lsq_tol)
            throw ConditioningError("K_" + std::to_string(k) + " least-squares residual " + std::to_string(worst) +
                                    " exceeds lsq_tol");
        out.bases.push_back(std::move(basis));
        out.residuals.push_back(worst);
        power = multiply(power, b, D);
    }
    return out;
}

BlockArray block_matrix(const OperatorMatrix& W, const XSpaceChain& chain) {
    if (W.degree() != chain.degree) throw DimensionMismatch("operator and chain degrees differ");
    if (!(W.weight() == chain.alpha)) throw DimensionMismatch("operator and chain weights differ");
    const Eigen::VectorXd L = chain.alpha.diagonal(chain.degree);
    const std::size_t K = chain.blocks.size();
    std::vector<Eigen::MatrixXcd> coeffs, images;
    for (std::size_t k = 0; k < K; ++k) {
        coeffs.push_back(chain.block_coefficients(k));
        images.push_back(W.entries() * coeffs.back());
    }
    BlockArray blocks(K, std::vector<Eigen::MatrixXcd>(K));
    for (std::size_t l = 0; l < K; ++l)
        for (std::size_t k = 0; k < K; ++k) blocks[l][k] = coeffs[l].adjoint() * L.asDiagonal() * images[k];
    return blocks;
}

double max_upper_block_norm(const BlockArray& blocks) {
    double worst = 0.0;
    for (std::size_t l = 0; l < blocks.size(); ++l)
        for (std::size_t k = l + 1; k < blocks.size(); ++k) worst = std::max(worst, spectral_norm(blocks[l][k]));
    return worst;
}

double chain_orthogonality_defect(const XSpaceChain& chain) {
    const Eigen::VectorXd L = chain.alpha.diagonal(chain.degree);
    double worst = 0.0;
    for (std::size_t a = 0; a < chain.blocks.size(); ++a)
        for (std::size_t b = a + 1; b < chain.blocks.size(); ++b) {
            const Eigen::MatrixXcd g =
                chain.block_coefficients(b).adjoint() * L.asDiagonal() * chain.block_coefficients(a);
            worst = std::max(worst, g.cwiseAbs().maxCoeff());
        }
    return worst;
}

double shift_action_residual(const XSpaceChain& chain) {
    const Eigen::VectorXd L = chain.alpha.diagonal(chain.degree);
    const Eigen::MatrixXcd T = toeplitz_matrix(taylor(chain.B, chain.degree), chain.degree, chain.alpha).entries();
    const std::size_t N = chain.n();
    double worst = 0.0;
    for (std::size_t k = 0; k < chain.blocks.size(); ++k) {
        Eigen::MatrixXcd below(idx(chain.degree + 1), idx((k + 1) * N));
        for (std::size_t l = 0; l <= k; ++l) below.middleCols(idx(l * N), idx(N)) = chain.block_coefficients(l);
        const Eigen::MatrixXcd moved = T * chain.block_coefficients(k);
        // below is alpha-orthonormal, so the coordinates carry the norm.
        const Eigen::MatrixXcd coords = below.adjoint() * L.asDiagonal() * moved;
        for (Index j = 0; j < coords.cols(); ++j) worst = std::max(worst, coords.col(j).norm());
    }
    return worst;
}

std::size_t b_span_codimension(const BlaschkeProduct& B, Weight w, std::size_t degree, const Settings& settings) {
    const std::size_t N = B.degree();
    if (degree < N) throw DomainError("degree below the Blaschke degree");
    const Eigen::VectorXd sL = w.diagonal(degree).array().sqrt();
    const Eigen::MatrixXcd Y = sL.asDiagonal() * shifted_columns(taylor(B, degree), degree - N, degree);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Y);
    const Eigen::VectorXd& s = svd.singularValues();
    const auto rank = static_cast<std::size_t>((s.array() > settings.gap_tol * s(0)).count());
    return degree + 1 - rank;
}

SelfAdjointBlockReport selfadjoint_block_check(const OperatorMatrix& W, const XSpaceChain& chain,
                                               const Settings& settings) {
    SelfAdjointBlockReport report{};
    const Eigen::MatrixXcd defect = weighted_adjoint(W, chain.alpha).entries() - W.entries();
    report.input_defect = weighted_block_norm(defect, chain.alpha, safe_degree(chain.degree, settings));
    if (!(report.input_defect <= settings.selfadjoint_tol))
        throw NotSelfAdjointError("operator is not self-adjoint (defect " + std::to_string(report.input_defect) + ")");
    const BlockArray blocks = block_matrix(W, chain);
    for (std::size_t l = 0; l < blocks.size(); ++l)
        for (std::size_t k = 0; k < blocks.size(); ++k) {
            if (l == k)
                report.max_block_defect =
                    std::max(report.max_block_defect, spectral_norm(blocks[k][k] - blocks[k][k].adjoint()));
            else
                report.max_offdiag = std::max(report.max_offdiag, spectral_norm(blocks[l][k]));
        }
    return report;
}

}  // namespace blaschke_lab
