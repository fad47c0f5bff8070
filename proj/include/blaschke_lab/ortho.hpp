#pragma once

// The orthogonal chains A_alpha = X_0 (+) X_1 (+) ..., X_k = B^k A (-) B^{k+1} A,
// and block matrices of operators with respect to them.

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "blaschke_lab/blaschke.hpp"
#include "blaschke_lab/settings.hpp"
#include "blaschke_lab/space.hpp"

namespace blaschke_lab {

struct XSpaceChain {
    BlaschkeProduct B;
    Weight alpha;
    /// blocks[k] is an alpha-orthonormal basis of X_k.
    std::vector<std::vector<TaylorPoly>> blocks;
    /// Singular values at the detected gap: gaps[k] = s_{N-1}, trailing[k] = s_N.
    std::vector<double> gaps;
    std::vector<double> trailing;
    std::size_t kmax;
    std::size_t degree;

    std::size_t n() const { return B.degree(); }
    /// (D+1) x N coefficient matrix of block k.
    Eigen::MatrixXcd block_coefficients(std::size_t k) const;
};

/// Guard band used by the truncated spans: N columns.
std::size_t span_guard(const BlaschkeProduct& B);

/// Block k is the complement of span{B^{k+1} z^m : m <= D - (k+1)N - guard}
/// inside span{B^k z^m : m <= floor((D - (k+1)N - guard) / 2)}, read off the
/// principal angles between the two spans in the alpha geometry. Requires
/// D >= (kmax + 2) N + guard; throws GapError unless exactly N singular values
/// exceed settings.gap_tol.
XSpaceChain x_spaces(const BlaschkeProduct& B, Weight w, std::size_t kmax, std::size_t degree,
                     const Settings& settings = {});

struct KSpaces {
    /// bases[k][i] solves B^k g = blocks[k][i].
    std::vector<std::vector<TaylorPoly>> bases;
    /// Largest ||B^k g - x||_alpha per block.
    std::vector<double> residuals;
};

/// Divides B^k out of X_k by weighted least squares over the truncated
/// columns {B^k z^m}. Throws ConditioningError when a residual exceeds
/// settings.lsq_tol.
KSpaces k_spaces(const XSpaceChain& chain, const Settings& settings = {});

/// blocks[l][k](i, j) = <W x_{k,j}, x_{l,i}>_alpha
using BlockArray = std::vector<std::vector<Eigen::MatrixXcd>>;

BlockArray block_matrix(const OperatorMatrix& W, const XSpaceChain& chain);

/// Largest spectral norm among the blocks with l < k.
double max_upper_block_norm(const BlockArray& blocks);

/// Largest |<x, y>_alpha| over basis elements of distinct blocks.
double chain_orthogonality_defect(const XSpaceChain& chain);

/// Largest ||P_{<=k} T_B x||_alpha over x in block k, P_{<=k} the projection
/// onto blocks 0..k.
double shift_action_residual(const XSpaceChain& chain);

/// (D+1) minus the numerical rank of span{B z^m : m <= D - N} under alpha.
std::size_t b_span_codimension(const BlaschkeProduct& B, Weight w, std::size_t degree,
                               const Settings& settings = {});

struct SelfAdjointBlockReport {
    /// A_alpha norm of W* - W on the safe block.
    double input_defect;
    double max_offdiag;
    /// Largest ||W_kk - W_kk^H||.
    double max_block_defect;
};

/// Throws NotSelfAdjointError when input_defect exceeds settings.selfadjoint_tol.
SelfAdjointBlockReport selfadjoint_block_check(const OperatorMatrix& W, const XSpaceChain& chain,
                                               const Settings& settings = {});

/// Cosines of the principal angles between the column spans of X and Y under
/// alpha, in decreasing order.
Eigen::VectorXd principal_cosines(const Eigen::MatrixXcd& X, const Eigen::MatrixXcd& Y, Weight w);

}  // namespace blaschke_lab
