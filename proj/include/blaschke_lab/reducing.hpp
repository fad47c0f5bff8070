#pragma once

// Reducing subspaces of T_B, their projections, and the intertwiners that
// carry the unilateral shift onto T_B.

#include <cstddef>
#include <optional>
#include <vector>

#include "blaschke_lab/blaschke.hpp"
#include "blaschke_lab/commutant.hpp"
#include "blaschke_lab/settings.hpp"
#include "blaschke_lab/space.hpp"

namespace blaschke_lab {

struct SubspaceProjection {
    /// alpha-orthonormal basis of M.
    std::vector<TaylorPoly> basis;
    /// P = V V^H Lambda.
    OperatorMatrix matrix;
    Weight alpha;
    std::size_t degree;
};

/// Orthogonal projection onto the span of the given functions under alpha.
/// Throws RankError when they are numerically dependent.
SubspaceProjection span_projection(const std::vector<TaylorPoly>& functions, Weight w, std::size_t degree,
                                   const Settings& settings = {});

/// Projection onto (+)_{k <= shells} B^k N with N = span(generators).
SubspaceProjection shell_generated_projection(const BlaschkeProduct& B, const std::vector<TaylorPoly>& generators,
                                              Weight w, std::size_t shells, std::size_t degree,
                                              const Settings& settings = {});

/// M_j = span{z^{j + kN}}; a 0/1 diagonal matrix.
SubspaceProjection monomial_reducing_projection(std::size_t N, std::size_t j, Weight w, std::size_t degree);

/// Diagonal projection with pattern[m] selecting z^m; pattern has D+1 entries.
SubspaceProjection diagonal_projection(const std::vector<bool>& pattern, Weight w);

/// span{(z / (1 - conj(a) z)^2)^{j + kN} : k <= cap} in A_{-1}, cap from
/// settings.mobius_shell_cap (0 means floor(D / (4N))). Throws
/// ConditioningError when the normalized generator Gram matrix has an
/// eigenvalue below settings.rank_tol.
SubspaceProjection mobius_power_reducing_projection(Complex a, std::size_t N, std::size_t j, std::size_t degree,
                                                    const Settings& settings = {});

/// The generators used by mobius_power_reducing_projection.
std::vector<TaylorPoly> mobius_power_generators(Complex a, std::size_t N, std::size_t j, std::size_t cap,
                                                std::size_t degree);

/// z^j / (1 - conj(a) z)^{j+2}, j = 0..N-1, the kernels spanning K_0 for
/// B = ((z - a) / (1 - conj(a) z))^N in A_{-1}.
std::vector<TaylorPoly> mobius_k0_basis(Complex a, std::size_t N, std::size_t degree);

/// max(||P T_B - T_B P||, ||P T_B* - T_B* P||) in A_alpha, safe block.
double reducing_residual(const OperatorMatrix& P, const BlaschkeProduct& B, Weight w, std::size_t degree,
                         const Settings& settings = {});
double reducing_residual(const SubspaceProjection& P, const BlaschkeProduct& B, Weight w, std::size_t degree,
                         const Settings& settings = {});

/// I - P.
OperatorMatrix complement(const SubspaceProjection& P);

struct ProjectionDefects {
    /// ||P^2 - P|| and ||P* - P|| on the safe block.
    double idempotent;
    double selfadjoint;
    /// Largest ||P v - v||_alpha over basis elements.
    double fixes_basis;
};

ProjectionDefects projection_defects(const SubspaceProjection& P, const Settings& settings = {});

enum class NormMode { alpha_norm, b_norm };

struct IntertwinerJ {
    /// images[k] = J(z^k).
    std::vector<TaylorPoly> images;
    NormMode mode;
    Weight alpha;
    /// Present in b_norm mode.
    std::optional<BlaschkeProduct> B;
    std::size_t shells = 0;
    /// ||h||_alpha of the H^2-normalized generator (b_norm mode).
    double h_alpha_norm = 0.0;
};

/// J(z^k) = z^{(k+1)n - 1} / n^{alpha/2} for every k with (k+1)n - 1 <= D.
IntertwinerJ shift_equiv_monomial(std::size_t n, Weight w, std::size_t degree);

/// J(z^k) = h B^k, k = 0..M, with h rescaled to ||h||_0 = 1. Throws
/// MembershipError when h fails the K_B membership test.
IntertwinerJ shift_equiv_general(const BlaschkeProduct& B, const TaylorPoly& h, Weight w, std::size_t shells,
                                 std::size_t degree, const Settings& settings = {});

/// Largest entry of |Gram(J z^k) - Gram(z^k)| under the mode's inner product.
double unitarity_defect(const IntertwinerJ& J, std::size_t degree, const Settings& settings = {});

/// alpha_norm: A_alpha norm of J S - T_B J on the safe columns.
/// b_norm: largest deviation between the shell coefficients of B J(z^k) and
/// those of J(z^k) shifted by one shell.
double intertwining_residual(const IntertwinerJ& J, const BlaschkeProduct& B, std::size_t degree,
                             const Settings& settings = {});

/// Largest |b_norm(J z^k) - (k+1)^{alpha/2}| (b_norm mode).
double b_norm_defect(const IntertwinerJ& J, std::size_t degree, const Settings& settings = {});

/// ||(I - P) W P|| in A_alpha on the safe block.
double hyperinvariance_check(const SubspaceProjection& P, const OperatorMatrix& W, const Settings& settings = {});
double hyperinvariance_check(const SubspaceProjection& P, const CommutantOperator& W, const Settings& settings = {});

}  // namespace blaschke_lab
