#pragma once

// Operators commuting with T_B, represented as W = J V J^{-1} where V acts on
// the shell components by an n x n matrix of polynomial multipliers.

#include <cstddef>
#include <vector>

#include "blaschke_lab/blaschke.hpp"
#include "blaschke_lab/settings.hpp"
#include "blaschke_lab/space.hpp"
#include "blaschke_lab/wold.hpp"

namespace blaschke_lab {

/// Shell count for commutant realizations: shells are added until the next
/// power of B has no mass (below settings.tol_compose) on the safe block, or
/// would fail the tail check, and never fewer than floor(D / n). Shells that
/// still reach the safe block would make its realization unfaithful.
std::size_t default_commutant_shells(const BlaschkeProduct& B, std::size_t degree, const Settings& settings = {});

/// n x n array of polynomial multipliers phi_{jk}.
class MultiplierMatrix {
public:
    /// Row-major entries, n * n of them.
    MultiplierMatrix(std::size_t n, std::vector<TaylorPoly> entries);

    static MultiplierMatrix identity(std::size_t n);
    /// g times the identity.
    static MultiplierMatrix scalar(std::size_t n, const TaylorPoly& g);

    std::size_t n() const { return n_; }
    const TaylorPoly& operator()(std::size_t j, std::size_t k) const { return entries_[j * n_ + k]; }
    const std::vector<TaylorPoly>& entries() const { return entries_; }
    std::size_t max_degree() const;

    /// Entrywise multiplier products, exact for polynomial entries.
    MultiplierMatrix operator*(const MultiplierMatrix& other) const;
    MultiplierMatrix operator-(const MultiplierMatrix& other) const;

    /// Complex n x n matrix of entry values at z.
    Eigen::MatrixXcd evaluate(Complex z) const;

private:
    std::size_t n_;
    std::vector<TaylorPoly> entries_;
};

struct CommutantOperator {
    MultiplierMatrix phi;
    BlaschkeProduct B;
    Weight alpha;
    OperatorMatrix realization;
    std::size_t shells;
    /// commutation_residual of the realization, recorded at build time.
    double commutation_residual;
};

/// Column m of the realization is synthesize(V analyze(z^m)), with
/// (V f)_j = sum_k phi_{jk} f_k kept to full product degree.
CommutantOperator build(const MultiplierMatrix& phi, const BlaschkeProduct& B, Weight w, std::size_t shells,
                        std::size_t degree, const Settings& settings = {});

/// W(sum_j u_j f_j(B)) = sum_k sum_j u_j (phi_{jk} f_k)(B), evaluated directly
/// from the decomposition of f with the compositions done by
/// compose_truncated.
TaylorPoly apply_formula(const MultiplierMatrix& phi, const BlaschkeProduct& B, const TaylorPoly& f,
                         std::size_t shells, std::size_t degree, const Settings& settings = {});

/// phi_k = W u_k. Throws NotInCommutantError when W fails the commutation
/// test at settings.tol_commute.
std::vector<TaylorPoly> extract_symbols(const OperatorMatrix& W, const BlaschkeProduct& B, std::size_t shells,
                                        std::size_t degree, const Settings& settings = {});

/// Column k of the result holds the components of analyze(phi_k), cut to
/// settings.max_symbol_degree.
MultiplierMatrix symbols_to_matrix(const std::vector<TaylorPoly>& phis, const BlaschkeProduct& B,
                                   std::size_t shells, std::size_t degree, const Settings& settings = {});

/// A_alpha operator norm of the safe block of A T_B - T_B A.
double commutation_residual(const OperatorMatrix& A, const BlaschkeProduct& B, Weight w, std::size_t degree,
                            const Settings& settings = {});

struct IdempotentReport {
    /// Largest coefficient modulus of Phi^2 - Phi.
    double residual;
    /// Rank at z = 0.
    std::size_t rank;
    /// Ranks at z = 0 followed by the sample points.
    std::vector<std::size_t> ranks;
    bool rank_constant;
    /// Trace of Phi evaluated at 0.
    Complex trace;
};

IdempotentReport idempotent_residual(const MultiplierMatrix& phi, const Settings& settings = {});

/// max_{m <= D_safe} |<W^* k_a, (B - B(a)) z^m>_0| with W^* the H^2 adjoint.
double cowen_residual(const OperatorMatrix& W, const BlaschkeProduct& B, Complex a, std::size_t degree,
                      const Settings& settings = {});

}  // namespace blaschke_lab
