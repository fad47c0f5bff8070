#pragma once

// Shell decomposition f = sum_k h_k B^k with h_k in K_B, written against the
// H^2-orthonormal system {u_j B^k} as f = sum_{j,k} c_{j,k} u_j B^k.

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "blaschke_lab/blaschke.hpp"
#include "blaschke_lab/settings.hpp"
#include "blaschke_lab/space.hpp"

namespace blaschke_lab {

/// floor(D / (2n)), the analysis default.
std::size_t default_shell_count(std::size_t n, std::size_t degree);

/// The truncated system {u_j B^k : j < n, k <= M} at degree D. Column
/// k * n + j of matrix() holds the coefficients of u_j B^k.
class ShellFrame {
public:
    /// Throws TailError when the H^2 tail of B^M beyond degree D exceeds
    /// settings.tol_tail.
    ShellFrame(const BlaschkeProduct& B, std::size_t shells, std::size_t degree, const Settings& settings = {});

    const BlaschkeProduct& blaschke() const { return B_; }
    const ModelSpaceBasis& basis() const { return basis_; }
    std::size_t n() const { return B_.degree(); }
    std::size_t shells() const { return shells_; }
    std::size_t degree() const { return degree_; }
    /// H^2 norm of the part of B^M beyond degree D.
    double tail() const { return tail_; }

    const Eigen::MatrixXcd& matrix() const { return matrix_; }
    const TaylorPoly& power(std::size_t k) const { return powers_.at(k); }

private:
    BlaschkeProduct B_;
    std::size_t shells_;
    std::size_t degree_;
    ModelSpaceBasis basis_;
    std::vector<TaylorPoly> powers_;
    Eigen::MatrixXcd matrix_;
    double tail_ = 0.0;
};

/// Coefficients c_{j,k} of f against {u_j B^k}, k = 0..M.
struct ShellDecomposition {
    BlaschkeProduct B;
    std::size_t shell_count;
    /// n x (M+1), entry (j, k) = c_{j,k}.
    Eigen::MatrixXcd coefficients;

    std::size_t n() const { return static_cast<std::size_t>(coefficients.rows()); }

    /// f_j(w) = sum_k c_{j,k} w^k, j = 0..n-1.
    std::vector<TaylorPoly> components() const;
    /// ||h_k||_0, read off the orthonormal coordinates.
    double shell_norm(std::size_t k) const;
    /// h_k = sum_j c_{j,k} u_j.
    TaylorPoly shell_function(std::size_t k, const ModelSpaceBasis& basis) const;

    static ShellDecomposition from_components(const BlaschkeProduct& B, const std::vector<TaylorPoly>& components);
};

/// c_{j,k} = <f, u_j B^k>_0. Throws DimensionMismatch if f exceeds degree D.
ShellDecomposition analyze(const TaylorPoly& f, const BlaschkeProduct& B, std::size_t shells, std::size_t degree,
                           const Settings& settings = {});
ShellDecomposition analyze(const TaylorPoly& f, const ShellFrame& frame);

/// sum_{k<=M} sum_j c_{j,k} u_j B^k truncated at D.
TaylorPoly synthesize(const ShellDecomposition& dec, std::size_t degree, const Settings& settings = {});
TaylorPoly synthesize(const ShellDecomposition& dec, const ShellFrame& frame);

/// (sum_k (k+1)^alpha ||h_k||_0^2)^{1/2}
double b_norm(const ShellDecomposition& dec, Weight w);

/// sum_k (k+1)^alpha sum_j c_{j,k} conj(d_{j,k}), the inner product of ||.||_B.
Complex b_inner(const ShellDecomposition& a, const ShellDecomposition& b, Weight w);

/// b_norm(analyze(f))^2 / ||f||_alpha^2. Throws DomainError for f = 0.
double norm_equivalence_ratio(const TaylorPoly& f, const BlaschkeProduct& B, Weight w, std::size_t shells,
                              std::size_t degree, const Settings& settings = {});

/// Least-squares inversion of the finite section of J, kept as an
/// independent cross-check of analyze().
ShellDecomposition analyze_least_squares(const TaylorPoly& f, const ShellFrame& frame);

}  // namespace blaschke_lab
