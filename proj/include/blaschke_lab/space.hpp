#pragma once

// Truncated analytic functions on the disc, the weighted Bergman inner
// products <f, g>_alpha = sum a_k conj(b_k) (k+1)^alpha, and finite sections
// of operators acting on monomial coefficients.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "blaschke_lab/settings.hpp"

namespace blaschke_lab {

using Complex = std::complex<double>;

/// Weight exponent alpha of the space A_alpha (alpha = -1 Bergman,
/// 0 Hardy, 1 Dirichlet). Any finite real is admissible.
class Weight {
public:
    constexpr Weight() = default;
    explicit Weight(double alpha);

    double alpha() const { return alpha_; }
    /// (k+1)^alpha
    double at(std::size_t k) const;
    /// diag((k+1)^alpha), k = 0..degree
    Eigen::VectorXd diagonal(std::size_t degree) const;

    friend bool operator==(Weight, Weight) = default;

private:
    double alpha_ = 0.0;
};

/// Taylor coefficients a_0..a_D of an analytic function truncated at degree D.
class TaylorPoly {
public:
    /// The zero function at degree 0.
    TaylorPoly();
    explicit TaylorPoly(std::vector<Complex> coeffs);
    TaylorPoly(std::initializer_list<Complex> coeffs);

    static TaylorPoly zero(std::size_t degree);
    static TaylorPoly monomial(std::size_t power, std::size_t degree, Complex scale = 1.0);
    static TaylorPoly from_vector(const Eigen::VectorXcd& v);

    std::size_t degree() const { return coeffs_.size() - 1; }
    std::span<const Complex> coeffs() const { return coeffs_; }

    /// Coefficient k, zero beyond the stored degree.
    Complex operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Complex{}; }

    /// Zero-padded or cut to the given degree.
    TaylorPoly truncated(std::size_t degree) const;
    Eigen::VectorXcd to_vector(std::size_t degree) const;
    Eigen::VectorXcd to_vector() const { return to_vector(degree()); }

    /// Horner evaluation of the stored partial sum.
    Complex evaluate(Complex z) const;

    double max_abs() const;

    TaylorPoly& operator+=(const TaylorPoly& other);
    TaylorPoly& operator-=(const TaylorPoly& other);
    TaylorPoly& operator*=(Complex s);

    friend TaylorPoly operator+(TaylorPoly a, const TaylorPoly& b) { return a += b; }
    friend TaylorPoly operator-(TaylorPoly a, const TaylorPoly& b) { return a -= b; }
    friend TaylorPoly operator*(Complex s, TaylorPoly a) { return a *= s; }
    friend TaylorPoly operator*(TaylorPoly a, Complex s) { return a *= s; }

private:
    std::vector<Complex> coeffs_;
};

/// Dense (D+1)x(D+1) finite section acting on monomial coefficients. The
/// weight is the one adjoints are taken against.
class OperatorMatrix {
public:
    OperatorMatrix(Eigen::MatrixXcd entries, Weight weight);

    static OperatorMatrix identity(std::size_t degree, Weight weight);

    std::size_t degree() const { return static_cast<std::size_t>(entries_.rows()) - 1; }
    const Eigen::MatrixXcd& entries() const { return entries_; }
    Weight weight() const { return weight_; }

    OperatorMatrix operator*(const OperatorMatrix& other) const;
    OperatorMatrix operator+(const OperatorMatrix& other) const;
    OperatorMatrix operator-(const OperatorMatrix& other) const;

private:
    Eigen::MatrixXcd entries_;
    Weight weight_;
};

/// sum_k a_k conj(b_k) (k+1)^alpha; the shorter argument is zero-padded.
Complex weighted_inner(const TaylorPoly& f, const TaylorPoly& g, Weight w);
double weighted_norm(const TaylorPoly& f, Weight w);

/// Truncated Cauchy product through degree D.
TaylorPoly multiply(const TaylorPoly& f, const TaylorPoly& g, std::size_t degree);

/// Taylor coefficients of f o B through degree D. B(0) need not vanish; the
/// series sum_k f_k B^k is accumulated until the remaining terms fall below
/// settings.tol_compose. Throws DivergenceError if f still has significant
/// terms after compose_terms_factor * D of them.
TaylorPoly compose_truncated(const TaylorPoly& f, const TaylorPoly& B, std::size_t degree,
                             const Settings& settings = {});

/// Lower-triangular section of T_g: entry (j, k) = g_{j-k}.
OperatorMatrix toeplitz_matrix(const TaylorPoly& g, std::size_t degree, Weight w);

/// Lambda^{-1} A^H Lambda with Lambda = diag((k+1)^alpha).
OperatorMatrix weighted_adjoint(const OperatorMatrix& A, Weight w);

/// Matrix-vector product; f is zero-padded, but may not exceed A's degree.
TaylorPoly apply(const OperatorMatrix& A, const TaylorPoly& f);

// ---------------------------------------------------------------------------
// Shared dense linear-algebra helpers.

/// Largest singular value.
double spectral_norm(const Eigen::MatrixXcd& X);

/// A_alpha operator norm of the leading (s+1)x(s+1) block of X, i.e.
/// || Lambda^{1/2} X Lambda^{-1/2} ||_2 on that block.
double weighted_block_norm(const Eigen::MatrixXcd& X, Weight w, std::size_t s);

/// Modified Gram-Schmidt with one re-orthogonalization pass under <.,.>_alpha,
/// processing columns in index order. Throws RankError when a column's
/// residual norm drops below rank_tol times its original norm.
Eigen::MatrixXcd orthonormalize(const Eigen::MatrixXcd& columns, Weight w, double rank_tol);

/// Smallest eigenvalue of the Gram matrix of the column-normalized input.
double normalized_gram_min_eigenvalue(const Eigen::MatrixXcd& columns, Weight w);

}  // namespace blaschke_lab
