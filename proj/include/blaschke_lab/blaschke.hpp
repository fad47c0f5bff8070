#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "blaschke_lab/settings.hpp"
#include "blaschke_lab/space.hpp"

namespace blaschke_lab {

struct BlaschkeZero {
    Complex value;
    std::size_t multiplicity = 1;
};

/// B(z) = e^{i theta} prod_i ((z - a_i) / (1 - conj(a_i) z)), with each zero
/// repeated according to its multiplicity.
class BlaschkeProduct {
public:
    /// Rejects zeros with |a| > settings.rho_max, zero multiplicities and the
    /// constant case (degree 0). Exactly equal zeros are merged.
    BlaschkeProduct(double theta, std::vector<BlaschkeZero> zeros, const Settings& settings = {});

    /// z^n
    static BlaschkeProduct monomial(std::size_t n);
    /// ((z - a) / (1 - conj(a) z))^n
    static BlaschkeProduct mobius_power(Complex a, std::size_t n, const Settings& settings = {});

    double theta() const { return theta_; }
    const std::vector<BlaschkeZero>& zeros() const { return zeros_; }
    std::size_t degree() const { return degree_; }

    /// Zeros listed with multiplicity.
    std::vector<Complex> expanded_zeros() const;
    bool is_monomial() const;
    bool has_repeated_zeros() const;

private:
    double theta_;
    std::vector<BlaschkeZero> zeros_;
    std::size_t degree_ = 0;
};

/// Product-formula value for |z| <= 1.
Complex eval(const BlaschkeProduct& B, Complex z, const Settings& settings = {});

/// Taylor coefficients of B through degree D.
TaylorPoly taylor(const BlaschkeProduct& B, std::size_t degree);

/// Taylor coefficients of B^m through degree D (B^0 = 1).
TaylorPoly power_taylor(const BlaschkeProduct& B, std::size_t m, std::size_t degree);

enum class BasisKind { monomial, cauchy, confluent };

std::string_view to_string(BasisKind kind);

/// Algebraic and H^2-orthonormal bases of the model space K_B = H^2 (-) B H^2,
/// truncated at a common degree.
struct ModelSpaceBasis {
    std::vector<TaylorPoly> raw;
    std::vector<TaylorPoly> orthonormal;
    BasisKind kind;

    std::size_t size() const { return orthonormal.size(); }
};

/// Raw basis by case: {1, .., z^{n-1}} for B = z^n; Cauchy kernels
/// 1/(1 - conj(a_i) z) for distinct zeros; otherwise z^j / prod_i (1 - conj(a_i) z)
/// over the zeros with multiplicity. Orthonormalized in H^2 by modified
/// Gram-Schmidt in raw-index order. Throws RankError when the normalized raw
/// Gram matrix has an eigenvalue below settings.rank_tol.
ModelSpaceBasis model_basis(const BlaschkeProduct& B, std::size_t degree, const Settings& settings = {});

/// H^2 reproducing kernel at a: coefficients conj(a)^k.
TaylorPoly reproducing_kernel(Complex a, std::size_t degree);

/// Largest |<u, B z^m>_0| over the basis elements u and m = 0..m_max. Zero
/// (to rounding) certifies membership in K_B on the tested range.
double model_space_defect(const std::vector<TaylorPoly>& functions, const BlaschkeProduct& B,
                          std::size_t m_max, std::size_t degree);

}  // namespace blaschke_lab
