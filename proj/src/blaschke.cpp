#include "blaschke_lab/blaschke.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "blaschke_lab/errors.hpp"

namespace blaschke_lab {

BlaschkeProduct::BlaschkeProduct(double theta, std::vector<BlaschkeZero> zeros, const Settings& settings)
    : theta_(theta) {
    if (!std::isfinite(theta)) throw DomainError("rotation angle must be finite");
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        const auto& z = zeros[i];
        const double r = std::abs(z.value);
        if (!std::isfinite(r)) throw DomainError("zero " + std::to_string(i) + " is not finite");
        if (r > settings.rho_max)
            throw DomainError("zero " + std::to_string(i) + " has modulus " + std::to_string(r) +
                              " above rho_max " + std::to_string(settings.rho_max));
        if (z.multiplicity == 0)
            throw DomainError("zero " + std::to_string(i) + " has multiplicity 0");
        auto same = std::find_if(zeros_.begin(), zeros_.end(),
                                 [&](const BlaschkeZero& e) { return e.value == z.value; });
        if (same != zeros_.end())
            same->multiplicity += z.multiplicity;
        else
            zeros_.push_back(z);
        degree_ += z.multiplicity;
    }
    if (degree_ == 0) throw DomainError("a finite Blaschke product needs at least one zero");
}

BlaschkeProduct BlaschkeProduct::monomial(std::size_t n) {
    return BlaschkeProduct(0.0, {{Complex{}, n}});
}

BlaschkeProduct BlaschkeProduct::mobius_power(Complex a, std::size_t n, const Settings& settings) {
    return BlaschkeProduct(0.0, {{a, n}}, settings);
}

std::vector<Complex> BlaschkeProduct::expanded_zeros() const {
    std::vector<Complex> out;
    out.reserve(degree_);
    for (const auto& z : zeros_) out.insert(out.end(), z.multiplicity, z.value);
    return out;
}

bool BlaschkeProduct::is_monomial() const {
    return zeros_.size() == 1 && zeros_.front().value == Complex{};
}

bool BlaschkeProduct::has_repeated_zeros() const {
    return std::any_of(zeros_.begin(), zeros_.end(), [](const BlaschkeZero& z) { return z.multiplicity > 1; });
}

Complex eval(const BlaschkeProduct& B, Complex z, const Settings& settings) {
    if (std::abs(z) > 1.0 + 4.0 * std::numeric_limits<double>::epsilon())
        throw DomainError("Blaschke evaluation outside the closed unit disc");
    Complex value = std::polar(1.0, B.theta());
    for (const auto& a : B.expanded_zeros()) {
        const Complex den = 1.0 - std::conj(a) * z;
        if (std::abs(den) < settings.pole_tol) throw PoleError("evaluation at a pole of the Blaschke product");
        value *= (z - a) / den;
    }
    return value;
}

namespace {

// (z - a) / (1 - conj(a) z) = -a + (1 - |a|^2) sum_{k>=1} conj(a)^{k-1} z^k
TaylorPoly factor_taylor(Complex a, std::size_t degree) {
    std::vector<Complex> c(degree + 1);
    c[0] = -a;
    const double scale = 1.0 - std::norm(a);
    Complex p = 1.0;
    for (std::size_t k = 1; k <= degree; ++k) {
        c[k] = scale * p;
        p *= std::conj(a);
    }
    return TaylorPoly(std::move(c));
}

}  // namespace

TaylorPoly taylor(const BlaschkeProduct& B, std::size_t degree) {
    TaylorPoly acc = TaylorPoly::monomial(0, degree, std::polar(1.0, B.theta()));
    for (const auto& z : B.zeros()) {
        const TaylorPoly f = factor_taylor(z.value, degree);
        for (std::size_t m = 0; m < z.multiplicity; ++m) acc = multiply(acc, f, degree);
    }
    return acc;
}

TaylorPoly power_taylor(const BlaschkeProduct& B, std::size_t m, std::size_t degree) {
    TaylorPoly acc = TaylorPoly::monomial(0, degree);
    if (m == 0) return acc;
    const TaylorPoly b = taylor(B, degree);
    for (std::size_t k = 0; k < m; ++k) acc = multiply(acc, b, degree);
    return acc;
}

std::string_view to_string(BasisKind kind) {
    switch (kind) {
        case BasisKind::monomial: return "monomial";
        case BasisKind::cauchy: return "cauchy";
        case BasisKind::confluent: return "confluent";
    }
    return "unknown";
}

TaylorPoly reproducing_kernel(Complex a, std::size_t degree) {
    if (std::abs(a) >= 1.0) throw DomainError("reproducing kernel needs |a| < 1");
    std::vector<Complex> c(degree + 1);
    Complex p = 1.0;
    for (std::size_t k = 0; k <= degree; ++k) {
        c[k] = p;
        p *= std::conj(a);
    }
    return TaylorPoly(std::move(c));
}

ModelSpaceBasis model_basis(const BlaschkeProduct& B, std::size_t degree, const Settings& settings) {
    const std::size_t n = B.degree();
    ModelSpaceBasis basis;
    if (B.is_monomial()) {
        basis.kind = BasisKind::monomial;
        for (std::size_t j = 0; j < n; ++j) basis.raw.push_back(TaylorPoly::monomial(j, degree));
    } else if (!B.has_repeated_zeros()) {
        basis.kind = BasisKind::cauchy;
        for (const auto& z : B.zeros()) basis.raw.push_back(reproducing_kernel(z.value, degree));
    } else {
        basis.kind = BasisKind::confluent;
        TaylorPoly denominator_inverse = TaylorPoly::monomial(0, degree);
        for (const auto& a : B.expanded_zeros())
            denominator_inverse = multiply(denominator_inverse, reproducing_kernel(a, degree), degree);
        for (std::size_t j = 0; j < n; ++j)
            basis.raw.push_back(multiply(TaylorPoly::monomial(j, degree), denominator_inverse, degree));
    }

    const Weight hardy{0.0};
    Eigen::MatrixXcd raw(static_cast<Eigen::Index>(degree + 1), static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) raw.col(static_cast<Eigen::Index>(j)) = basis.raw[j].to_vector(degree);
    const double min_eig = normalized_gram_min_eigenvalue(raw, hardy);
    if (!(min_eig > settings.rank_tol))
        throw RankError("model-space raw basis is numerically singular (smallest Gram eigenvalue " +
                        std::to_string(min_eig) + ")");
    const Eigen::MatrixXcd q = orthonormalize(raw, hardy, settings.rank_tol);
    for (std::size_t j = 0; j < n; ++j)
        basis.orthonormal.push_back(TaylorPoly::from_vector(q.col(static_cast<Eigen::Index>(j))));
    return basis;
}

double model_space_defect(const std::vector<TaylorPoly>& functions, const BlaschkeProduct& B,
                          std::size_t m_max, std::size_t degree) {
    const TaylorPoly b = taylor(B, degree);
    double worst = 0.0;
    for (std::size_t m = 0; m <= m_max && m <= degree; ++m) {
        const TaylorPoly bz = multiply(TaylorPoly::monomial(m, degree), b, degree);
        for (const auto& u : functions) worst = std::max(worst, std::abs(weighted_inner(u, bz, Weight{0.0})));
    }
    return worst;
}

}  // namespace blaschke_lab
