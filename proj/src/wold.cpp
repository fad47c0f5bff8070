#include "blaschke_lab/wold.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "blaschke_lab/errors.hpp"

namespace blaschke_lab {

std::size_t default_shell_count(std::size_t n, std::size_t degree) {
    return degree / (2 * n);
}

ShellFrame::ShellFrame(const BlaschkeProduct& B, std::size_t shells, std::size_t degree, const Settings& settings)
    : B_(B), shells_(shells), degree_(degree), basis_(model_basis(B, degree, settings)) {
    const TaylorPoly b = taylor(B, degree);
    powers_.reserve(shells + 1);
    powers_.push_back(TaylorPoly::monomial(0, degree));
    for (std::size_t k = 1; k <= shells; ++k) powers_.push_back(multiply(powers_.back(), b, degree));

    // B^M is inner, so its full H^2 norm is one.
    const double inside = std::pow(weighted_norm(powers_.back(), Weight{0.0}), 2);
    tail_ = std::sqrt(std::max(0.0, 1.0 - inside));
    if (tail_ > settings.tol_tail)
        throw TailError("B^" + std::to_string(shells) + " has H^2 tail " + std::to_string(tail_) +
                        " beyond degree " + std::to_string(degree) + "; increase D or reduce M");

    const std::size_t n = B.degree();
    matrix_.resize(static_cast<Eigen::Index>(degree + 1), static_cast<Eigen::Index>(n * (shells + 1)));
    for (std::size_t k = 0; k <= shells; ++k)
        for (std::size_t j = 0; j < n; ++j)
            matrix_.col(static_cast<Eigen::Index>(k * n + j)) =
                multiply(basis_.orthonormal[j], powers_[k], degree).to_vector(degree);
}

std::vector<TaylorPoly> ShellDecomposition::components() const {
    std::vector<TaylorPoly> out;
    out.reserve(n());
    for (Eigen::Index j = 0; j < coefficients.rows(); ++j)
        out.push_back(TaylorPoly::from_vector(coefficients.row(j).transpose()));
    return out;
}

double ShellDecomposition::shell_norm(std::size_t k) const {
    return coefficients.col(static_cast<Eigen::Index>(k)).norm();
}

TaylorPoly ShellDecomposition::shell_function(std::size_t k, const ModelSpaceBasis& basis) const {
    TaylorPoly h = TaylorPoly::zero(basis.orthonormal.front().degree());
    for (std::size_t j = 0; j < n(); ++j)
        h += coefficients(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) * basis.orthonormal[j];
    return h;
}

ShellDecomposition ShellDecomposition::from_components(const BlaschkeProduct& B,
                                                       const std::vector<TaylorPoly>& components) {
    if (components.size() != B.degree())
        throw DimensionMismatch("expected " + std::to_string(B.degree()) + " components, got " +
                                std::to_string(components.size()));
    std::size_t shells = 0;
    for (const auto& c : components) shells = std::max(shells, c.degree());
    Eigen::MatrixXcd coeffs(static_cast<Eigen::Index>(components.size()), static_cast<Eigen::Index>(shells + 1));
    for (std::size_t j = 0; j < components.size(); ++j)
        coeffs.row(static_cast<Eigen::Index>(j)) = components[j].to_vector(shells).transpose();
    return ShellDecomposition{B, shells, std::move(coeffs)};
}

ShellDecomposition analyze(const TaylorPoly& f, const BlaschkeProduct& B, std::size_t shells, std::size_t degree,
                           const Settings& settings) {
    return analyze(f, ShellFrame(B, shells, degree, settings));
}

ShellDecomposition analyze(const TaylorPoly& f, const ShellFrame& frame) {
    if (f.degree() > frame.degree())
        throw DimensionMismatch("function of degree " + std::to_string(f.degree()) + " exceeds the window degree " +
                                std::to_string(frame.degree()));
    const Eigen::VectorXcd c = frame.matrix().adjoint() * f.to_vector(frame.degree());
    const auto n = static_cast<Eigen::Index>(frame.n());
    const auto cols = static_cast<Eigen::Index>(frame.shells() + 1);
    Eigen::MatrixXcd coeffs(n, cols);
    for (Eigen::Index k = 0; k < cols; ++k) coeffs.col(k) = c.segment(k * n, n);
    return ShellDecomposition{frame.blaschke(), frame.shells(), std::move(coeffs)};
}

TaylorPoly synthesize(const ShellDecomposition& dec, std::size_t degree, const Settings& settings) {
    // The window check is irrelevant for synthesis: a shell beyond the window
    // simply contributes nothing.
    Settings relaxed = settings;
    relaxed.tol_tail = 1.0;
    return synthesize(dec, ShellFrame(dec.B, dec.shell_count, degree, relaxed));
}

TaylorPoly synthesize(const ShellDecomposition& dec, const ShellFrame& frame) {
    if (dec.n() != frame.n() || dec.shell_count > frame.shells())
        throw DimensionMismatch("decomposition does not fit the shell frame");
    const auto n = static_cast<Eigen::Index>(dec.n());
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(frame.matrix().cols());
    for (Eigen::Index k = 0; k < dec.coefficients.cols(); ++k) c.segment(k * n, n) = dec.coefficients.col(k);
    return TaylorPoly::from_vector(frame.matrix() * c);
}

double b_norm(const ShellDecomposition& dec, Weight w) {
    double acc = 0.0;
    for (std::size_t k = 0; k <= dec.shell_count; ++k) acc += w.at(k) * std::pow(dec.shell_norm(k), 2);
    return std::sqrt(acc);
}

Complex b_inner(const ShellDecomposition& a, const ShellDecomposition& b, Weight w) {
    if (a.n() != b.n()) throw DimensionMismatch("decompositions over different model spaces");
    const std::size_t shells = std::min(a.shell_count, b.shell_count);
    Complex acc{};
    for (std::size_t k = 0; k <= shells; ++k) {
        const auto kk = static_cast<Eigen::Index>(k);
        acc += w.at(k) * b.coefficients.col(kk).dot(a.coefficients.col(kk));
    }
    return acc;
}

double norm_equivalence_ratio(const TaylorPoly& f, const BlaschkeProduct& B, Weight w, std::size_t shells,
                              std::size_t degree, const Settings& settings) {
    const double denom = weighted_norm(f, w);
    if (denom == 0.0) throw DomainError("norm equivalence ratio is undefined for f = 0");
    const double num = b_norm(analyze(f, B, shells, degree, settings), w);
    return (num * num) / (denom * denom);
}

ShellDecomposition analyze_least_squares(const TaylorPoly& f, const ShellFrame& frame) {
    const Eigen::VectorXcd c =
        frame.matrix().completeOrthogonalDecomposition().solve(f.to_vector(frame.degree()));
    const auto n = static_cast<Eigen::Index>(frame.n());
    const auto cols = static_cast<Eigen::Index>(frame.shells() + 1);
    Eigen::MatrixXcd coeffs(n, cols);
    for (Eigen::Index k = 0; k < cols; ++k) coeffs.col(k) = c.segment(k * n, n);
    return ShellDecomposition{frame.blaschke(), frame.shells(), std::move(coeffs)};
}

}  // namespace blaschke_lab
