#include "blaschke_lab/reducing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "blaschke_lab/errors.hpp"
#include "blaschke_lab/wold.hpp"

namespace blaschke_lab {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t v) { return static_cast<Index>(v); }

Eigen::MatrixXcd as_columns(const std::vector<TaylorPoly>& fs, std::size_t degree) {
    Eigen::MatrixXcd m(idx(degree + 1), idx(fs.size()));
    for (std::size_t i = 0; i < fs.size(); ++i) m.col(idx(i)) = fs[i].to_vector(degree);
    return m;
}

SubspaceProjection from_orthonormal(const Eigen::MatrixXcd& V, Weight w, std::size_t degree) {
    const Eigen::VectorXd L = w.diagonal(degree);
    Eigen::MatrixXcd P = V * (V.adjoint() * L.asDiagonal());
    std::vector<TaylorPoly> basis;
    for (Index i = 0; i < V.cols(); ++i) basis.push_back(TaylorPoly::from_vector(V.col(i)));
    return SubspaceProjection{std::move(basis), OperatorMatrix(std::move(P), w), w, degree};
}

// 1 / (1 - conj(a) z)^p
TaylorPoly kernel_power(Complex a, std::size_t p, std::size_t degree) {
    const TaylorPoly k = reproducing_kernel(a, degree);
    TaylorPoly acc = TaylorPoly::monomial(0, degree);
    for (std::size_t i = 0; i < p; ++i) acc = multiply(acc, k, degree);
    return acc;
}

}  // namespace

SubspaceProjection span_projection(const std::vector<TaylorPoly>& functions, Weight w, std::size_t degree,
                                   const Settings& settings) {
    if (functions.empty()) {
        return SubspaceProjection{{}, OperatorMatrix(Eigen::MatrixXcd::Zero(idx(degree + 1), idx(degree + 1)), w), w,
                                  degree};
    }
    for (const auto& f : functions)
        if (f.degree() > degree) throw DimensionMismatch("spanning function exceeds the window degree");
    return from_orthonormal(orthonormalize(as_columns(functions, degree), w, settings.rank_tol), w, degree);
}

SubspaceProjection shell_generated_projection(const BlaschkeProduct& B, const std::vector<TaylorPoly>& generators,
                                              Weight w, std::size_t shells, std::size_t degree,
                                              const Settings& settings) {
    const TaylorPoly b = taylor(B, degree);
    std::vector<TaylorPoly> fs;
    TaylorPoly power = TaylorPoly::monomial(0, degree);
    for (std::size_t k = 0; k <= shells; ++k) {
        for (const auto& g : generators) fs.push_back(multiply(g, power, degree));
        power = multiply(power, b, degree);
    }
    return span_projection(fs, w, degree, settings);
}

SubspaceProjection monomial_reducing_projection(std::size_t N, std::size_t j, Weight w, std::size_t degree) {
    if (N == 0 || j >= N) throw DomainError("monomial reducing subspace needs 0 <= j < N");
    std::vector<bool> pattern(degree + 1);
    for (std::size_t m = 0; m <= degree; ++m) pattern[m] = (m % N == j);
    return diagonal_projection(pattern, w);
}

SubspaceProjection diagonal_projection(const std::vector<bool>& pattern, Weight w) {
    if (pattern.empty()) throw DimensionMismatch("empty diagonal pattern");
    const std::size_t degree = pattern.size() - 1;
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(idx(degree + 1), idx(degree + 1));
    std::vector<TaylorPoly> basis;
    for (std::size_t m = 0; m <= degree; ++m) {
        if (!pattern[m]) continue;
        P(idx(m), idx(m)) = 1.0;
        basis.push_back(TaylorPoly::monomial(m, degree, 1.0 / std::sqrt(w.at(m))));
    }
    return SubspaceProjection{std::move(basis), OperatorMatrix(std::move(P), w), w, degree};
}

std::vector<TaylorPoly> mobius_power_generators(Complex a, std::size_t N, std::size_t j, std::size_t cap,
                                                std::size_t degree) {
    const TaylorPoly phi = multiply(TaylorPoly::monomial(1, degree), kernel_power(a, 2, degree), degree);
    std::vector<TaylorPoly> out;
    TaylorPoly p = TaylorPoly::monomial(0, degree);
    for (std::size_t i = 0; i < j; ++i) p = multiply(p, phi, degree);
    TaylorPoly step = TaylorPoly::monomial(0, degree);
    for (std::size_t i = 0; i < N; ++i) step = multiply(step, phi, degree);
    for (std::size_t k = 0; k <= cap; ++k) {
        out.push_back(p);
        p = multiply(p, step, degree);
    }
    return out;
}

std::vector<TaylorPoly> mobius_k0_basis(Complex a, std::size_t N, std::size_t degree) {
    std::vector<TaylorPoly> out;
    for (std::size_t j = 0; j < N; ++j)
        out.push_back(multiply(TaylorPoly::monomial(j, degree), kernel_power(a, j + 2, degree), degree));
    return out;
}

SubspaceProjection mobius_power_reducing_projection(Complex a, std::size_t N, std::size_t j, std::size_t degree,
                                                    const Settings& settings) {
    if (!(std::abs(a) > 0.0) || std::abs(a) > settings.rho_max)
        throw DomainError("Moebius-power family needs 0 < |a| <= rho_max");
    if (N == 0 || j >= N) throw DomainError("Moebius-power family needs 0 <= j < N");
    const std::size_t cap = settings.mobius_shell_cap != 0 ? settings.mobius_shell_cap : degree / (4 * N);
    const Weight bergman{-1.0};
    const Eigen::MatrixXcd G = as_columns(mobius_power_generators(a, N, j, cap, degree), degree);
    const double min_eig = normalized_gram_min_eigenvalue(G, bergman);
    if (!(min_eig >= settings.rank_tol))
        throw ConditioningError("Moebius-power generators are numerically dependent (smallest Gram eigenvalue " +
                                std::to_string(min_eig) + "); lower the shell cap " + std::to_string(cap));
    try {
        return from_orthonormal(orthonormalize(G, bergman, settings.rank_tol), bergman, degree);
    } catch (const RankError& e) {
        throw ConditioningError(std::string("Moebius-power generators: ") + e.what());
    }
}

double reducing_residual(const OperatorMatrix& P, const BlaschkeProduct& B, Weight w, std::size_t degree,
                         const Settings& settings) {
    if (P.degree() != degree) throw DimensionMismatch("projection degree does not match D");
    if (!(P.weight() == w)) throw DimensionMismatch("projection weight does not match alpha");
    const OperatorMatrix T = toeplitz_matrix(taylor(B, degree), degree, w);
    const Eigen::MatrixXcd Ts = weighted_adjoint(T, w).entries();
    const Eigen::MatrixXcd& p = P.entries();
    const std::size_t s = safe_degree(degree, settings);
    return std::max(weighted_block_norm(p * T.entries() - T.entries() * p, w, s),
                    weighted_block_norm(p * Ts - Ts * p, w, s));
}

double reducing_residual(const SubspaceProjection& P, const BlaschkeProduct& B, Weight w, std::size_t degree,
                         const Settings& settings) {
    return reducing_residual(P.matrix, B, w, degree, settings);
}

OperatorMatrix complement(const SubspaceProjection& P) {
    return OperatorMatrix::identity(P.degree, P.alpha) - P.matrix;
}

ProjectionDefects projection_defects(const SubspaceProjection& P, const Settings& settings) {
    const Eigen::MatrixXcd& p = P.matrix.entries();
    const std::size_t s = safe_degree(P.degree, settings);
    ProjectionDefects d{};
    d.idempotent = weighted_block_norm(p * p - p, P.alpha, s);
    d.selfadjoint = weighted_block_norm(weighted_adjoint(P.matrix, P.alpha).entries() - p, P.alpha, s);
    for (const auto& v : P.basis)
        d.fixes_basis = std::max(d.fixes_basis, weighted_norm(apply(P.matrix, v) - v, P.alpha));
    return d;
}

// --- intertwiners -----------------------------------------------------------

IntertwinerJ shift_equiv_monomial(std::size_t n, Weight w, std::size_t degree) {
    if (n == 0) throw DomainError("shift equivalence needs n >= 1");
    if (degree + 1 < n) throw DomainError("window too small for a single image");
    const double scale = std::pow(static_cast<double>(n), -w.alpha() / 2.0);
    IntertwinerJ J{{}, NormMode::alpha_norm, w, std::nullopt, 0, 0.0};
    for (std::size_t k = 0; (k + 1) * n - 1 <= degree; ++k)
        J.images.push_back(TaylorPoly::monomial((k + 1) * n - 1, degree, scale));
    return J;
}

IntertwinerJ shift_equiv_general(const BlaschkeProduct& B, const TaylorPoly& h, Weight w, std::size_t shells,
                                 std::size_t degree, const Settings& settings) {
    if (h.degree() > degree) throw DimensionMismatch("generator exceeds the window degree");
    const double h0 = weighted_norm(h, Weight{0.0});
    if (h0 == 0.0) throw MembershipError("generator h is zero");
    const TaylorPoly hn = (1.0 / h0) * h.truncated(degree);
    const double defect = model_space_defect({hn}, B, safe_degree(degree, settings), degree);
    if (defect > settings.membership_tol)
        throw MembershipError("generator h is not in K_B (defect " + std::to_string(defect) + ")");

    IntertwinerJ J{{}, NormMode::b_norm, w, B, shells, weighted_norm(hn, w)};
    const TaylorPoly b = taylor(B, degree);
    TaylorPoly img = hn;
    for (std::size_t k = 0; k <= shells; ++k) {
        J.images.push_back(img);
        img = multiply(img, b, degree);
    }
    return J;
}

namespace {

std::vector<ShellDecomposition> shell_coordinates(const IntertwinerJ& J, std::size_t degree,
                                                  const Settings& settings) {
    if (!J.B) throw DomainError("b_norm intertwiner without a Blaschke product");
    const ShellFrame frame(*J.B, J.shells, degree, settings);
    std::vector<ShellDecomposition> out;
    for (const auto& f : J.images) out.push_back(analyze(f, frame));
    return out;
}

}  // namespace

double unitarity_defect(const IntertwinerJ& J, std::size_t degree, const Settings& settings) {
    const std::size_t K = J.images.size();
    double worst = 0.0;
    if (J.mode == NormMode::alpha_norm) {
        for (std::size_t k = 0; k < K; ++k)
            for (std::size_t l = 0; l < K; ++l) {
                const Complex g = weighted_inner(J.images[k], J.images[l], J.alpha);
                const double want = k == l ? J.alpha.at(k) : 0.0;
                worst = std::max(worst, std::abs(g - want));
            }
        return worst;
    }
    const auto coords = shell_coordinates(J, degree, settings);
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t l = 0; l < K; ++l) {
            const Complex g = b_inner(coords[k], coords[l], J.alpha);
            const double want = k == l ? J.alpha.at(k) : 0.0;
            worst = std::max(worst, std::abs(g - want));
        }
    return worst;
}

double intertwining_residual(const IntertwinerJ& J, const BlaschkeProduct& B, std::size_t degree,
                             const Settings& settings) {
    const std::size_t K = J.images.size();
    if (K < 2) return 0.0;
    const TaylorPoly b = taylor(B, degree);
    if (J.mode == NormMode::alpha_norm) {
        // Columns k = 0..K-2 of J S - T_B J, restricted to the safe range.
        const std::size_t cols = std::min(K - 1, safe_degree(degree, settings) + 1);
        const Eigen::VectorXd sL = J.alpha.diagonal(degree).array().sqrt();
        Eigen::MatrixXcd X(idx(degree + 1), idx(cols));
        for (std::size_t k = 0; k < cols; ++k)
            X.col(idx(k)) = (J.images[k + 1] - multiply(b, J.images[k], degree)).to_vector(degree);
        Eigen::VectorXd domain(idx(cols));
        for (std::size_t k = 0; k < cols; ++k) domain(idx(k)) = 1.0 / std::sqrt(J.alpha.at(k));
        return spectral_norm(sL.asDiagonal() * X * domain.asDiagonal());
    }
    if (!J.B) throw DomainError("b_norm intertwiner without a Blaschke product");
    const ShellFrame frame(*J.B, J.shells, degree, settings);
    double worst = 0.0;
    for (std::size_t k = 0; k + 1 < K; ++k) {
        const ShellDecomposition before = analyze(J.images[k], frame);
        const ShellDecomposition after = analyze(multiply(b, J.images[k], degree), frame);
        const Index cols = before.coefficients.cols();
        for (Index l = 0; l < cols; ++l) {
            const Eigen::VectorXcd shifted =
                l == 0 ? Eigen::VectorXcd::Zero(before.coefficients.rows()) : Eigen::VectorXcd(before.coefficients.col(l - 1));
            worst = std::max(worst, (after.coefficients.col(l) - shifted).cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

double b_norm_defect(const IntertwinerJ& J, std::size_t degree, const Settings& settings) {
    if (J.mode != NormMode::b_norm) throw DomainError("b_norm_defect needs a b_norm intertwiner");
    const auto coords = shell_coordinates(J, degree, settings);
    double worst = 0.0;
    for (std::size_t k = 0; k < coords.size(); ++k)
        worst = std::max(worst, std::abs(b_norm(coords[k], J.alpha) - std::sqrt(J.alpha.at(k))));
    return worst;
}

double hyperinvariance_check(const SubspaceProjection& P, const OperatorMatrix& W, const Settings& settings) {
    if (W.degree() != P.degree) throw DimensionMismatch("operator and projection degrees differ");
    const Eigen::MatrixXcd& p = P.matrix.entries();
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(p.rows(), p.cols());
    return weighted_block_norm((I - p) * W.entries() * p, P.alpha, safe_degree(P.degree, settings));
}

double hyperinvariance_check(const SubspaceProjection& P, const CommutantOperator& W, const Settings& settings) {
    if (!(W.alpha == P.alpha)) throw DimensionMismatch("operator and projection weights differ");
    return hyperinvariance_check(P, W.realization, settings);
}

}  // namespace blaschke_lab
