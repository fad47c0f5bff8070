#include "blaschke_lab/commutant.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "blaschke_lab/errors.hpp"

namespace blaschke_lab {

std::size_t default_commutant_shells(const BlaschkeProduct& B, std::size_t degree, const Settings& settings) {
    const std::size_t s = safe_degree(degree, settings);
    const TaylorPoly b = taylor(B, degree);
    TaylorPoly power = b;
    std::size_t k = 1;
    for (; k < settings.compose_terms_factor * degree; ++k) {
        const TaylorPoly next = multiply(power, b, degree);
        const double visible = weighted_norm(next, Weight{0.0});
        if (std::sqrt(std::max(0.0, 1.0 - visible * visible)) > settings.tol_tail) break;
        if (weighted_norm(next.truncated(s), Weight{0.0}) < settings.tol_compose) break;
        power = next;
    }
    return std::max(k, degree / B.degree());
}

// --- MultiplierMatrix -------------------------------------------------------

MultiplierMatrix::MultiplierMatrix(std::size_t n, std::vector<TaylorPoly> entries)
    : n_(n), entries_(std::move(entries)) {
    if (n_ == 0) throw DimensionMismatch("multiplier matrix needs n >= 1");
    if (entries_.size() != n_ * n_)
        throw DimensionMismatch("multiplier matrix of size " + std::to_string(n_) + " needs " +
                                std::to_string(n_ * n_) + " entries, got " + std::to_string(entries_.size()));
}

MultiplierMatrix MultiplierMatrix::identity(std::size_t n) {
    return scalar(n, TaylorPoly{1.0});
}

MultiplierMatrix MultiplierMatrix::scalar(std::size_t n, const TaylorPoly& g) {
    std::vector<TaylorPoly> e(n * n);
    for (std::size_t j = 0; j < n; ++j) e[j * n + j] = g;
    return MultiplierMatrix(n, std::move(e));
}

std::size_t MultiplierMatrix::max_degree() const {
    std::size_t d = 0;
    for (const auto& e : entries_) d = std::max(d, e.degree());
    return d;
}

MultiplierMatrix MultiplierMatrix::operator*(const MultiplierMatrix& other) const {
    if (n_ != other.n_) throw DimensionMismatch("multiplier matrices of different size");
    const std::size_t degree = max_degree() + other.max_degree();
    std::vector<TaylorPoly> e(n_ * n_, TaylorPoly::zero(degree));
    for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t k = 0; k < n_; ++k)
            for (std::size_t l = 0; l < n_; ++l) e[j * n_ + k] += multiply((*this)(j, l), other(l, k), degree);
    return MultiplierMatrix(n_, std::move(e));
}

MultiplierMatrix MultiplierMatrix::operator-(const MultiplierMatrix& other) const {
    if (n_ != other.n_) throw DimensionMismatch("multiplier matrices of different size");
    std::vector<TaylorPoly> e = entries_;
    for (std::size_t i = 0; i < e.size(); ++i) e[i] -= other.entries_[i];
    return MultiplierMatrix(n_, std::move(e));
}

Eigen::MatrixXcd MultiplierMatrix::evaluate(Complex z) const {
    const auto n = static_cast<Eigen::Index>(n_);
    Eigen::MatrixXcd m(n, n);
    for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t k = 0; k < n_; ++k)
            m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = (*this)(j, k).evaluate(z);
    return m;
}

// --- construction -----------------------------------------------------------

namespace {

void require_fit(const MultiplierMatrix& phi, const BlaschkeProduct& B, const Settings& settings) {
    if (phi.n() != B.degree())
        throw DimensionMismatch("multiplier matrix size " + std::to_string(phi.n()) +
                                " does not match Blaschke degree " + std::to_string(B.degree()));
    if (phi.max_degree() > settings.max_symbol_degree)
        throw DomainError("multiplier entry degree " + std::to_string(phi.max_degree()) + " exceeds max_symbol_degree " +
                          std::to_string(settings.max_symbol_degree));
}

void require_tail(const ShellFrame& frame, std::size_t shells, const Settings& settings) {
    const double inside = std::pow(weighted_norm(frame.power(shells), Weight{0.0}), 2);
    const double tail = std::sqrt(std::max(0.0, 1.0 - inside));
    if (tail > settings.tol_tail)
        throw TailError("B^" + std::to_string(shells) + " has H^2 tail " + std::to_string(tail) +
                        " beyond degree " + std::to_string(frame.degree()));
}

}  // namespace

CommutantOperator build(const MultiplierMatrix& phi, const BlaschkeProduct& B, Weight w, std::size_t shells,
                        std::size_t degree, const Settings& settings) {
    require_fit(phi, B, settings);
    const std::size_t n = B.degree();
    const std::size_t spread = phi.max_degree();

    // Output shells reach M + deg(phi); only the analysed shells need to be
    // visible in the window.
    Settings relaxed = settings;
    relaxed.tol_tail = 1.0;
    const ShellFrame frame(B, shells + spread, degree, relaxed);
    require_tail(frame, shells, settings);

    const auto rows_out = static_cast<Eigen::Index>(n * (shells + spread + 1));
    const auto cols_in = static_cast<Eigen::Index>(n * (shells + 1));
    Eigen::MatrixXcd V = Eigen::MatrixXcd::Zero(rows_out, cols_in);
    for (std::size_t jo = 0; jo < n; ++jo)
        for (std::size_t ji = 0; ji < n; ++ji) {
            const TaylorPoly& p = phi(jo, ji);
            for (std::size_t k = 0; k <= shells; ++k)
                for (std::size_t s = 0; s <= p.degree(); ++s)
                    V(static_cast<Eigen::Index>((k + s) * n + jo), static_cast<Eigen::Index>(k * n + ji)) += p[s];
        }

    const Eigen::MatrixXcd& E = frame.matrix();
    Eigen::MatrixXcd realization = E * (V * E.leftCols(cols_in).adjoint());
    OperatorMatrix op(std::move(realization), w);
    const double residual = commutation_residual(op, B, w, degree, settings);
    return CommutantOperator{phi, B, w, std::move(op), shells, residual};
}

TaylorPoly apply_formula(const MultiplierMatrix& phi, const BlaschkeProduct& B, const TaylorPoly& f,
                         std::size_t shells, std::size_t degree, const Settings& settings) {
    require_fit(phi, B, settings);
    const ShellFrame frame(B, shells, degree, settings);
    const std::vector<TaylorPoly> comps = analyze(f, frame).components();
    const std::size_t n = B.degree();
    const std::size_t out_degree = shells + phi.max_degree();
    const TaylorPoly b = taylor(B, degree);

    TaylorPoly result = TaylorPoly::zero(degree);
    for (std::size_t j = 0; j < n; ++j) {
        TaylorPoly g = TaylorPoly::zero(out_degree);
        for (std::size_t k = 0; k < n; ++k) g += multiply(phi(j, k), comps[k], out_degree);
        result += multiply(frame.basis().orthonormal[j], compose_truncated(g, b, degree, settings), degree);
    }
    return result;
}

std::vector<TaylorPoly> extract_symbols(const OperatorMatrix& W, const BlaschkeProduct& B, std::size_t /*shells*/,
                                        std::size_t degree, const Settings& settings) {
    if (W.degree() != degree) throw DimensionMismatch("operator degree does not match D");
    const double residual = commutation_residual(W, B, W.weight(), degree, settings);
    if (!(residual <= settings.tol_commute))
        throw NotInCommutantError("operator does not commute with T_B (residual " + std::to_string(residual) + ")");
    const ModelSpaceBasis basis = model_basis(B, degree, settings);
    std::vector<TaylorPoly> phis;
    phis.reserve(basis.size());
    for (const auto& u : basis.orthonormal) phis.push_back(apply(W, u));
    return phis;
}

MultiplierMatrix symbols_to_matrix(const std::vector<TaylorPoly>& phis, const BlaschkeProduct& B,
                                   std::size_t shells, std::size_t degree, const Settings& settings) {
    const std::size_t n = B.degree();
    if (phis.size() != n)
        throw DimensionMismatch("expected " + std::to_string(n) + " symbols, got " + std::to_string(phis.size()));
    const ShellFrame frame(B, shells, degree, settings);
    const std::size_t cut = std::min(settings.max_symbol_degree, shells);
    std::vector<TaylorPoly> entries(n * n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::vector<TaylorPoly> comps = analyze(phis[k], frame).components();
        for (std::size_t j = 0; j < n; ++j) entries[j * n + k] = comps[j].truncated(cut);
    }
    return MultiplierMatrix(n, std::move(entries));
}

double commutation_residual(const OperatorMatrix& A, const BlaschkeProduct& B, Weight w, std::size_t degree,
                            const Settings& settings) {
    if (A.degree() != degree) throw DimensionMismatch("operator degree does not match D");
    const Eigen::MatrixXcd T = toeplitz_matrix(taylor(B, degree), degree, w).entries();
    const Eigen::MatrixXcd X = A.entries() * T - T * A.entries();
    return weighted_block_norm(X, w, safe_degree(degree, settings));
}

IdempotentReport idempotent_residual(const MultiplierMatrix& phi, const Settings& settings) {
    IdempotentReport report{};
    const MultiplierMatrix defect = phi * phi - phi;
    for (const auto& e : defect.entries()) report.residual = std::max(report.residual, e.max_abs());

    static constexpr std::array<Complex, 4> points{Complex{0.0, 0.0}, Complex{0.5, 0.0}, Complex{-0.3, 0.4},
                                                   Complex{0.0, 0.7}};
    for (const Complex z : points) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(phi.evaluate(z));
        const auto& s = svd.singularValues();
        report.ranks.push_back(static_cast<std::size_t>((s.array() > settings.symbol_rank_tol).count()));
    }
    report.rank = report.ranks.front();
    report.rank_constant = std::all_of(report.ranks.begin(), report.ranks.end(),
                                       [&](std::size_t r) { return r == report.rank; });
    for (std::size_t j = 0; j < phi.n(); ++j) report.trace += phi(j, j)[0];
    return report;
}

double cowen_residual(const OperatorMatrix& W, const BlaschkeProduct& B, Complex a, std::size_t degree,
                      const Settings& settings) {
    if (W.degree() != degree) throw DimensionMismatch("operator degree does not match D");
    if (std::abs(a) >= 1.0) throw DomainError("Cowen sample point must lie in the open disc");
    const Eigen::VectorXcd v = weighted_adjoint(W, Weight{0.0}).entries() * reproducing_kernel(a, degree).to_vector();
    TaylorPoly shifted = taylor(B, degree);
    shifted -= TaylorPoly{eval(B, a, settings)};
    const Eigen::VectorXcd g = shifted.to_vector(degree);

    const auto top = static_cast<Eigen::Index>(degree);
    double worst = 0.0;
    for (Eigen::Index m = 0; m <= static_cast<Eigen::Index>(safe_degree(degree, settings)); ++m) {
        // <v, g z^m>_0 = sum_i v_{i+m} conj(g_i)
        const Eigen::Index len = top + 1 - m;
        const Complex ip = g.head(len).dot(v.segment(m, len));
        worst = std::max(worst, std::abs(ip));
    }
    return worst;
}

}  // namespace blaschke_lab
