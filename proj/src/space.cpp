#include "blaschke_lab/space.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "blaschke_lab/errors.hpp"

namespace blaschke_lab {

Weight::Weight(double alpha) : alpha_(alpha) {
    if (!std::isfinite(alpha)) throw DomainError("weight exponent must be finite");
}

double Weight::at(std::size_t k) const {
    return std::pow(static_cast<double>(k + 1), alpha_);
}

Eigen::VectorXd Weight::diagonal(std::size_t degree) const {
    Eigen::VectorXd d(static_cast<Eigen::Index>(degree + 1));
    for (std::size_t k = 0; k <= degree; ++k) d(static_cast<Eigen::Index>(k)) = at(k);
    return d;
}

// --- TaylorPoly -------------------------------------------------------------

TaylorPoly::TaylorPoly() : coeffs_(1, Complex{}) {}

TaylorPoly::TaylorPoly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(Complex{});
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (!std::isfinite(coeffs_[k].real()) || !std::isfinite(coeffs_[k].imag()))
            throw DomainError("non-finite Taylor coefficient at index " + std::to_string(k));
    }
}

TaylorPoly::TaylorPoly(std::initializer_list<Complex> coeffs)
    : TaylorPoly(std::vector<Complex>(coeffs)) {}

TaylorPoly TaylorPoly::zero(std::size_t degree) {
    return TaylorPoly(std::vector<Complex>(degree + 1));
}

TaylorPoly TaylorPoly::monomial(std::size_t power, std::size_t degree, Complex scale) {
    std::vector<Complex> c(std::max(degree, power) + 1);
    c[power] = scale;
    c.resize(degree + 1);
    return TaylorPoly(std::move(c));
}

TaylorPoly TaylorPoly::from_vector(const Eigen::VectorXcd& v) {
    return TaylorPoly(std::vector<Complex>(v.data(), v.data() + v.size()));
}

TaylorPoly TaylorPoly::truncated(std::size_t degree) const {
    std::vector<Complex> c(degree + 1);
    std::copy_n(coeffs_.begin(), std::min(coeffs_.size(), degree + 1), c.begin());
    return TaylorPoly(std::move(c));
}

Eigen::VectorXcd TaylorPoly::to_vector(std::size_t degree) const {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(degree + 1));
    const std::size_t n = std::min(coeffs_.size(), degree + 1);
    for (std::size_t k = 0; k < n; ++k) v(static_cast<Eigen::Index>(k)) = coeffs_[k];
    return v;
}

Complex TaylorPoly::evaluate(Complex z) const {
    Complex acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

double TaylorPoly::max_abs() const {
    double m = 0.0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

TaylorPoly& TaylorPoly::operator+=(const TaylorPoly& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
    for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
    return *this;
}

TaylorPoly& TaylorPoly::operator-=(const TaylorPoly& other) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
    for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
    return *this;
}

TaylorPoly& TaylorPoly::operator*=(Complex s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
}

// --- OperatorMatrix ---------------------------------------------------------

OperatorMatrix::OperatorMatrix(Eigen::MatrixXcd entries, Weight weight)
    : entries_(std::move(entries)), weight_(weight) {
    if (entries_.rows() == 0 || entries_.rows() != entries_.cols())
        throw DimensionMismatch("operator matrix must be square and non-empty");
}

OperatorMatrix OperatorMatrix::identity(std::size_t degree, Weight weight) {
    const auto n = static_cast<Eigen::Index>(degree + 1);
    return OperatorMatrix(Eigen::MatrixXcd::Identity(n, n), weight);
}

namespace {
void require_same_shape(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (a.degree() != b.degree())
        throw DimensionMismatch("operator degrees differ: " + std::to_string(a.degree()) + " vs " +
                                std::to_string(b.degree()));
}
}  // namespace

OperatorMatrix OperatorMatrix::operator*(const OperatorMatrix& other) const {
    require_same_shape(*this, other);
    return OperatorMatrix(entries_ * other.entries_, weight_);
}

OperatorMatrix OperatorMatrix::operator+(const OperatorMatrix& other) const {
    require_same_shape(*this, other);
    return OperatorMatrix(entries_ + other.entries_, weight_);
}

OperatorMatrix OperatorMatrix::operator-(const OperatorMatrix& other) const {
    require_same_shape(*this, other);
    return OperatorMatrix(entries_ - other.entries_, weight_);
}

// --- operations -------------------------------------------------------------

Complex weighted_inner(const TaylorPoly& f, const TaylorPoly& g, Weight w) {
    const std::size_t n = std::min(f.degree(), g.degree()) + 1;
    Complex acc{};
    for (std::size_t k = 0; k < n; ++k) acc += f[k] * std::conj(g[k]) * w.at(k);
    return acc;
}

double weighted_norm(const TaylorPoly& f, Weight w) {
    double acc = 0.0;
    for (std::size_t k = 0; k <= f.degree(); ++k) acc += std::norm(f[k]) * w.at(k);
    return std::sqrt(acc);
}

TaylorPoly multiply(const TaylorPoly& f, const TaylorPoly& g, std::size_t degree) {
    std::vector<Complex> out(degree + 1);
    const auto fc = f.coeffs();
    const auto gc = g.coeffs();
    for (std::size_t i = 0; i < fc.size() && i <= degree; ++i) {
        if (fc[i] == Complex{}) continue;
        const std::size_t jmax = std::min(gc.size() - 1, degree - i);
        for (std::size_t j = 0; j <= jmax; ++j) out[i + j] += fc[i] * gc[j];
    }
    return TaylorPoly(std::move(out));
}

TaylorPoly compose_truncated(const TaylorPoly& f, const TaylorPoly& B, std::size_t degree,
                             const Settings& settings) {
    const auto fc = f.coeffs();
    const std::size_t terms = fc.size();
    const std::size_t max_terms = std::max<std::size_t>(settings.compose_terms_factor * degree, 1);

    // suffix[k] = max_{j >= k} |f_j|
    std::vector<double> suffix(terms + 1, 0.0);
    for (std::size_t k = terms; k-- > 0;) suffix[k] = std::max(suffix[k + 1], std::abs(fc[k]));
    const double scale = std::max(1.0, suffix[0]);

    const TaylorPoly b = B.truncated(degree);
    TaylorPoly power = TaylorPoly::monomial(0, degree);
    TaylorPoly acc = TaylorPoly::zero(degree);
    for (std::size_t k = 0; k < terms; ++k) {
        if (suffix[k] * power.max_abs() < settings.tol_compose * scale) return acc;
        if (k == max_terms)
            throw DivergenceError("composition tail still above tolerance after " +
                                  std::to_string(max_terms) + " terms");
        acc += fc[k] * power;
        power = multiply(power, b, degree);
    }
    return acc;
}

OperatorMatrix toeplitz_matrix(const TaylorPoly& g, std::size_t degree, Weight w) {
    const auto n = static_cast<Eigen::Index>(degree + 1);
    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index j = k; j < n; ++j) T(j, k) = g[static_cast<std::size_t>(j - k)];
    return OperatorMatrix(std::move(T), w);
}

OperatorMatrix weighted_adjoint(const OperatorMatrix& A, Weight w) {
    const Eigen::VectorXd lambda = w.diagonal(A.degree());
    Eigen::MatrixXcd adj = A.entries().adjoint();
    adj = lambda.cwiseInverse().asDiagonal() * adj * lambda.asDiagonal();
    return OperatorMatrix(std::move(adj), w);
}

TaylorPoly apply(const OperatorMatrix& A, const TaylorPoly& f) {
    if (f.degree() > A.degree())
        throw DimensionMismatch("function of degree " + std::to_string(f.degree()) +
                                " exceeds operator degree " + std::to_string(A.degree()));
    return TaylorPoly::from_vector(A.entries() * f.to_vector(A.degree()));
}

// --- linear algebra helpers -------------------------------------------------

double spectral_norm(const Eigen::MatrixXcd& X) {
    if (X.size() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(X);
    return svd.singularValues()(0);
}

double weighted_block_norm(const Eigen::MatrixXcd& X, Weight w, std::size_t s) {
    const auto n = static_cast<Eigen::Index>(s + 1);
    const Eigen::VectorXd half = w.diagonal(s).cwiseSqrt();
    const Eigen::MatrixXcd block =
        half.asDiagonal() * X.topLeftCorner(n, n) * half.cwiseInverse().asDiagonal();
    return spectral_norm(block);
}

Eigen::MatrixXcd orthonormalize(const Eigen::MatrixXcd& columns, Weight w, double rank_tol) {
    const Eigen::VectorXd lambda = w.diagonal(static_cast<std::size_t>(columns.rows()) - 1);
    auto inner = [&](const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) {
        return (y.adjoint() * lambda.asDiagonal() * x)(0);
    };
    Eigen::MatrixXcd q(columns.rows(), columns.cols());
    for (Eigen::Index c = 0; c < columns.cols(); ++c) {
        Eigen::VectorXcd v = columns.col(c);
        const double original = std::sqrt(std::abs(inner(v, v)));
        for (int pass = 0; pass < 2; ++pass)
            for (Eigen::Index p = 0; p < c; ++p) v -= inner(v, q.col(p)) * q.col(p);
        const double norm = std::sqrt(std::abs(inner(v, v)));
        if (!(norm > rank_tol * original))
            throw RankError("column " + std::to_string(c) + " is numerically dependent on its predecessors");
        q.col(c) = v / norm;
    }
    return q;
}

double normalized_gram_min_eigenvalue(const Eigen::MatrixXcd& columns, Weight w) {
    const Eigen::VectorXd lambda = w.diagonal(static_cast<std::size_t>(columns.rows()) - 1);
    Eigen::MatrixXcd gram = columns.adjoint() * lambda.asDiagonal() * columns;
    const Eigen::VectorXd d = gram.diagonal().real().cwiseSqrt().cwiseInverse();
    gram = d.asDiagonal() * gram * d.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram, Eigen::EigenvaluesOnly);
    return eig.eigenvalues()(0);
}

}  // namespace blaschke_lab
