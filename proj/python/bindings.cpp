#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "blaschke_lab/blaschke.hpp"
#include "blaschke_lab/commutant.hpp"
#include "blaschke_lab/errors.hpp"
#include "blaschke_lab/experiment.hpp"
#include "blaschke_lab/ortho.hpp"
#include "blaschke_lab/reducing.hpp"
#include "blaschke_lab/wold.hpp"

namespace py = pybind11;
namespace bl = blaschke_lab;

namespace {

using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

bl::TaylorPoly poly(const Vec& v) {
    if (v.size() == 0) throw bl::DimensionMismatch("empty coefficient array");
    return bl::TaylorPoly::from_vector(v);
}

Mat stack(const std::vector<bl::TaylorPoly>& fs, std::size_t degree) {
    Mat m(static_cast<Eigen::Index>(fs.size()), static_cast<Eigen::Index>(degree + 1));
    for (std::size_t i = 0; i < fs.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = fs[i].to_vector(degree).transpose();
    return m;
}

// phi[j][k] is the coefficient array of entry (j, k).
bl::MultiplierMatrix multiplier(const std::vector<std::vector<Vec>>& phi) {
    const std::size_t n = phi.size();
    std::vector<bl::TaylorPoly> entries;
    for (const auto& row : phi) {
        if (row.size() != n) throw bl::DimensionMismatch("multiplier matrix must be square");
        for (const auto& e : row) entries.push_back(poly(e));
    }
    return bl::MultiplierMatrix(n, std::move(entries));
}

bl::OperatorMatrix op(const Mat& m, double alpha) {
    if (m.rows() != m.cols() || m.rows() == 0) throw bl::DimensionMismatch("operator matrix must be square");
    return bl::OperatorMatrix(m, bl::Weight{alpha});
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Finite-section computations for Toeplitz operators with finite Blaschke symbols";

    // Translators run newest first, so the subclasses shadow the base.
    auto& base = py::register_exception<bl::Error>(m, "BlaschkeLabError", PyExc_RuntimeError);
#define BL_EXC(Name) py::register_exception<bl::Name>(m, #Name, base.ptr())
    BL_EXC(DomainError);
    BL_EXC(DimensionMismatch);
    BL_EXC(DivergenceError);
    BL_EXC(PoleError);
    BL_EXC(RankError);
    BL_EXC(TailError);
    BL_EXC(NotInCommutantError);
    BL_EXC(GapError);
    BL_EXC(ConditioningError);
    BL_EXC(NotSelfAdjointError);
    BL_EXC(MembershipError);
    BL_EXC(ConfigError);
#undef BL_EXC

    py::class_<bl::BlaschkeProduct>(m, "BlaschkeProduct")
        .def(py::init([](const std::vector<std::pair<bl::Complex, std::size_t>>& zeros, double theta) {
                 std::vector<bl::BlaschkeZero> zs;
                 for (const auto& [a, mult] : zeros) zs.push_back({a, mult});
                 return bl::BlaschkeProduct(theta, std::move(zs));
             }),
             py::arg("zeros"), py::arg("theta") = 0.0,
             "zeros is a list of (value, multiplicity) pairs")
        .def_static("monomial", &bl::BlaschkeProduct::monomial, py::arg("n"))
        .def_static(
            "mobius_power", [](bl::Complex a, std::size_t n) { return bl::BlaschkeProduct::mobius_power(a, n); },
            py::arg("a"), py::arg("n"))
        .def_property_readonly("degree", &bl::BlaschkeProduct::degree)
        .def_property_readonly("theta", &bl::BlaschkeProduct::theta)
        .def_property_readonly("zeros", &bl::BlaschkeProduct::expanded_zeros)
        .def("__call__", [](const bl::BlaschkeProduct& B, bl::Complex z) { return bl::eval(B, z); }, py::arg("z"));

    m.def("taylor", [](const bl::BlaschkeProduct& B, std::size_t D) { return bl::taylor(B, D).to_vector(); },
          py::arg("B"), py::arg("degree"), "Taylor coefficients of B through degree D");
    m.def("model_basis", [](const bl::BlaschkeProduct& B, std::size_t D) {
        return stack(bl::model_basis(B, D).orthonormal, D);
    }, py::arg("B"), py::arg("degree"), "H^2-orthonormal basis of K_B, one row per element");
    m.def("weighted_norm", [](const Vec& f, double alpha) { return bl::weighted_norm(poly(f), bl::Weight{alpha}); },
          py::arg("f"), py::arg("alpha"));
    m.def("toeplitz_matrix", [](const Vec& g, std::size_t D) {
        return bl::toeplitz_matrix(poly(g), D, bl::Weight{0.0}).entries();
    }, py::arg("g"), py::arg("degree"));

    m.def("analyze", [](const Vec& f, const bl::BlaschkeProduct& B, std::size_t M, std::size_t D) {
        return bl::analyze(poly(f), B, M, D).coefficients;
    }, py::arg("f"), py::arg("B"), py::arg("shells"), py::arg("degree"), "n x (M+1) shell coefficients c[j, k]");
    m.def("synthesize", [](const Mat& c, const bl::BlaschkeProduct& B, std::size_t D) {
        if (c.rows() != static_cast<Eigen::Index>(B.degree()) || c.cols() == 0)
            throw bl::DimensionMismatch("coefficients must have deg B rows");
        const bl::ShellDecomposition dec{B, static_cast<std::size_t>(c.cols()) - 1, c};
        return bl::synthesize(dec, D).to_vector(D);
    }, py::arg("c"), py::arg("B"), py::arg("degree"));
    m.def("b_norm", [](const Mat& c, const bl::BlaschkeProduct& B, double alpha) {
        const bl::ShellDecomposition dec{B, static_cast<std::size_t>(c.cols()) - 1, c};
        return bl::b_norm(dec, bl::Weight{alpha});
    }, py::arg("c"), py::arg("B"), py::arg("alpha"));
    m.def("norm_equivalence_ratio",
          [](const Vec& f, const bl::BlaschkeProduct& B, double alpha, std::size_t M, std::size_t D) {
              return bl::norm_equivalence_ratio(poly(f), B, bl::Weight{alpha}, M, D);
          },
          py::arg("f"), py::arg("B"), py::arg("alpha"), py::arg("shells"), py::arg("degree"));

    m.def("build_commutant",
          [](const std::vector<std::vector<Vec>>& phi, const bl::BlaschkeProduct& B, double alpha, std::size_t D,
             std::optional<std::size_t> M) {
              const std::size_t shells = M ? *M : bl::default_commutant_shells(B, D);
              const bl::CommutantOperator W = bl::build(multiplier(phi), B, bl::Weight{alpha}, shells, D);
              return py::make_tuple(W.realization.entries(), W.commutation_residual);
          },
          py::arg("phi"), py::arg("B"), py::arg("alpha"), py::arg("degree"), py::arg("shells") = py::none(),
          "(realization, commutation residual); shells defaults to the B-dependent commutant count");
    m.def("default_commutant_shells",
          [](const bl::BlaschkeProduct& B, std::size_t D) { return bl::default_commutant_shells(B, D); },
          py::arg("B"), py::arg("degree"));
    m.def("commutation_residual", [](const Mat& A, const bl::BlaschkeProduct& B, double alpha) {
        return bl::commutation_residual(op(A, alpha), B, bl::Weight{alpha}, static_cast<std::size_t>(A.rows()) - 1);
    }, py::arg("A"), py::arg("B"), py::arg("alpha"));
    m.def("extract_symbols", [](const Mat& W, const bl::BlaschkeProduct& B, double alpha) {
        const std::size_t D = static_cast<std::size_t>(W.rows()) - 1;
        return stack(bl::extract_symbols(op(W, alpha), B, bl::default_commutant_shells(B, D), D), D);
    }, py::arg("W"), py::arg("B"), py::arg("alpha"));
    m.def("idempotent_residual", [](const std::vector<std::vector<Vec>>& phi) {
        const bl::IdempotentReport r = bl::idempotent_residual(multiplier(phi));
        py::dict d;
        d["residual"] = r.residual;
        d["rank"] = r.rank;
        d["ranks"] = r.ranks;
        d["rank_constant"] = r.rank_constant;
        d["trace"] = r.trace;
        return d;
    }, py::arg("phi"));
    m.def("cowen_residual", [](const Mat& W, const bl::BlaschkeProduct& B, bl::Complex a) {
        return bl::cowen_residual(op(W, 0.0), B, a, static_cast<std::size_t>(W.rows()) - 1);
    }, py::arg("W"), py::arg("B"), py::arg("a"));

    m.def("x_spaces", [](const bl::BlaschkeProduct& B, double alpha, std::size_t kmax, std::size_t D) {
        const bl::XSpaceChain chain = bl::x_spaces(B, bl::Weight{alpha}, kmax, D);
        std::vector<Mat> blocks;
        for (const auto& b : chain.blocks) blocks.push_back(stack(b, D));
        py::dict d;
        d["blocks"] = blocks;
        d["gaps"] = chain.gaps;
        d["trailing"] = chain.trailing;
        d["orthogonality_defect"] = bl::chain_orthogonality_defect(chain);
        d["shift_action_residual"] = bl::shift_action_residual(chain);
        return d;
    }, py::arg("B"), py::arg("alpha"), py::arg("kmax"), py::arg("degree"));

    m.def("monomial_reducing_projection", [](std::size_t N, std::size_t j, double alpha, std::size_t D) {
        return bl::monomial_reducing_projection(N, j, bl::Weight{alpha}, D).matrix.entries();
    }, py::arg("N"), py::arg("j"), py::arg("alpha"), py::arg("degree"));
    m.def("mobius_power_reducing_projection", [](bl::Complex a, std::size_t N, std::size_t j, std::size_t D) {
        return bl::mobius_power_reducing_projection(a, N, j, D).matrix.entries();
    }, py::arg("a"), py::arg("N"), py::arg("j"), py::arg("degree"));
    m.def("span_projection", [](const std::vector<Vec>& fs, double alpha, std::size_t D) {
        std::vector<bl::TaylorPoly> ps;
        for (const auto& f : fs) ps.push_back(poly(f));
        return bl::span_projection(ps, bl::Weight{alpha}, D).matrix.entries();
    }, py::arg("functions"), py::arg("alpha"), py::arg("degree"));
    m.def("reducing_residual", [](const Mat& P, const bl::BlaschkeProduct& B, double alpha) {
        return bl::reducing_residual(op(P, alpha), B, bl::Weight{alpha}, static_cast<std::size_t>(P.rows()) - 1);
    }, py::arg("P"), py::arg("B"), py::arg("alpha"));

    m.def("shift_equiv_monomial", [](std::size_t n, double alpha, std::size_t D) {
        const bl::IntertwinerJ J = bl::shift_equiv_monomial(n, bl::Weight{alpha}, D);
        py::dict d;
        d["images"] = stack(J.images, D);
        d["unitarity_defect"] = bl::unitarity_defect(J, D);
        d["intertwining_residual"] = bl::intertwining_residual(J, bl::BlaschkeProduct::monomial(n), D);
        return d;
    }, py::arg("n"), py::arg("alpha"), py::arg("degree"));

    m.def("run", [](const std::string& command, const std::string& config, bool strict, const std::string& format) {
        bl::Json cfg;
        try {
            cfg = bl::Json::parse(config);
        } catch (const bl::Json::parse_error& e) {
            throw bl::ConfigError(std::string("malformed JSON: ") + e.what());
        }
        const bl::Report report = bl::run_experiment(command, cfg, strict);
        return py::make_tuple(bl::exit_code(report),
                              bl::render(report, format == "csv" ? bl::Format::csv : bl::Format::json));
    }, py::arg("command"), py::arg("config"), py::arg("strict") = false, py::arg("format") = "json",
       "(exit code, rendered report) for one CLI command");
}
