#include "blaschke_lab/json_io.hpp"

#include <cmath>

#include "blaschke_lab/errors.hpp"

namespace blaschke_lab {

namespace {

double number_at(const Json& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError(path + ": expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ConfigError(path + ": value is not finite");
    return v;
}

std::size_t count_at(const Json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() < 0)
        throw ConfigError(path + ": expected a non-negative integer");
    return j.get<std::size_t>();
}

}  // namespace

Complex complex_from_json(const Json& j, const std::string& path) {
    if (j.is_number()) return {number_at(j, path), 0.0};
    if (j.is_array()) {
        if (j.size() != 2) throw ConfigError(path + ": complex pair needs exactly two entries");
        return {number_at(j[0], path + "[0]"), number_at(j[1], path + "[1]")};
    }
    if (j.is_object()) {
        const double re = j.contains("re") ? number_at(j["re"], path + ".re") : 0.0;
        const double im = j.contains("im") ? number_at(j["im"], path + ".im") : 0.0;
        return {re, im};
    }
    throw ConfigError(path + ": expected a number, [re, im] or {re, im}");
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

TaylorPoly poly_from_json(const Json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) throw ConfigError(path + ": expected a non-empty coefficient array");
    std::vector<Complex> c;
    for (std::size_t i = 0; i < j.size(); ++i) c.push_back(complex_from_json(j[i], path + "[" + std::to_string(i) + "]"));
    return TaylorPoly(std::move(c));
}

Json poly_to_json(const TaylorPoly& f) {
    Json out = Json::array();
    for (const Complex c : f.coeffs()) out.push_back(complex_to_json(c));
    return out;
}

BlaschkeProduct blaschke_from_json(const Json& j, const std::string& path, const Settings& settings) {
    if (!j.is_object()) throw ConfigError(path + ": expected an object");
    if (j.contains("monomial")) {
        const std::size_t n = count_at(j["monomial"], path + ".monomial");
        if (n == 0) throw ConfigError(path + ".monomial: degree must be at least 1");
        return BlaschkeProduct::monomial(n);
    }
    const double theta = j.contains("theta") ? number_at(j["theta"], path + ".theta") : 0.0;
    if (!j.contains("zeros") || !j["zeros"].is_array() || j["zeros"].empty())
        throw ConfigError(path + ".zeros: expected a non-empty array");
    std::vector<BlaschkeZero> zeros;
    const Json& zs = j["zeros"];
    for (std::size_t i = 0; i < zs.size(); ++i) {
        const std::string zp = path + ".zeros[" + std::to_string(i) + "]";
        const Json& z = zs[i];
        if (!z.is_object()) throw ConfigError(zp + ": expected {re, im, mult}");
        for (const auto& [key, value] : z.items())
            if (key != "re" && key != "im" && key != "mult") throw ConfigError(zp + "." + key + ": unknown field");
        const Complex a = complex_from_json(z, zp);
        const std::size_t mult = z.contains("mult") ? count_at(z["mult"], zp + ".mult") : 1;
        if (mult == 0) throw ConfigError(zp + ".mult: multiplicity must be at least 1");
        if (std::abs(a) > settings.rho_max)
            throw ConfigError(zp + ": modulus " + std::to_string(std::abs(a)) + " exceeds rho_max " +
                              std::to_string(settings.rho_max));
        zeros.push_back({a, mult});
    }
    try {
        return BlaschkeProduct(theta, std::move(zeros), settings);
    } catch (const DomainError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

Json blaschke_to_json(const BlaschkeProduct& B) {
    Json zeros = Json::array();
    for (const auto& z : B.zeros())
        zeros.push_back({{"re", z.value.real()}, {"im", z.value.imag()}, {"mult", z.multiplicity}});
    return {{"theta", B.theta()}, {"zeros", zeros}};
}

MultiplierMatrix multiplier_from_json(const Json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) throw ConfigError(path + ": expected an n x n array");
    const std::size_t n = j.size();
    std::vector<TaylorPoly> entries;
    for (std::size_t r = 0; r < n; ++r) {
        const std::string rp = path + "[" + std::to_string(r) + "]";
        if (!j[r].is_array() || j[r].size() != n) throw ConfigError(rp + ": expected a row of " + std::to_string(n));
        for (std::size_t c = 0; c < n; ++c) entries.push_back(poly_from_json(j[r][c], rp + "[" + std::to_string(c) + "]"));
    }
    return MultiplierMatrix(n, std::move(entries));
}

Json multiplier_to_json(const MultiplierMatrix& phi) {
    Json out = Json::array();
    for (std::size_t r = 0; r < phi.n(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < phi.n(); ++c) row.push_back(poly_to_json(phi(r, c)));
        out.push_back(row);
    }
    return out;
}

Json decomposition_to_json(const ShellDecomposition& dec) {
    Json rows = Json::array();
    for (Eigen::Index j = 0; j < dec.coefficients.rows(); ++j) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < dec.coefficients.cols(); ++k) row.push_back(complex_to_json(dec.coefficients(j, k)));
        rows.push_back(row);
    }
    return {{"B", blaschke_to_json(dec.B)}, {"M", dec.shell_count}, {"c", rows}};
}

Settings settings_from_json(const Json& j, const std::string& path, Settings s) {
    if (!j.is_object()) throw ConfigError(path + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        const std::string p = path + "." + key;
        auto positive = [&](double v) {
            if (!(v > 0.0)) throw ConfigError(p + ": must be positive");
            return v;
        };
        if (key == "rho_max") {
            s.rho_max = number_at(value, p);
            if (!(s.rho_max > 0.0 && s.rho_max < 1.0)) throw ConfigError(p + ": must lie in (0, 1)");
        } else if (key == "tol_compose") s.tol_compose = positive(number_at(value, p));
        else if (key == "compose_terms_factor") s.compose_terms_factor = count_at(value, p);
        else if (key == "tol_tail") s.tol_tail = positive(number_at(value, p));
        else if (key == "tol_commute") s.tol_commute = positive(number_at(value, p));
        else if (key == "gap_tol") s.gap_tol = positive(number_at(value, p));
        else if (key == "rank_tol") s.rank_tol = positive(number_at(value, p));
        else if (key == "symbol_rank_tol") s.symbol_rank_tol = positive(number_at(value, p));
        else if (key == "pole_tol") s.pole_tol = positive(number_at(value, p));
        else if (key == "membership_tol") s.membership_tol = positive(number_at(value, p));
        else if (key == "lsq_tol") s.lsq_tol = positive(number_at(value, p));
        else if (key == "selfadjoint_tol") s.selfadjoint_tol = positive(number_at(value, p));
        else if (key == "max_symbol_degree") s.max_symbol_degree = count_at(value, p);
        else if (key == "guard_fraction") {
            s.guard_fraction = number_at(value, p);
            if (!(s.guard_fraction >= 0.0 && s.guard_fraction < 1.0)) throw ConfigError(p + ": must lie in [0, 1)");
        } else if (key == "mobius_shell_cap") s.mobius_shell_cap = count_at(value, p);
        else if (key == "cowen_points") s.cowen_points = count_at(value, p);
        else throw ConfigError(p + ": unknown tolerance");
    }
    return s;
}

}  // namespace blaschke_lab
