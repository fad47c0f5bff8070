#include "blaschke_lab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <set>

#include "blaschke_lab/battery.hpp"
#include "blaschke_lab/commutant.hpp"
#include "blaschke_lab/errors.hpp"
#include "blaschke_lab/ortho.hpp"
#include "blaschke_lab/random.hpp"
#include "blaschke_lab/reducing.hpp"
#include "blaschke_lab/wold.hpp"

namespace blaschke_lab {

namespace {

// Typed access to the configuration object with field-named diagnostics.
class Config {
public:
    Config(const Json& j, std::set<std::string> allowed) : j_(j) {
        if (!j_.is_object()) throw ConfigError("config: expected a JSON object");
        allowed.insert({"command", "seed", "timing", "tolerances"});
        for (const auto& [key, value] : j_.items())
            if (!allowed.count(key)) throw ConfigError(key + ": unknown field for this command");
        settings_ = j_.contains("tolerances") ? settings_from_json(j_["tolerances"], "tolerances") : Settings{};
        seed_ = has("seed") ? unsigned_at("seed") : 0;
        timing_ = has("timing") ? boolean("timing") : false;
    }

    bool has(const std::string& key) const { return j_.contains(key); }
    const Json& at(const std::string& key) const {
        if (!has(key)) throw ConfigError(key + ": required field is missing");
        return j_[key];
    }

    std::uint64_t unsigned_at(const std::string& key) const {
        const Json& v = at(key);
        if (!v.is_number_integer() || v.get<long long>() < 0) throw ConfigError(key + ": expected a non-negative integer");
        return v.get<std::uint64_t>();
    }
    std::size_t size(const std::string& key, std::size_t fallback) const {
        return has(key) ? static_cast<std::size_t>(unsigned_at(key)) : fallback;
    }
    std::size_t positive(const std::string& key, std::size_t fallback) const {
        const std::size_t v = size(key, fallback);
        if (v == 0) throw ConfigError(key + ": must be at least 1");
        return v;
    }
    double number(const std::string& key, double fallback) const {
        if (!has(key)) return fallback;
        const Json& v = j_[key];
        if (!v.is_number() || !std::isfinite(v.get<double>())) throw ConfigError(key + ": expected a finite number");
        return v.get<double>();
    }
    bool boolean(const std::string& key) const {
        if (!at(key).is_boolean()) throw ConfigError(key + ": expected true or false");
        return j_[key].get<bool>();
    }
    std::string string(const std::string& key, const std::string& fallback) const {
        if (!has(key)) return fallback;
        if (!j_[key].is_string()) throw ConfigError(key + ": expected a string");
        return j_[key].get<std::string>();
    }
    BlaschkeProduct blaschke(const std::string& key = "B") const { return blaschke_from_json(at(key), key, settings_); }
    Weight alpha(double fallback) const { return Weight{number("alpha", fallback)}; }

    const Settings& settings() const { return settings_; }
    std::uint64_t seed() const { return seed_; }
    bool timing() const { return timing_; }

private:
    const Json& j_;
    Settings settings_;
    std::uint64_t seed_ = 0;
    bool timing_ = false;
};

// Record sink shared by the commands.
struct Sink {
    const Config& cfg;
    bool strict;
    std::vector<Record> records;

    void below(const std::string& name, double tol, const std::function<double()>& fn) {
        records.push_back(run_check(name, tol, fn, cfg.timing(), strict));
    }
    void above(const std::string& name, double threshold, const std::function<double()>& fn) {
        records.push_back(run_witness(name, threshold, fn, cfg.timing(), strict));
    }
};

// Construction failures caused by the configuration are config errors.
template <class F>
auto validated(const std::string& field, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(field + ": " + e.what());
    }
}

std::string idx_name(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

void require_window(const TaylorPoly& f, std::size_t degree, const std::string& field) {
    if (f.degree() > degree) throw ConfigError(field + ": degree " + std::to_string(f.degree()) + " exceeds degree D");
}

// --- decompose --------------------------------------------------------------

void run_decompose(const Config& cfg, Sink& sink, Json& data) {
    const BlaschkeProduct B = cfg.blaschke();
    const TaylorPoly f = poly_from_json(cfg.at("f"), "f");
    const Weight w = cfg.alpha(0.0);
    const std::size_t D = cfg.positive("degree", 96);
    require_window(f, D, "f");
    const std::size_t M = cfg.size("shells", default_shell_count(B.degree(), D));
    const double tol = cfg.number("tol_round_trip", 1e-8);
    const ShellFrame frame = validated("shells", [&] { return ShellFrame(B, M, D, cfg.settings()); });

    const ShellDecomposition dec = analyze(f, frame);
    Json comps = Json::array();
    for (const auto& c : dec.components()) comps.push_back(poly_to_json(c));
    data["decomposition"] = decomposition_to_json(dec);
    data["components"] = comps;
    data["b_norm"] = b_norm(dec, w);
    data["alpha_norm"] = weighted_norm(f, w);
    data["tail"] = frame.tail();

    const std::size_t s = safe_degree(D, cfg.settings());
    sink.below("decompose.round_trip", tol,
               [&] { return weighted_norm((f - synthesize(analyze(f, frame), frame)).truncated(s), w); });
    sink.below("decompose.least_squares_agreement", tol, [&] {
        return (analyze_least_squares(f, frame).coefficients - dec.coefficients).cwiseAbs().maxCoeff();
    });
}

// --- commutant --------------------------------------------------------------

std::vector<MultiplierMatrix> multipliers(const Config& cfg, std::size_t n, Rng& rng) {
    std::vector<MultiplierMatrix> out;
    if (cfg.has("phi")) out.push_back(multiplier_from_json(cfg.at("phi"), "phi"));
    if (cfg.has("phis")) {
        const Json& list = cfg.at("phis");
        if (!list.is_array()) throw ConfigError("phis: expected an array of multiplier matrices");
        for (std::size_t i = 0; i < list.size(); ++i) out.push_back(multiplier_from_json(list[i], idx_name("phis", i)));
    }
    if (cfg.has("random") || out.empty()) {
        std::size_t count = 20, degree = 4;
        if (cfg.has("random")) {
            const Json& r = cfg.at("random");
            if (!r.is_object()) throw ConfigError("random: expected {count, degree}");
            for (const auto& [key, value] : r.items()) {
                if (!value.is_number_integer() || value.get<long long>() < 0)
                    throw ConfigError("random." + key + ": expected a non-negative integer");
                if (key == "count") count = value.get<std::size_t>();
                else if (key == "degree") degree = value.get<std::size_t>();
                else throw ConfigError("random." + key + ": unknown field");
            }
        }
        for (std::size_t i = 0; i < count; ++i) out.push_back(rng.multiplier(n, degree));
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i].n() != n)
            throw ConfigError(idx_name("phi", i) + ": size " + std::to_string(out[i].n()) + " does not match deg B");
        if (out[i].max_degree() > cfg.settings().max_symbol_degree)
            throw ConfigError(idx_name("phi", i) + ": entry degree exceeds max_symbol_degree");
    }
    return out;
}

void run_commutant(const Config& cfg, Sink& sink, Json& data) {
    const BlaschkeProduct B = cfg.blaschke();
    const Weight w = cfg.alpha(0.0);
    const std::size_t D = cfg.positive("degree", 96);
    const std::size_t M = cfg.size("shells", default_commutant_shells(B, D));
    const std::size_t cut = cfg.size("round_trip_degree", 10);
    const Settings& st = cfg.settings();
    validated("shells", [&] { return ShellFrame(B, M, D, st); });
    Rng rng(cfg.seed(), 1);
    const auto phis = multipliers(cfg, B.degree(), rng);
    const TaylorPoly probe = rng.poly(std::min<std::size_t>(20, D));

    Json idem = Json::array();
    for (std::size_t i = 0; i < phis.size(); ++i) {
        const MultiplierMatrix& phi = phis[i];
        std::optional<CommutantOperator> W;
        const auto need = [&]() -> const CommutantOperator& {
            if (!W) W = build(phi, B, w, M, D, st);
            return *W;
        };
        const std::string base = idx_name("commutant", i);
        sink.below(base + ".commutation", st.tol_commute, [&] { return need().commutation_residual; });
        sink.below(base + ".symbol_round_trip", cfg.number("tol_round_trip", 1e-7), [&] {
            const MultiplierMatrix back =
                symbols_to_matrix(extract_symbols(need().realization, B, M, D, st), B, M, D, st);
            double worst = 0.0;
            for (std::size_t e = 0; e < phi.entries().size(); ++e)
                for (std::size_t k = 0; k <= cut; ++k)
                    worst = std::max(worst, std::abs(back.entries()[e][k] - phi.entries()[e][k]));
            return worst;
        });
        sink.below(base + ".formula", cfg.number("tol_formula", 1e-8), [&] {
            const TaylorPoly a = apply_formula(phi, B, probe, M, D, st);
            const TaylorPoly b = apply(need().realization, probe);
            return weighted_norm((a - b).truncated(safe_degree(D, st)), w);
        });
        const IdempotentReport r = idempotent_residual(phi, st);
        idem.push_back({{"residual", r.residual},
                        {"rank", r.rank},
                        {"rank_constant", r.rank_constant},
                        {"trace", complex_to_json(r.trace)}});
    }
    data["idempotent"] = idem;
    data["shells"] = M;
}

// --- reducing ---------------------------------------------------------------

std::vector<std::size_t> indices(const Config& cfg, std::size_t N) {
    std::vector<std::size_t> js;
    if (cfg.has("j")) {
        const std::size_t j = cfg.size("j", 0);
        if (j >= N) throw ConfigError("j: must be below N");
        js.push_back(j);
    } else {
        for (std::size_t j = 0; j < N; ++j) js.push_back(j);
    }
    return js;
}

void projection_checks(Sink& sink, const std::string& base, const std::function<SubspaceProjection()>& make,
                       const BlaschkeProduct& B, Weight w, std::size_t D, const Settings& st, double tol,
                       bool expect_reducing, const std::optional<OperatorMatrix>& W) {
    std::optional<SubspaceProjection> P;
    const auto need = [&]() -> const SubspaceProjection& {
        if (!P) P = make();
        return *P;
    };
    if (expect_reducing)
        sink.below(base + ".reducing", tol, [&] { return reducing_residual(need(), B, w, D, st); });
    else
        sink.above(base + ".not_reducing", tol, [&] { return reducing_residual(need(), B, w, D, st); });
    sink.below(base + ".projection_laws", 1e-10, [&] {
        const ProjectionDefects d = projection_defects(need(), st);
        return std::max({d.idempotent, d.selfadjoint, d.fixes_basis});
    });
    sink.below(base + ".complement_closure", 1e-12, [&] {
        return std::abs(reducing_residual(need(), B, w, D, st) - reducing_residual(complement(need()), B, w, D, st));
    });
    if (W) sink.below(base + ".hyperinvariance", 1e-7, [&] { return hyperinvariance_check(need(), *W, st); });
}

void run_reducing(const Config& cfg, Sink& sink, Json& data) {
    const std::string family = cfg.string("family", "");
    const Settings& st = cfg.settings();
    if (family == "monomial") {
        const std::size_t N = cfg.positive("N", 2);
        const BlaschkeProduct B = cfg.has("B") ? cfg.blaschke() : BlaschkeProduct::monomial(N);
        const Weight w = cfg.alpha(-1.0);
        const std::size_t D = cfg.positive("degree", 60);
        const double tol = cfg.number("tol", 1e-12);
        for (const std::size_t j : indices(cfg, N))
            projection_checks(sink, "monomial[M" + std::to_string(j) + "]",
                              [&, j] { return monomial_reducing_projection(N, j, w, D); }, B, w, D, st, tol, true,
                              std::nullopt);
    } else if (family == "mobius_power") {
        const Complex a = complex_from_json(cfg.at("a"), "a");
        if (!(std::abs(a) > 0.0) || std::abs(a) > st.rho_max) throw ConfigError("a: need 0 < |a| <= rho_max");
        const std::size_t N = cfg.positive("N", 2);
        if (cfg.has("alpha") && cfg.number("alpha", -1.0) != -1.0)
            throw ConfigError("alpha: the Moebius-power family is defined in A_{-1} only");
        const Weight w{-1.0};
        const std::size_t D = cfg.positive("degree", 120);
        const double tol = cfg.number("tol", 1e-6);
        const BlaschkeProduct B = cfg.has("B") ? cfg.blaschke() : BlaschkeProduct::mobius_power(a, N, st);
        sink.below("mobius_power.k0_orthogonality", 1e-8, [&] {
            const TaylorPoly b = taylor(B, D);
            double worst = 0.0;
            for (const auto& k : mobius_k0_basis(a, N, D))
                for (std::size_t m = 0; m <= safe_degree(D, st); ++m)
                    worst = std::max(worst, std::abs(weighted_inner(k, multiply(TaylorPoly::monomial(m, D), b, D), w)));
            return worst;
        });
        for (const std::size_t j : indices(cfg, N))
            projection_checks(sink, "mobius_power[M" + std::to_string(j) + "]",
                              [&, j] { return mobius_power_reducing_projection(a, N, j, D, st); }, B, w, D, st, tol,
                              true, std::nullopt);
    } else if (family == "custom") {
        const BlaschkeProduct B = cfg.blaschke();
        const Weight w = cfg.alpha(0.0);
        const std::size_t D = cfg.positive("degree", 60);
        const double tol = cfg.number("tol", 1e-10);
        const std::string expect = cfg.string("expect", "reducing");
        if (expect != "reducing" && expect != "not_reducing")
            throw ConfigError("expect: must be \"reducing\" or \"not_reducing\"");
        const bool shell = cfg.has("generators");
        if (shell == cfg.has("functions")) throw ConfigError("functions: give exactly one of functions or generators");
        const std::string key = shell ? "generators" : "functions";
        const Json& list = cfg.at(key);
        if (!list.is_array() || list.empty()) throw ConfigError(key + ": expected a non-empty array");
        std::vector<TaylorPoly> fs;
        for (std::size_t i = 0; i < list.size(); ++i) {
            fs.push_back(poly_from_json(list[i], idx_name(key, i)));
            require_window(fs.back(), D, idx_name(key, i));
        }
        const std::size_t shells = cfg.size("shells", (D - 1) / B.degree());
        std::optional<OperatorMatrix> W;
        if (cfg.has("phi")) {
            const MultiplierMatrix phi = multiplier_from_json(cfg.at("phi"), "phi");
            W = validated("phi", [&] {
                return build(phi, B, w, default_commutant_shells(B, D), D, st).realization;
            });
        }
        projection_checks(sink, "custom",
                          [&] {
                              return shell ? shell_generated_projection(B, fs, w, shells, D, st)
                                           : span_projection(fs, w, D, st);
                          },
                          B, w, D, st, tol, expect == "reducing", W);
    } else {
        throw ConfigError("family: expected \"monomial\", \"mobius_power\" or \"custom\"");
    }
    data["family"] = family;
}

// --- ortho ------------------------------------------------------------------

void run_ortho(const Config& cfg, Sink& sink, Json& data) {
    const BlaschkeProduct B = cfg.blaschke();
    const Weight w = cfg.alpha(-1.0);
    const std::size_t kmax = cfg.size("kmax", 5);
    const std::size_t D = cfg.positive("degree", 120);
    const Settings& st = cfg.settings();
    if (D < (kmax + 2) * B.degree() + span_guard(B))
        throw ConfigError("degree: x_spaces needs D >= (kmax + 2) N + guard");
    const std::size_t count = cfg.size("commutant_samples", 3);

    std::optional<XSpaceChain> chain;
    sink.above("ortho.gap", st.gap_tol, [&] {
        chain = x_spaces(B, w, kmax, D, st);
        return *std::min_element(chain->gaps.begin(), chain->gaps.end());
    });
    const auto need = [&]() -> const XSpaceChain& {
        if (!chain) throw GapError("X-space chain unavailable");
        return *chain;
    };
    sink.below("ortho.dimension", st.gap_tol, [&] {
        const auto& t = need().trailing;
        return *std::max_element(t.begin(), t.end());
    });
    sink.below("ortho.orthogonality", 1e-9, [&] { return chain_orthogonality_defect(need()); });
    sink.below("ortho.shift_action", 1e-8, [&] { return shift_action_residual(need()); });
    sink.below("ortho.k_spaces", 1e-8, [&] {
        const KSpaces ks = k_spaces(need(), st);
        return *std::max_element(ks.residuals.begin(), ks.residuals.end());
    });
    if (count > 0) {
        sink.below("ortho.upper_blocks", 1e-7, [&] {
            Rng rng(cfg.seed(), 8);
            double worst = 0.0;
            for (std::size_t i = 0; i < count; ++i) {
                const CommutantOperator W =
                    build(rng.multiplier(B.degree(), 4), B, w, default_commutant_shells(B, D), D, st);
                worst = std::max(worst, max_upper_block_norm(block_matrix(W.realization, need())));
            }
            return worst;
        });
    }
    if (chain) {
        Json blocks = Json::array();
        for (std::size_t k = 0; k < chain->blocks.size(); ++k)
            blocks.push_back({{"k", k},
                              {"dimension", chain->blocks[k].size()},
                              {"gap", chain->gaps[k]},
                              {"trailing", chain->trailing[k]}});
        data["blocks"] = blocks;
    }
}

// --- shift-equiv ------------------------------------------------------------

std::vector<double> number_list(const Config& cfg, const std::string& key, std::vector<double> fallback) {
    if (!cfg.has(key)) return fallback;
    const Json& v = cfg.at(key);
    std::vector<double> out;
    if (v.is_number()) out.push_back(v.get<double>());
    else if (v.is_array() && !v.empty()) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number()) throw ConfigError(idx_name(key, i) + ": expected a number");
            out.push_back(v[i].get<double>());
        }
    } else {
        throw ConfigError(key + ": expected a number or a non-empty array");
    }
    for (const double x : out)
        if (!std::isfinite(x)) throw ConfigError(key + ": values must be finite");
    return out;
}

void run_shift_equiv(const Config& cfg, Sink& sink, Json& data) {
    const std::size_t D = cfg.positive("degree", 60);
    const auto alphas = number_list(cfg, "alpha", {-1.0, 0.0, 1.0});
    std::vector<std::size_t> ns;
    for (const double n : number_list(cfg, "n", {2.0, 3.0})) {
        if (n < 1.0 || n != std::floor(n)) throw ConfigError("n: expected positive integers");
        ns.push_back(static_cast<std::size_t>(n));
    }
    const Settings& st = cfg.settings();
    const auto label = [](double a) {
        const double r = std::round(a);
        return r == a ? std::to_string(static_cast<long long>(r)) : std::to_string(a);
    };
    for (const std::size_t n : ns)
        for (const double a : alphas) {
            const Weight w{a};
            const std::string base = "shift_equiv[n=" + std::to_string(n) + ",alpha=" + label(a) + "]";
            sink.below(base + ".unitarity", 1e-10, [&, n, w] { return unitarity_defect(shift_equiv_monomial(n, w, D), D, st); });
            sink.below(base + ".intertwining", 1e-13, [&, n, w] {
                return intertwining_residual(shift_equiv_monomial(n, w, D), BlaschkeProduct::monomial(n), D, st);
            });
        }
    if (!cfg.has("B")) return;
    const BlaschkeProduct B = cfg.blaschke();
    const std::size_t M = cfg.size("shells", 7);
    validated("shells", [&] { return ShellFrame(B, M, D, st); });
    TaylorPoly h;
    if (cfg.has("h")) {
        h = poly_from_json(cfg.at("h"), "h");
        require_window(h, D, "h");
    } else {
        const std::size_t index = cfg.size("h_index", std::min<std::size_t>(1, B.degree() - 1));
        if (index >= B.degree()) throw ConfigError("h_index: must be below deg B");
        h = model_basis(B, D, st).orthonormal[index];
    }
    Json norms = Json::array();
    for (const double a : alphas) {
        const Weight w{a};
        const std::string base = "shift_equiv.general[alpha=" + label(a) + "]";
        std::optional<IntertwinerJ> J;
        const auto need = [&]() -> const IntertwinerJ& {
            if (!J) J = shift_equiv_general(B, h, w, M, D, st);
            return *J;
        };
        sink.below(base + ".b_norm", 1e-9, [&] { return b_norm_defect(need(), D, st); });
        sink.below(base + ".intertwining", 1e-8, [&] { return intertwining_residual(need(), B, D, st); });
        sink.below(base + ".unitarity", 1e-8, [&] { return unitarity_defect(need(), D, st); });
        norms.push_back(J ? Json(J->h_alpha_norm) : Json(nullptr));
    }
    data["h_alpha_norm"] = norms;
}

// --- cowen ------------------------------------------------------------------

void run_cowen(const Config& cfg, Sink& sink, Json& data) {
    const BlaschkeProduct B = cfg.blaschke();
    const std::size_t D = cfg.positive("degree", 96);
    const Settings& st = cfg.settings();
    const Weight hardy{0.0};
    std::vector<Complex> points;
    if (cfg.has("points")) {
        const Json& p = cfg.at("points");
        if (!p.is_array() || p.empty()) throw ConfigError("points: expected a non-empty array");
        for (std::size_t i = 0; i < p.size(); ++i) {
            points.push_back(complex_from_json(p[i], idx_name("points", i)));
            if (std::abs(points.back()) >= 1.0) throw ConfigError(idx_name("points", i) + ": must lie in the open disc");
        }
    } else {
        Rng rng(cfg.seed(), 7);
        for (std::size_t i = 0; i < st.cowen_points; ++i) points.push_back(rng.disc(st.rho_max));
    }
    std::vector<std::string> ops = {"toeplitz_B", "identity"};
    if (cfg.has("operators")) {
        const Json& o = cfg.at("operators");
        if (!o.is_array() || o.empty()) throw ConfigError("operators: expected a non-empty array");
        ops.clear();
        for (std::size_t i = 0; i < o.size(); ++i) {
            if (!o[i].is_string()) throw ConfigError(idx_name("operators", i) + ": expected a string");
            ops.push_back(o[i].get<std::string>());
        }
    }
    const double tol = cfg.number("tol", 1e-12);
    for (std::size_t i = 0; i < ops.size(); ++i) {
        const std::string& op = ops[i];
        std::function<OperatorMatrix()> make;
        if (op == "toeplitz_B") make = [&] { return toeplitz_matrix(taylor(B, D), D, hardy); };
        else if (op == "identity") make = [&] { return OperatorMatrix::identity(D, hardy); };
        else if (op == "adjoint_shift")
            make = [&] { return weighted_adjoint(toeplitz_matrix(TaylorPoly{0.0, 1.0}, D, hardy), hardy); };
        else if (op == "commutant") {
            const MultiplierMatrix phi = multiplier_from_json(cfg.at("phi"), "phi");
            const std::size_t M = cfg.size("shells", default_commutant_shells(B, D));
            make = [&, phi, M] { return build(phi, B, hardy, M, D, st).realization; };
        } else {
            throw ConfigError(idx_name("operators", i) + ": unknown operator \"" + op + "\"");
        }
        sink.below("cowen[" + op + "]", tol, [&, make] {
            const OperatorMatrix W = make();
            double worst = 0.0;
            for (const Complex a : points) worst = std::max(worst, cowen_residual(W, B, a, D, st));
            return worst;
        });
    }
    Json pts = Json::array();
    for (const Complex a : points) pts.push_back(complex_to_json(a));
    data["points"] = pts;
}

// --- suite ------------------------------------------------------------------

void run_suite(const Config& cfg, Sink& sink, Json& data) {
    BatteryOptions options;
    options.seed = cfg.seed();
    options.timing = cfg.timing();
    options.strict = sink.strict;
    options.threads = cfg.size("threads", 0);
    if (cfg.has("criteria")) {
        const Json& c = cfg.at("criteria");
        if (!c.is_array()) throw ConfigError("criteria: expected an array of integers 1..12");
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (!c[i].is_number_integer() || c[i].get<int>() < 1 || c[i].get<int>() > battery_size)
                throw ConfigError(idx_name("criteria", i) + ": expected an integer in 1..12");
            options.criteria.push_back(c[i].get<int>());
        }
    }
    sink.records = run_battery(options);
    Json crit = Json::array();
    if (options.criteria.empty())
        for (int c = 1; c <= battery_size; ++c) crit.push_back(c);
    else
        for (const int c : options.criteria) crit.push_back(c);
    data["criteria"] = crit;
}

const std::set<std::string>& allowed_keys(const std::string& command) {
    static const std::map<std::string, std::set<std::string>> keys = {
        {"decompose", {"B", "f", "alpha", "degree", "shells", "tol_round_trip"}},
        {"commutant",
         {"B", "alpha", "degree", "shells", "phi", "phis", "random", "round_trip_degree", "tol_round_trip",
          "tol_formula"}},
        {"reducing",
         {"B", "alpha", "degree", "family", "N", "j", "a", "tol", "functions", "generators", "shells", "expect", "phi"}},
        {"ortho", {"B", "alpha", "degree", "kmax", "commutant_samples"}},
        {"shift-equiv", {"B", "alpha", "degree", "n", "h", "h_index", "shells"}},
        {"cowen", {"B", "degree", "points", "operators", "phi", "shells", "tol"}},
        {"suite", {"criteria", "threads"}},
    };
    const auto it = keys.find(command);
    if (it == keys.end()) throw ConfigError("command: unknown command \"" + command + "\"");
    return it->second;
}

}  // namespace

Report run_experiment(const std::string& command, const Json& config, bool strict) {
    const Config cfg(config, allowed_keys(command));
    if (cfg.has("command") && cfg.string("command", "") != command)
        throw ConfigError("command: config names \"" + cfg.string("command", "") + "\" but \"" + command +
                          "\" was requested");
    Report report;
    report.command = command;
    report.config = config;
    Sink sink{cfg, strict, {}};
    Json data = Json::object();
    if (command == "decompose") run_decompose(cfg, sink, data);
    else if (command == "commutant") run_commutant(cfg, sink, data);
    else if (command == "reducing") run_reducing(cfg, sink, data);
    else if (command == "ortho") run_ortho(cfg, sink, data);
    else if (command == "shift-equiv") run_shift_equiv(cfg, sink, data);
    else if (command == "cowen") run_cowen(cfg, sink, data);
    else run_suite(cfg, sink, data);
    report.records = std::move(sink.records);
    report.data = std::move(data);
    return report;
}

int exit_code(const Report& report) { return report.all_pass() ? exit_pass : exit_fail; }

}  // namespace blaschke_lab
