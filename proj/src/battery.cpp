#include "blaschke_lab/battery.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <string>
#include <thread>

#include "blaschke_lab/commutant.hpp"
#include "blaschke_lab/errors.hpp"
#include "blaschke_lab/ortho.hpp"
#include "blaschke_lab/random.hpp"
#include "blaschke_lab/reducing.hpp"
#include "blaschke_lab/wold.hpp"

namespace blaschke_lab {

namespace {

const Weight hardy{0.0};
const Weight bergman{-1.0};
constexpr double alphas[] = {-1.0, 0.0, 1.0};

BlaschkeProduct degree_three() { return BlaschkeProduct(0.0, {{{0.5, 0.0}}, {{-0.3, 0.2}}, {{0.1, 0.0}}}); }

std::string tag(const std::string& key, double v) {
    const double r = std::round(v);
    const std::string s = r == v ? std::to_string(static_cast<long long>(r)) : std::to_string(v);
    return "[" + key + "=" + s + "]";
}

// Collects records for one criterion.
class Checks {
public:
    Checks(std::string prefix, bool timing, bool strict) : prefix_(std::move(prefix)), timing_(timing), strict_(strict) {}

    void below(const std::string& name, double tol, const std::function<double()>& fn) {
        records_.push_back(run_check(prefix_ + name, tol, fn, timing_, strict_));
    }
    void above(const std::string& name, double threshold, const std::function<double()>& fn) {
        records_.push_back(run_witness(prefix_ + name, threshold, fn, timing_, strict_));
    }
    std::vector<Record> take() { return std::move(records_); }

private:
    std::string prefix_;
    bool timing_;
    bool strict_;
    std::vector<Record> records_;
};

double max_of(double a, double b) { return std::max(a, b); }

// 1. Exact slicing for B = z^3.
void criterion_1(Checks& c, std::uint64_t seed) {
    const BlaschkeProduct B = BlaschkeProduct::monomial(3);
    const std::size_t D = 30;
    Rng rng(seed, 1);
    std::vector<TaylorPoly> samples;
    for (int i = 0; i < 50; ++i) samples.push_back(rng.poly(30));
    const auto residual = [&](Weight w) {
        const ShellFrame frame(B, D / 3, D);
        double worst = 0.0;
        for (const auto& f : samples) worst = max_of(worst, weighted_norm(f - synthesize(analyze(f, frame), frame), w));
        return worst;
    };
    c.below("round_trip[h2]", 1e-12, [&] { return residual(hardy); });
    c.below("round_trip[bergman]", 1e-12, [&] { return residual(bergman); });
}

// 2. General decomposition, D = 96.
void criterion_2(Checks& c, std::uint64_t seed) {
    const BlaschkeProduct B = degree_three();
    const std::size_t D = 96;
    Rng rng(seed, 2);
    std::vector<TaylorPoly> samples;
    for (int i = 0; i < 20; ++i) samples.push_back(rng.poly(20));
    const auto residuals = [&](std::size_t M) {
        const ShellFrame frame(B, M, D);
        std::vector<double> out;
        for (const auto& f : samples)
            out.push_back(weighted_norm((f - synthesize(analyze(f, frame), frame)).truncated(48), hardy));
        return out;
    };
    c.below("round_trip[M=24]", 1e-8, [&] {
        const auto r = residuals(24);
        return *std::max_element(r.begin(), r.end());
    });
    c.below("monotone_in_M", 1e-12, [&] {
        const auto r8 = residuals(8), r16 = residuals(16), r24 = residuals(24);
        double worst = 0.0;
        for (std::size_t i = 0; i < samples.size(); ++i)
            worst = max_of(worst, max_of(r16[i] - r8[i], r24[i] - r16[i]));
        return worst;
    });
}

// 3. Norm equivalence bracket at alpha = -1.
void criterion_3(Checks& c, std::uint64_t seed) {
    const BlaschkeProduct B = degree_three();
    Rng rng(seed, 3);
    std::vector<TaylorPoly> samples;
    for (int i = 0; i < 100; ++i) samples.push_back(rng.poly(20));
    struct Bracket {
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
    };
    const auto bracket = [&](std::size_t D) {
        const ShellFrame frame(B, default_shell_count(B.degree(), D), D);
        Bracket b;
        for (const auto& f : samples) {
            const double num = b_norm(analyze(f, frame), bergman);
            const double den = weighted_norm(f, bergman);
            const double ratio = num * num / (den * den);
            b.lo = std::min(b.lo, ratio);
            b.hi = std::max(b.hi, ratio);
        }
        return b;
    };
    const Bracket small = bracket(96), large = bracket(192);
    c.above("bracket_positive", 0.0, [&] { return std::min(small.lo, large.lo); });
    c.below("lower_drift", 0.1, [&] { return std::abs(large.lo - small.lo) / small.lo; });
    c.below("upper_drift", 0.1, [&] { return std::abs(large.hi - small.hi) / small.hi; });
}

std::vector<MultiplierMatrix> commutant_sample(std::uint64_t seed, std::size_t n, std::size_t count) {
    Rng rng(seed, 4);
    std::vector<MultiplierMatrix> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(rng.multiplier(n, 4));
    return out;
}

// 4 and 5. Forward direction and symbol round trip.
void criterion_4_5(Checks& c, std::uint64_t seed, bool round_trip) {
    const BlaschkeProduct B = degree_three();
    const std::size_t D = 96, M = default_commutant_shells(B, D);
    const auto sample = commutant_sample(seed, B.degree(), 20);
    for (const double a : alphas) {
        const Weight w{a};
        if (!round_trip) {
            c.below("commutation" + tag("alpha", a), 1e-8, [&] {
                double worst = 0.0;
                for (const auto& phi : sample) worst = max_of(worst, build(phi, B, w, M, D).commutation_residual);
                return worst;
            });
            continue;
        }
        c.below("symbol_round_trip" + tag("alpha", a), 1e-7, [&] {
            double worst = 0.0;
            for (const auto& phi : sample) {
                const CommutantOperator W = build(phi, B, w, M, D);
                const MultiplierMatrix back = symbols_to_matrix(extract_symbols(W.realization, B, M, D), B, M, D);
                for (std::size_t i = 0; i < phi.entries().size(); ++i)
                    for (std::size_t k = 0; k <= 10; ++k)
                        worst = max_of(worst, std::abs(back.entries()[i][k] - phi.entries()[i][k]));
            }
            return worst;
        });
    }
}

// 6. The idempotent examples for B = z^2.
void criterion_6(Checks& c) {
    const BlaschkeProduct B = BlaschkeProduct::monomial(2);
    const std::size_t D = 60, M = default_commutant_shells(B, D);
    const TaylorPoly one{1.0}, zero{0.0}, half{0.5}, p{1.0, 2.0};
    const std::vector<std::pair<std::string, MultiplierMatrix>> examples = {
        {"[E11]", MultiplierMatrix(2, {one, zero, zero, zero})},
        {"[E11+pE21]", MultiplierMatrix(2, {one, zero, p, zero})},
        {"[half]", MultiplierMatrix(2, {half, half, half, half})},
    };
    const Settings settings;
    for (const auto& [name, phi] : examples) {
        c.below("idempotent" + name, 1e-12, [&] { return idempotent_residual(phi).residual; });
        c.below("rank_one" + name, 0.5, [&] {
            const IdempotentReport r = idempotent_residual(phi);
            return std::abs(static_cast<double>(r.rank) - 1.0) + (r.rank_constant ? 0.0 : 1.0);
        });
        c.below("trace_one" + name, 1e-12, [&] { return std::abs(idempotent_residual(phi).trace - 1.0); });
        for (const double a : alphas) {
            const Weight w{a};
            c.below("W2_minus_W" + name + tag("alpha", a), 1e-8, [&] {
                const Eigen::MatrixXcd W = build(phi, B, w, M, D).realization.entries();
                return weighted_block_norm(W * W - W, w, safe_degree(D, settings));
            });
        }
    }
    for (const double a : alphas) {
        const Weight w{a};
        c.below("selfadjoint[E11]" + tag("alpha", a), 1e-10, [&] {
            const OperatorMatrix W = build(examples[0].second, B, w, M, D).realization;
            return weighted_block_norm(weighted_adjoint(W, w).entries() - W.entries(), w, safe_degree(D, settings));
        });
    }
}

// 7. Cowen condition.
void criterion_7(Checks& c, std::uint64_t seed) {
    const std::size_t D = 96;
    const Settings settings;
    Rng rng(seed, 7);
    std::vector<Complex> points;
    for (std::size_t i = 0; i < settings.cowen_points; ++i) points.push_back(rng.disc(settings.rho_max));
    const auto worst = [&](const OperatorMatrix& W, const BlaschkeProduct& B) {
        double r = 0.0;
        for (const Complex a : points) r = max_of(r, cowen_residual(W, B, a, D));
        return r;
    };
    const BlaschkeProduct B = degree_three();
    c.below("toeplitz_B", 1e-12, [&] { return worst(toeplitz_matrix(taylor(B, D), D, hardy), B); });
    c.below("identity", 1e-12, [&] { return worst(OperatorMatrix::identity(D, hardy), B); });
    const BlaschkeProduct B2 = BlaschkeProduct::monomial(2);
    c.above("adjoint_shift_fails", 1e-2, [&] {
        const OperatorMatrix S = toeplitz_matrix(TaylorPoly{0.0, 1.0}, D, hardy);
        return worst(weighted_adjoint(S, hardy), B2);
    });
}

// 8. The X-space chain.
void criterion_8(Checks& c, std::uint64_t seed) {
    const BlaschkeProduct B(0.0, {{{0.5, 0.0}}, {{-0.3, 0.0}}});
    const std::size_t D = 120, kmax = 5;
    const Settings settings;
    std::optional<XSpaceChain> chain;
    c.above("gap", settings.gap_tol, [&] {
        chain = x_spaces(B, bergman, kmax, D, settings);
        return *std::min_element(chain->gaps.begin(), chain->gaps.end());
    });
    const auto need = [&]() -> const XSpaceChain& {
        if (!chain) throw GapError("X-space chain unavailable");
        return *chain;
    };
    c.below("dimension", settings.gap_tol, [&] {
        const auto& t = need().trailing;
        double worst = *std::max_element(t.begin(), t.end());
        for (const auto& block : need().blocks) worst += block.size() == B.degree() ? 0.0 : 1.0;
        return worst;
    });
    c.below("orthogonality", 1e-9, [&] { return chain_orthogonality_defect(need()); });
    c.below("shift_action", 1e-8, [&] { return shift_action_residual(need()); });
    c.below("k_spaces", 1e-8, [&] {
        const KSpaces ks = k_spaces(need(), settings);
        return *std::max_element(ks.residuals.begin(), ks.residuals.end());
    });
    c.below("upper_blocks", 1e-7, [&] {
        const auto sample = commutant_sample(seed, B.degree(), 5);
        double worst = 0.0;
        for (const auto& phi : sample) {
            const CommutantOperator W = build(phi, B, bergman, default_commutant_shells(B, D), D);
            worst = max_of(worst, max_upper_block_norm(block_matrix(W.realization, need())));
        }
        return worst;
    });
}

// 9. Moebius-power Proposition.
void criterion_9(Checks& c) {
    const Complex a{0.5, 0.0};
    const std::size_t N = 2, D = 120;
    const Settings settings;
    const BlaschkeProduct B = BlaschkeProduct::mobius_power(a, N);
    c.below("k0_orthogonality", 1e-8, [&] {
        const TaylorPoly b = taylor(B, D);
        double worst = 0.0;
        for (const auto& k : mobius_k0_basis(a, N, D))
            for (std::size_t m = 0; m <= safe_degree(D, settings); ++m)
                worst = max_of(worst, std::abs(weighted_inner(k, multiply(TaylorPoly::monomial(m, D), b, D), bergman)));
        return worst;
    });
    for (std::size_t j = 0; j < N; ++j)
        c.below("reducing[M" + std::to_string(j) + "]", 1e-6, [&, j] {
            return reducing_residual(mobius_power_reducing_projection(a, N, j, D, settings), B, bergman, D, settings);
        });
}

// 10. Monomial lattice for B = z^2 and the Hardy-only subspace.
void criterion_10(Checks& c) {
    const BlaschkeProduct B = BlaschkeProduct::monomial(2);
    const Settings settings;
    const std::size_t D = 20, s = safe_degree(D, settings);
    struct Outcome {
        std::size_t mismatches = 0;
        double parity_max = 0.0;
        double others_min = std::numeric_limits<double>::infinity();
    };
    std::optional<Outcome> outcome;
    const auto lattice = [&]() -> const Outcome& {
        if (outcome) return *outcome;
        Outcome o;
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (s + 1)); ++bits) {
            std::vector<bool> pattern(D + 1);
            for (std::size_t m = 0; m <= D; ++m) pattern[m] = m <= s ? ((bits >> m) & 1u) != 0 : pattern[m - 2];
            bool periodic = true;
            for (std::size_t m = 2; m <= D; ++m) periodic = periodic && pattern[m] == pattern[m - 2];
            const double r = reducing_residual(diagonal_projection(pattern, bergman), B, bergman, D, settings);
            if ((r < 1e-10) != periodic) ++o.mismatches;
            if (periodic)
                o.parity_max = std::max(o.parity_max, r);
            else
                o.others_min = std::min(o.others_min, r);
        }
        outcome = o;
        return *outcome;
    };
    c.below("lattice_mismatches", 0.5, [&] { return static_cast<double>(lattice().mismatches); });
    c.below("parity_projections", 1e-10, [&] { return lattice().parity_max; });
    c.above("non_parity_projections", 1e-10, [&] { return lattice().others_min; });

    const std::size_t Dh = 60;
    const auto hardy_only = [&](Weight w) {
        const auto P = shell_generated_projection(B, {TaylorPoly{1.0, 1.0}}, w, (Dh - 1) / 2, Dh, settings);
        return reducing_residual(P, B, w, Dh, settings);
    };
    c.below("hardy_only" + tag("alpha", 0.0), 1e-10, [&] { return hardy_only(hardy); });
    c.above("hardy_only" + tag("alpha", -1.0), 1e-3, [&] { return hardy_only(bergman); });
}

// 11. Shift equivalence.
void criterion_11(Checks& c) {
    const std::size_t D = 60;
    for (const std::size_t n : {2u, 3u})
        for (const double a : alphas) {
            const Weight w{a};
            const std::string t = tag("n", static_cast<double>(n)) + tag("alpha", a);
            c.below("unitarity" + t, 1e-10, [&, n, w] { return unitarity_defect(shift_equiv_monomial(n, w, D), D); });
            c.below("intertwining" + t, 1e-13, [&, n, w] {
                return intertwining_residual(shift_equiv_monomial(n, w, D), BlaschkeProduct::monomial(n), D);
            });
        }
    const BlaschkeProduct B = degree_three();
    const std::size_t M = 7;
    for (const double a : alphas) {
        const Weight w{a};
        const auto make = [&, w] { return shift_equiv_general(B, model_basis(B, D).orthonormal[1], w, M, D); };
        c.below("general.b_norm" + tag("alpha", a), 1e-9, [&] { return b_norm_defect(make(), D); });
        c.below("general.intertwining" + tag("alpha", a), 1e-8, [&] { return intertwining_residual(make(), B, D); });
    }
}

std::string prefix(int c) {
    return std::string("c") + (c < 10 ? "0" : "") + std::to_string(c) + ".";
}

}  // namespace

std::vector<Record> run_criterion(int criterion, std::uint64_t seed, bool timing, bool strict) {
    Checks c(prefix(criterion), timing, strict);
    switch (criterion) {
        case 1: criterion_1(c, seed); break;
        case 2: criterion_2(c, seed); break;
        case 3: criterion_3(c, seed); break;
        case 4: criterion_4_5(c, seed, false); break;
        case 5: criterion_4_5(c, seed, true); break;
        case 6: criterion_6(c); break;
        case 7: criterion_7(c, seed); break;
        case 8: criterion_8(c, seed); break;
        case 9: criterion_9(c); break;
        case 10: criterion_10(c); break;
        case 11: criterion_11(c); break;
        default: throw DomainError("unknown criterion " + std::to_string(criterion));
    }
    return c.take();
}

std::size_t worker_count(std::size_t requested) {
    std::size_t n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("BLASCHKE_LAB_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap > 0) n = std::min(n, static_cast<std::size_t>(cap));
    }
    return n;
}

std::vector<Record> run_battery(const BatteryOptions& options) {
    std::vector<int> selected = options.criteria;
    if (selected.empty())
        for (int c = 1; c <= battery_size; ++c) selected.push_back(c);
    std::sort(selected.begin(), selected.end());
    selected.erase(std::unique(selected.begin(), selected.end()), selected.end());
    for (const int c : selected)
        if (c < 1 || c > battery_size) throw DomainError("unknown criterion " + std::to_string(c));

    std::vector<int> work;
    for (const int c : selected)
        if (c != 12) work.push_back(c);

    std::vector<std::vector<Record>> results(work.size());
    std::vector<std::exception_ptr> failures(work.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < work.size(); i = next++) {
            try {
                results[i] = run_criterion(work[i], options.seed, options.timing, options.strict);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    const std::size_t threads = std::min(worker_count(options.threads), std::max<std::size_t>(1, work.size()));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);

    std::vector<Record> out;
    for (auto& r : results) out.insert(out.end(), r.begin(), r.end());

    if (std::find(selected.begin(), selected.end(), 12) != selected.end()) {
        Report probe;
        probe.command = "suite";
        probe.records = out;
        out.push_back(run_check("c12.render_round_trip", 0.5, [&] {
            const std::string first = render(probe, Format::json);
            return render(parse_report(first), Format::json) == first ? 0.0 : 1.0;
        }, options.timing, options.strict));
    }
    return out;
}

}  // namespace blaschke_lab
