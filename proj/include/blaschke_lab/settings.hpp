#pragma once

#include <cstddef>

namespace blaschke_lab {

/// Numerical tolerances and truncation policy shared by every module.
///
/// Operations never hard-code thresholds; they read them from a Settings
/// value, which defaults to the values documented next to each member.
struct Settings {
    /// Largest admissible modulus of a Blaschke zero.
    double rho_max = 0.8;

    /// Composition stops once the remaining terms are below this size.
    double tol_compose = 1e-14;
    /// Composition gives up after compose_terms_factor * D terms.
    std::size_t compose_terms_factor = 4;

    /// Largest admissible H^2 tail of B^M beyond the truncation degree.
    /// Only a shell that has essentially left the window is rejected.
    double tol_tail = 0.999;

    /// Commutation residual threshold for commutant membership.
    double tol_commute = 1e-8;

    /// Singular-value gap separating "in the span" from "complement".
    double gap_tol = 1e-6;

    /// Smallest admissible eigenvalue of a normalized Gram matrix.
    double rank_tol = 1e-10;

    /// Singular-value threshold for the pointwise rank of a symbol matrix.
    double symbol_rank_tol = 1e-8;

    /// Guard for |1 - conj(a) z| in Blaschke evaluation.
    double pole_tol = 1e-14;

    /// Model-space membership threshold.
    double membership_tol = 1e-10;

    /// Largest admissible relative least-squares residual.
    double lsq_tol = 1e-6;

    /// Self-adjointness defect accepted as an input to block checks.
    double selfadjoint_tol = 1e-8;

    /// Degree cap for multiplier-matrix entries.
    std::size_t max_symbol_degree = 16;

    /// Fraction of the truncation degree reserved as guard band; residuals
    /// are measured on degrees 0..D - floor(D * guard_fraction).
    double guard_fraction = 0.5;

    /// Shell cap for the Moebius-power generators; 0 means floor(D / (4N)).
    std::size_t mobius_shell_cap = 0;

    /// Number of Cowen sample points used by the batteries.
    std::size_t cowen_points = 20;
};

/// Highest degree on which finite sections are compared.
inline std::size_t safe_degree(std::size_t degree, const Settings& settings = {}) {
    const auto guard = static_cast<std::size_t>(static_cast<double>(degree) * settings.guard_fraction);
    return degree - guard;
}

}  // namespace blaschke_lab
