#pragma once

// Seeded sampling. The engine is std::mt19937_64 seeded through std::seed_seq
// from (seed, stream); doubles take the top 53 bits, so draws are identical
// on every conforming platform.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "blaschke_lab/commutant.hpp"
#include "blaschke_lab/space.hpp"

namespace blaschke_lab {

class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint32_t stream = 0) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream};
        engine_.seed(seq);
    }

    /// [0, 1)
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Real and imaginary parts uniform in [-1, 1).
    Complex unit_square() {
        const double re = uniform(-1.0, 1.0);
        return {re, uniform(-1.0, 1.0)};
    }

    /// Uniform in the disc |z| <= radius.
    Complex disc(double radius) {
        const double r = radius * std::sqrt(uniform());
        return std::polar(r, 2.0 * std::numbers::pi * uniform());
    }

    /// degree + 1 coefficients from unit_square().
    TaylorPoly poly(std::size_t degree) {
        std::vector<Complex> c(degree + 1);
        for (auto& x : c) x = unit_square();
        return TaylorPoly(std::move(c));
    }

    MultiplierMatrix multiplier(std::size_t n, std::size_t degree) {
        std::vector<TaylorPoly> e;
        for (std::size_t i = 0; i < n * n; ++i) e.push_back(poly(degree));
        return MultiplierMatrix(n, std::move(e));
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace blaschke_lab
