#pragma once

#include <cmath>
#include <complex>

#include "blaschke_lab/space.hpp"

namespace test {

using blaschke_lab::Complex;
using blaschke_lab::TaylorPoly;

inline double max_diff(const TaylorPoly& a, const TaylorPoly& b, std::size_t upto) {
    double m = 0.0;
    for (std::size_t k = 0; k <= upto; ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

// Partial sum of a truncated series at z, independent of TaylorPoly::evaluate.
inline Complex sum_series(const TaylorPoly& f, Complex z) {
    Complex acc = 0.0, p = 1.0;
    for (std::size_t k = 0; k <= f.degree(); ++k, p *= z) acc += f[k] * p;
    return acc;
}

}  // namespace test
