#pragma once

#include "spde_parareal/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>

namespace test_support {

inline spde_parareal::SpectralField random_field(std::mt19937_64& rng, std::size_t modes, double scale = 1.0) {
    std::normal_distribution<double> dist(0.0, scale);
    spde_parareal::SpectralField u(modes);
    for (std::size_t p = 0; p < modes; ++p) u[p] = dist(rng);
    return u;
}

inline double rel_diff(double a, double b) {
    const double denom = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / denom;
}

/// max_p |a_p - b_p| / max(|b|_inf, tiny)
inline double rel_field_diff(const spde_parareal::SpectralField& a, const spde_parareal::SpectralField& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t p = 0; p < b.modes(); ++p) {
        num = std::max(num, std::abs(a[p] - b[p]));
        den = std::max(den, std::abs(b[p]));
    }
    return num / std::max(den, 1e-300);
}

}  // namespace test_support
