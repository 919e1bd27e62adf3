#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace skinbabble {

// All randomness flows through these helpers so that draw sequences are pinned
// by our own code, not by implementation-defined std:: distributions. This is
// what makes runs byte-reproducible for a given (config, seed).
using Rng = std::mt19937_64;

// Uniform in [0, 1), 53-bit resolution, exactly one engine call.
inline double uniform01(Rng& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline double uniform(Rng& g, double lo, double hi) {
    return lo + (hi - lo) * uniform01(g);
}

// Standard normal via Box-Muller without caching the second value, so every
// call consumes exactly two engine draws regardless of call history.
inline double gauss(Rng& g) {
    double u1 = uniform01(g);
    while (u1 <= 0.0)
        u1 = uniform01(g);
    const double u2 = uniform01(g);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace skinbabble
