#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "ebit/errors.hpp"

namespace ebit {

// Entropies are in bits throughout (base-2 logs).

inline double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// Shannon entropy of (p, 1-p) in bits.
inline double binary_entropy(double p) {
    if (p < 0.0 || p > 1.0) fail(errc::out_of_range, "binary_entropy: p outside [0, 1]");
    return -xlog2x(p) - xlog2x(1.0 - p);
}

// Entropy of a probability vector in bits; zeros contribute nothing.
inline double shannon_entropy(const std::vector<double>& p) {
    double h = 0.0;
    for (double x : p) h -= xlog2x(x);
    return h;
}

// log2 of the binomial coefficient C(n, k), exact enough for n ~ 1e4.
inline double log2_binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) fail(errc::out_of_range, "log2_binomial: k outside [0, n]");
    return (std::lgamma(double(n) + 1.0) - std::lgamma(double(k) + 1.0) -
            std::lgamma(double(n - k) + 1.0)) /
           std::numbers::ln2;
}

// Neumaier-compensated sum; keeps 1e4-term probability totals at ~1e-16 error.
inline double compensated_sum(const std::vector<double>& xs) {
    double sum = 0.0, comp = 0.0;
    for (double x : xs) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    return sum + comp;
}

// SplitMix64 finalizer; used to derive independent substreams from one seed.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic per-stream generator: same (seed, stream) -> same sequence,
// regardless of how many draws other streams made.
inline std::mt19937_64 seeded_rng(std::uint64_t seed, std::uint64_t stream = 0) {
    return std::mt19937_64(mix64(seed ^ mix64(stream + 1)));
}

// Round to `digits` significant decimal digits (reports print 12).
inline double round_sig(double x, int digits = 12) {
    if (x == 0.0 || !std::isfinite(x)) return x;
    double mag = std::pow(10.0, digits - 1 - std::floor(std::log10(std::abs(x))));
    return std::round(x * mag) / mag;
}

} // namespace ebit
