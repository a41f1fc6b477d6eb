#pragma once

#include <cstdint>
#include <cmath>
#include <string_view>

namespace hollm {

/// Deterministic RNG with portable output.
///
/// Wraps a splitmix64 core so that uniform/normal draws are bit-identical
/// across platforms and standard-library versions (std::uniform_real_distribution
/// is implementation-defined, which would break trajectory reproducibility).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    /// Integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // modulo bias is negligible for n << 2^64
        return next_u64() % n;
    }

    /// Standard normal via Box-Muller (consumes two uniforms per call).
    double normal() {
        double u1 = uniform01();
        double u2 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    double normal(double mean, double stddev) {
        return mean + stddev * normal();
    }

private:
    std::uint64_t state_;
};

namespace detail {
inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
} // namespace detail

/// Derives an independent stream from (root seed, consumer label, round, sub-index).
/// Adding a consumer label never perturbs the streams of existing consumers.
inline Rng derive_rng(std::uint64_t root_seed, std::string_view label,
                      std::uint64_t round = 0, std::uint64_t sub = 0) {
    std::uint64_t h = detail::mix(root_seed, detail::fnv1a(label));
    h = detail::mix(h, round);
    h = detail::mix(h, sub);
    return Rng(h);
}

} // namespace hollm
