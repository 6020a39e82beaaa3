#pragma once

#include <cstdint>

namespace icosa {

// Counter-based generator: every draw is a pure hash of (seed, stream, index),
// so runs are reproducible across platforms and thread counts.
inline std::uint64_t hash_mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t counter_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    return hash_mix(hash_mix(hash_mix(seed) ^ stream) ^ index);
}

// Uniform in [0, 1).
inline double uniform01(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    return static_cast<double>(counter_rng(seed, stream, index) >> 11) * 0x1.0p-53;
}

// Uniform in [-half_width, half_width].
inline double uniform_sym(std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
                          double half_width) {
    return half_width * (2.0 * uniform01(seed, stream, index) - 1.0);
}

}  // namespace icosa
