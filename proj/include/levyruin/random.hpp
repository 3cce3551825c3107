#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace levyruin {

using Rng = std::mt19937_64;

// SplitMix64 finaliser, used to decorrelate (seed, index) pairs.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Independent generator for path `index` of an experiment seeded with `seed`.
/// The stream depends only on (seed, index), never on scheduling.
inline Rng stream_for(std::uint64_t seed, std::uint64_t index) {
    return Rng(mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL)));
}

/// Uniform on the open interval (0, 1).
inline double uniform_open(Rng& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

inline double standard_exponential(Rng& rng) { return -std::log(uniform_open(rng)); }

// Box-Muller without caching so every call consumes exactly two draws.
inline double standard_normal(Rng& rng) {
    const double r = std::sqrt(-2.0 * std::log(uniform_open(rng)));
    return r * std::cos(2.0 * std::numbers::pi * uniform_open(rng));
}

}  // namespace levyruin
