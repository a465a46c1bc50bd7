#pragma once

#include <cstdint>
#include <random>

namespace qls {

// splitmix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stream seed for sub-task `index` of a run seeded with `base`:
// mix64(base XOR mix64(index)). Used for per-iteration solver seeds,
// per-restart annealer seeds, and the two variational streams.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
    return mix64(base ^ mix64(index));
}

// Uniform double in [0,1) from the top 53 bits. <random> distributions are
// not bit-stable across standard libraries; mt19937_64 itself is.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline int random_spin(std::mt19937_64& rng) {
    return (rng() & 1ULL) ? 1 : -1;
}

}  // namespace qls
