#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qls {

/// Best configuration a subproblem solver found, with its exact energy and
/// how much work produced it (enumerated patterns, samples, or objective
/// evaluations, by backend).
struct SolverResult {
    std::vector<int> spins;
    double energy = 0.0;
    std::uint64_t evaluations = 0;
    std::string solver_name;
};

// Global convention: bit b of z is spin 1 - 2b, variable 0 in the least
// significant bit.
inline std::vector<int> spins_from_bits(std::uint64_t z, int n) {
    std::vector<int> spins(static_cast<std::size_t>(n));
    for (int b = 0; b < n; ++b) spins[static_cast<std::size_t>(b)] = (z >> b) & 1ULL ? -1 : 1;
    return spins;
}

inline std::uint64_t bits_from_spins(const std::vector<int>& spins) {
    std::uint64_t z = 0;
    for (std::size_t b = 0; b < spins.size(); ++b)
        if (spins[b] < 0) z |= 1ULL << b;
    return z;
}

}  // namespace qls
