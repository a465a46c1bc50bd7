// Brute-force reference implementations for the test suites. These
// deliberately evaluate the textbook double sums rather than reusing the
// library's incremental shortcuts, so the two routes check each other.
#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <utility>
#include <vector>

#include "qls/graph.hpp"
#include "qls/modularity.hpp"
#include "qls/rng.hpp"
#include "qls/subproblem.hpp"

namespace oracle {

// Direct sum over all ordered pairs of B_ij s_i s_j / (4m), with B built
// from adjacency and degrees on the spot.
inline double modularity(const qls::Graph& g, const std::vector<int>& spins) {
    const int n = g.vertex_count();
    const double m = static_cast<double>(g.edge_count());
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double a = (i != j && g.has_edge(i, j)) ? 1.0 : 0.0;
            const double b = a - static_cast<double>(g.degree(i)) * g.degree(j) / (2.0 * m);
            total += b * spins[static_cast<std::size_t>(i)] * spins[static_cast<std::size_t>(j)];
        }
    }
    return total / (4.0 * m);
}

// Exhaustive search over all 2^n assignments. Returns (best modularity,
// first maximizing assignment in counting order, bit b -> spin 1-2b).
inline std::pair<double, std::vector<int>> best_modularity(const qls::Graph& g) {
    const int n = g.vertex_count();
    double best = -std::numeric_limits<double>::infinity();
    std::vector<int> best_spins;
    for (std::uint64_t z = 0; z < (1ULL << n); ++z) {
        std::vector<int> spins(static_cast<std::size_t>(n));
        for (int b = 0; b < n; ++b) spins[static_cast<std::size_t>(b)] = (z >> b) & 1ULL ? -1 : 1;
        const double h = modularity(g, spins);
        if (h > best) {
            best = h;
            best_spins = spins;
        }
    }
    return {best, best_spins};
}

// Exhaustive Ising minimum with the counting-order tie-break.
inline std::pair<double, std::vector<int>> min_energy(const qls::IsingModel& m) {
    double best = std::numeric_limits<double>::infinity();
    std::uint64_t best_z = 0;
    for (std::uint64_t z = 0; z < (1ULL << m.n_vars); ++z) {
        std::vector<int> spins(static_cast<std::size_t>(m.n_vars));
        for (int b = 0; b < m.n_vars; ++b) spins[static_cast<std::size_t>(b)] = (z >> b) & 1ULL ? -1 : 1;
        double e = m.offset;
        for (int p = 0; p < m.n_vars; ++p) {
            e += m.h[static_cast<std::size_t>(p)] * spins[static_cast<std::size_t>(p)];
            for (int q = p + 1; q < m.n_vars; ++q)
                e += m.coupling_at(p, q) * spins[static_cast<std::size_t>(p)] * spins[static_cast<std::size_t>(q)];
        }
        if (e < best) {
            best = e;
            best_z = z;
        }
    }
    std::vector<int> spins(static_cast<std::size_t>(m.n_vars));
    for (int b = 0; b < m.n_vars; ++b) spins[static_cast<std::size_t>(b)] = (best_z >> b) & 1ULL ? -1 : 1;
    return {best, spins};
}

// Two triangles {0,1,2} and {3,4,5} bridged by edge (2,3); m = 7.
inline qls::Graph barbell() {
    return qls::Graph::from_edges(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {2, 3}});
}

// G(n, p) with a deterministic seed; retries with seed+1 while edgeless.
inline qls::Graph gnp(int n, double p, std::uint64_t seed) {
    for (;; ++seed) {
        std::mt19937_64 rng(seed);
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (qls::uniform01(rng) < p) edges.emplace_back(i, j);
        if (!edges.empty()) return qls::Graph::from_edges(n, std::move(edges));
    }
}

inline std::vector<int> random_spins(int n, std::mt19937_64& rng) {
    std::vector<int> spins(static_cast<std::size_t>(n));
    for (auto& s : spins) s = qls::random_spin(rng);
    return spins;
}

// Dense random Ising model with coefficients uniform in [-1, 1].
inline qls::IsingModel random_model(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    qls::IsingModel m;
    m.n_vars = n;
    m.coupling.resize(qls::detail::pair_count(n));
    m.h.resize(static_cast<std::size_t>(n));
    for (auto& j : m.coupling) j = 2.0 * qls::uniform01(rng) - 1.0;
    for (auto& f : m.h) f = 2.0 * qls::uniform01(rng) - 1.0;
    return m;
}

}  // namespace oracle
