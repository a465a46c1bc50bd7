#pragma once

#include <cmath>
#include <vector>

#include "qls/errors.hpp"
#include "qls/graph.hpp"
#include "qls/rng.hpp"

namespace qls {

/// Per-vertex community label as a spin in {-1, +1}.
struct SpinAssignment {
    std::vector<int> spins;

    int size() const { return static_cast<int>(spins.size()); }
    int operator[](int v) const { return spins[static_cast<std::size_t>(v)]; }
    int& operator[](int v) { return spins[static_cast<std::size_t>(v)]; }
};

namespace detail {

inline void check_assignment(const Graph& g, const SpinAssignment& s) {
    if (s.size() != g.vertex_count())
        throw LengthMismatchError("assignment length " + std::to_string(s.size()) +
                                  " vs vertex count " + std::to_string(g.vertex_count()));
    for (int v : s.spins)
        if (v != 1 && v != -1) throw LengthMismatchError("spins must be -1 or +1");
}

// Sum over edges of s_u * s_v.
inline long long edge_spin_sum(const Graph& g, const SpinAssignment& s) {
    long long sum = 0;
    for (int u = 0; u < g.vertex_count(); ++u)
        for (int v : g.neighbors(u))
            if (u < v) sum += static_cast<long long>(s[u]) * s[v];
    return sum;
}

inline long long degree_spin_sum(const Graph& g, const SpinAssignment& s) {
    long long sum = 0;
    for (int v = 0; v < g.vertex_count(); ++v) sum += static_cast<long long>(g.degree(v)) * s[v];
    return sum;
}

// Flip gain given the cached degree-spin sum K = sum_j k_j s_j; O(deg(v)).
inline double flip_gain_cached(const Graph& g, const SpinAssignment& s, int v, double degree_spin_sum) {
    const double m = static_cast<double>(g.edge_count());
    long long nbr = 0;
    for (int u : g.neighbors(v)) nbr += s[u];
    const double k_v = static_cast<double>(g.degree(v));
    const double inner =
        static_cast<double>(nbr) - k_v / (2.0 * m) * (degree_spin_sum - k_v * static_cast<double>(s[v]));
    return -static_cast<double>(s[v]) / m * inner;
}

}  // namespace detail

/// Modularity H = (1/4m) * sum_ij B_ij s_i s_j, evaluated in O(m + n) as
/// (S_A - K^2/(2m)) / (4m) with S_A = 2 * sum_{(u,v) in E} s_u s_v and
/// K = sum_i k_i s_i. Includes the diagonal terms, so the uniform
/// assignment scores exactly 0.
inline double modularity(const Graph& g, const SpinAssignment& s) {
    detail::check_assignment(g, s);
    const double m = static_cast<double>(g.edge_count());
    const double s_a = 2.0 * static_cast<double>(detail::edge_spin_sum(g, s));
    const double k = static_cast<double>(detail::degree_spin_sum(g, s));
    return (s_a - k * k / (2.0 * m)) / (4.0 * m);
}

/// Modularity change from flipping the single spin v.
inline double flip_gain(const Graph& g, const SpinAssignment& s, int v) {
    detail::check_assignment(g, s);
    if (v < 0 || v >= g.vertex_count()) throw SubsetOutOfRangeError("vertex out of range");
    return detail::flip_gain_cached(g, s, v, static_cast<double>(detail::degree_spin_sum(g, s)));
}

/// Per-vertex single-flip gains plus the current modularity. The degree-spin
/// sum is cached so a move touching X recomputes only X and its neighbors.
struct GainTable {
    std::vector<double> gain;
    double current_modularity = 0.0;
    double degree_spin_sum = 0.0;
};

inline GainTable init_gains(const Graph& g, const SpinAssignment& s) {
    detail::check_assignment(g, s);
    GainTable t;
    t.degree_spin_sum = static_cast<double>(detail::degree_spin_sum(g, s));
    t.current_modularity = modularity(g, s);
    t.gain.resize(static_cast<std::size_t>(g.vertex_count()));
    for (int v = 0; v < g.vertex_count(); ++v)
        t.gain[static_cast<std::size_t>(v)] = detail::flip_gain_cached(g, s, v, t.degree_spin_sum);
    return t;
}

/// Applies new spins on the subset, updates the modularity by the exact
/// delta, and recomputes gains only for the subset and its neighbors.
/// Returns the modularity change.
inline double apply_move(const Graph& g, SpinAssignment& s, GainTable& t,
                         const std::vector<int>& subset, const std::vector<int>& new_spins) {
    if (subset.size() != new_spins.size())
        throw LengthMismatchError("new_spins must match subset size");
    const int n = g.vertex_count();
    std::vector<char> in_subset(static_cast<std::size_t>(n), 0);
    for (int v : subset) {
        if (v < 0 || v >= n) throw SubsetOutOfRangeError("subset vertex out of range");
        if (in_subset[static_cast<std::size_t>(v)]) throw DuplicateVertexError(v);
        in_subset[static_cast<std::size_t>(v)] = 1;
    }
    for (int sp : new_spins)
        if (sp != 1 && sp != -1) throw LengthMismatchError("spins must be -1 or +1");

    const double m = static_cast<double>(g.edge_count());

    // Delta of sum_{(u,v) in E} s_u s_v over edges touching the subset.
    long long edge_delta = 0;
    std::vector<int> updated(s.spins);
    for (std::size_t i = 0; i < subset.size(); ++i) updated[static_cast<std::size_t>(subset[i])] = new_spins[i];
    for (int v : subset) {
        for (int u : g.neighbors(v)) {
            if (in_subset[static_cast<std::size_t>(u)] && u < v) continue;  // counted from the other endpoint
            edge_delta += static_cast<long long>(updated[static_cast<std::size_t>(v)]) * updated[static_cast<std::size_t>(u)] -
                          static_cast<long long>(s[v]) * s[u];
        }
    }

    double k_new = t.degree_spin_sum;
    for (std::size_t i = 0; i < subset.size(); ++i)
        k_new += static_cast<double>(g.degree(subset[i])) * (new_spins[i] - s[subset[i]]);

    const double delta_h =
        (2.0 * static_cast<double>(edge_delta) - (k_new * k_new - t.degree_spin_sum * t.degree_spin_sum) / (2.0 * m)) /
        (4.0 * m);

    const double k_old = t.degree_spin_sum;
    s.spins = std::move(updated);
    t.degree_spin_sum = k_new;
    t.current_modularity += delta_h;

    // Every gain carries a s_v k_v K / (2m^2) null-model term, so a change in
    // K shifts all of them by a scalar multiple; only vertices that see a
    // flipped spin need the full O(deg) recomputation.
    if (k_new != k_old) {
        const double shift = (k_new - k_old) / (2.0 * m * m);
        for (int v = 0; v < n; ++v)
            t.gain[static_cast<std::size_t>(v)] += static_cast<double>(s[v]) * g.degree(v) * shift;
    }
    std::vector<char> dirty(static_cast<std::size_t>(n), 0);
    std::vector<int> to_update;
    auto mark = [&](int v) {
        if (!dirty[static_cast<std::size_t>(v)]) {
            dirty[static_cast<std::size_t>(v)] = 1;
            to_update.push_back(v);
        }
    };
    for (int v : subset) {
        mark(v);
        for (int u : g.neighbors(v)) mark(u);
    }
    for (int v : to_update)
        t.gain[static_cast<std::size_t>(v)] = detail::flip_gain_cached(g, s, v, t.degree_spin_sum);

    return delta_h;
}

}  // namespace qls
