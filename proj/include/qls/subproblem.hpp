#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <vector>

#include "qls/errors.hpp"
#include "qls/graph.hpp"
#include "qls/modularity.hpp"

namespace qls {

namespace detail {
// Flattened strict upper triangle, row-major: (p, q) with p < q.
inline std::size_t pair_index(int n, int p, int q) {
    return static_cast<std::size_t>(p) * static_cast<std::size_t>(n) -
           static_cast<std::size_t>(p) * (static_cast<std::size_t>(p) + 1) / 2 +
           static_cast<std::size_t>(q - p - 1);
}
inline std::size_t pair_count(int n) {
    return static_cast<std::size_t>(n) * (static_cast<std::size_t>(n) - 1) / 2;
}
}  // namespace detail

/// Boundary-conditioned restriction of the modularity objective to a vertex
/// subset X: Q(s) = sum_{p<q} quad_pq s_p s_q + sum_p linear_p s_p, where
/// quad_pq = 2 B_{X[p] X[q]} and linear_p folds the frozen outside spins in.
/// `scale` converts a Q difference into a modularity difference.
struct Subproblem {
    std::vector<int> subset;     // ascending global vertex ids
    std::vector<double> quad;    // strict upper triangle over local pairs
    std::vector<double> linear;  // per local variable
    double scale = 0.0;          // 1 / (4m)

    int size() const { return static_cast<int>(linear.size()); }

    double quad_at(int p, int q) const { return quad[detail::pair_index(size(), p, q)]; }

    /// Q(s) for local spins (one per subset vertex, in subset order).
    double value(const std::vector<int>& local_spins) const {
        if (static_cast<int>(local_spins.size()) != size())
            throw LengthMismatchError("local spin count must match subset size");
        const int k = size();
        double total = 0.0;
        for (int p = 0; p < k; ++p)
            for (int q = p + 1; q < k; ++q)
                total += quad[detail::pair_index(k, p, q)] * local_spins[static_cast<std::size_t>(p)] *
                         local_spins[static_cast<std::size_t>(q)];
        for (int p = 0; p < k; ++p) total += linear[static_cast<std::size_t>(p)] * local_spins[static_cast<std::size_t>(p)];
        return total;
    }

    // Current spins of the subset vertices, in subset order.
    std::vector<int> local_spins(const SpinAssignment& s) const {
        std::vector<int> out(subset.size());
        for (std::size_t i = 0; i < subset.size(); ++i) out[i] = s[subset[i]];
        return out;
    }
};

/// Ising energy model E(s) = sum_{p<q} J_pq s_p s_q + sum_p h_p s_p + offset.
struct IsingModel {
    int n_vars = 0;
    std::vector<double> coupling;  // strict upper triangle
    std::vector<double> h;
    double offset = 0.0;

    double coupling_at(int p, int q) const { return coupling[detail::pair_index(n_vars, p, q)]; }

    // Symmetric dense matrix, zero diagonal; used by the solvers' local-field
    // updates.
    std::vector<double> dense_coupling() const {
        std::vector<double> full(static_cast<std::size_t>(n_vars) * static_cast<std::size_t>(n_vars), 0.0);
        for (int p = 0; p < n_vars; ++p) {
            for (int q = p + 1; q < n_vars; ++q) {
                const double j = coupling[detail::pair_index(n_vars, p, q)];
                full[static_cast<std::size_t>(p) * n_vars + q] = j;
                full[static_cast<std::size_t>(q) * n_vars + p] = j;
            }
        }
        return full;
    }

    double max_abs_coefficient() const {
        double best = 0.0;
        for (double j : coupling) best = std::max(best, std::abs(j));
        for (double f : h) best = std::max(best, std::abs(f));
        return best;
    }
};

inline double energy(const IsingModel& m, const std::vector<int>& spins) {
    if (static_cast<int>(spins.size()) != m.n_vars)
        throw LengthMismatchError("spin count must match n_vars");
    double total = m.offset;
    for (int p = 0; p < m.n_vars; ++p)
        for (int q = p + 1; q < m.n_vars; ++q)
            total += m.coupling[detail::pair_index(m.n_vars, p, q)] * spins[static_cast<std::size_t>(p)] *
                     spins[static_cast<std::size_t>(q)];
    for (int p = 0; p < m.n_vars; ++p) total += m.h[static_cast<std::size_t>(p)] * spins[static_cast<std::size_t>(p)];
    return total;
}

/// Freezes spins outside X and folds them into linear terms:
/// linear_p = sum_{j not in X} 2 B_{X[p],j} s_j, evaluated through the
/// adjacency lists and two degree-spin sums rather than a dense B row.
/// Constant terms (diagonal, outside-outside pairs) are dropped; `scale`
/// recovers exact modularity deltas.
inline Subproblem build_subproblem(const Graph& g, const SpinAssignment& s, std::vector<int> subset) {
    detail::check_assignment(g, s);
    if (subset.empty()) throw EmptySubsetError();
    std::sort(subset.begin(), subset.end());
    const int n = g.vertex_count();
    std::vector<char> in_subset(static_cast<std::size_t>(n), 0);
    for (int v : subset) {
        if (v < 0 || v >= n) throw SubsetOutOfRangeError("subset vertex out of range");
        if (in_subset[static_cast<std::size_t>(v)]) throw DuplicateVertexError(v);
        in_subset[static_cast<std::size_t>(v)] = 1;
    }

    const int k = static_cast<int>(subset.size());
    const double m = static_cast<double>(g.edge_count());

    Subproblem sp;
    sp.subset = std::move(subset);
    sp.scale = 1.0 / (4.0 * m);
    sp.quad.resize(detail::pair_count(k));
    for (int p = 0; p < k; ++p)
        for (int q = p + 1; q < k; ++q)
            sp.quad[detail::pair_index(k, p, q)] = 2.0 * g.modularity_coefficient(sp.subset[p], sp.subset[q]);

    double outside_degree_spin = static_cast<double>(detail::degree_spin_sum(g, s));
    for (int v : sp.subset) outside_degree_spin -= static_cast<double>(g.degree(v)) * s[v];

    sp.linear.resize(static_cast<std::size_t>(k));
    for (int p = 0; p < k; ++p) {
        const int i = sp.subset[static_cast<std::size_t>(p)];
        long long outside_nbr = 0;
        for (int u : g.neighbors(i))
            if (!in_subset[static_cast<std::size_t>(u)]) outside_nbr += s[u];
        sp.linear[static_cast<std::size_t>(p)] =
            2.0 * (static_cast<double>(outside_nbr) - static_cast<double>(g.degree(i)) / (2.0 * m) * outside_degree_spin);
    }
    return sp;
}

/// Maximizing Q is minimizing -Q: J = -quad, h = -linear, offset 0.
inline IsingModel to_ising(const Subproblem& sp) {
    IsingModel m;
    m.n_vars = sp.size();
    m.coupling.resize(sp.quad.size());
    for (std::size_t i = 0; i < sp.quad.size(); ++i) m.coupling[i] = -sp.quad[i];
    m.h.resize(sp.linear.size());
    for (std::size_t i = 0; i < sp.linear.size(); ++i) m.h[i] = -sp.linear[i];
    m.offset = 0.0;
    return m;
}

// Debug dump: "p q J" per pair, "p h" per field.
inline void dump_ising(std::ostream& out, const IsingModel& m) {
    out.precision(17);
    for (int p = 0; p < m.n_vars; ++p)
        for (int q = p + 1; q < m.n_vars; ++q)
            out << p << " " << q << " " << m.coupling_at(p, q) << "\n";
    for (int p = 0; p < m.n_vars; ++p) out << p << " " << m.h[static_cast<std::size_t>(p)] << "\n";
}

}  // namespace qls
