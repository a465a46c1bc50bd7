#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qls/errors.hpp"
#include "qls/rng.hpp"

namespace qls {

/// Simple undirected graph: sorted adjacency lists, degree sequence, edge
/// count. Immutable after construction; graphs with no edges are rejected
/// because the modularity normalization divides by the edge count.
class Graph {
public:
    // Builds from an edge list over vertices 0..n-1. Self-loops throw,
    // duplicate edges collapse (count reported through `duplicates` if given).
    static Graph from_edges(int n, std::vector<std::pair<int, int>> edges,
                            std::size_t* duplicates = nullptr) {
        for (auto& [u, v] : edges) {
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw Error("edge endpoint out of range");
            if (u == v) throw SelfLoopError(std::to_string(u));
            if (u > v) std::swap(u, v);
        }
        std::sort(edges.begin(), edges.end());
        const auto last = std::unique(edges.begin(), edges.end());
        if (duplicates) *duplicates = static_cast<std::size_t>(edges.end() - last);
        edges.erase(last, edges.end());
        if (edges.empty()) throw EmptyGraphError();

        Graph g;
        g.n_ = n;
        g.m_ = static_cast<long long>(edges.size());
        g.adjacency_.resize(static_cast<std::size_t>(n));
        for (const auto& [u, v] : edges) {
            g.adjacency_[static_cast<std::size_t>(u)].push_back(v);
            g.adjacency_[static_cast<std::size_t>(v)].push_back(u);
        }
        for (auto& nbrs : g.adjacency_) std::sort(nbrs.begin(), nbrs.end());
        return g;
    }

    int vertex_count() const { return n_; }
    long long edge_count() const { return m_; }
    int degree(int v) const { return static_cast<int>(adjacency_[static_cast<std::size_t>(v)].size()); }

    const std::vector<int>& neighbors(int v) const { return adjacency_[static_cast<std::size_t>(v)]; }

    bool has_edge(int i, int j) const {
        const auto& nb = adjacency_[static_cast<std::size_t>(i)];
        return std::binary_search(nb.begin(), nb.end(), j);
    }

    /// Modularity-matrix entry B_ij = A_ij - k_i k_j / (2m). Rows sum to
    /// zero; the diagonal is -k_i^2 / (2m).
    double modularity_coefficient(int i, int j) const {
        const double null_model =
            static_cast<double>(degree(i)) * static_cast<double>(degree(j)) / (2.0 * static_cast<double>(m_));
        return (i != j && has_edge(i, j) ? 1.0 : 0.0) - null_model;
    }

    // Edges as (u, v) with u < v, ascending.
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(static_cast<std::size_t>(m_));
        for (int u = 0; u < n_; ++u)
            for (int v : adjacency_[static_cast<std::size_t>(u)])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

private:
    int n_ = 0;
    long long m_ = 0;
    std::vector<std::vector<int>> adjacency_;
};

struct LoadedGraph {
    Graph graph;
    std::vector<std::string> labels;  // dense index -> original label
    std::size_t duplicates_collapsed = 0;
};

/// Parses whitespace-separated "u v" pairs; '#' starts a comment line,
/// labels are arbitrary strings densified in first-appearance order.
inline LoadedGraph load_edge_list(std::istream& in) {
    std::unordered_map<std::string, int> index_of;
    std::vector<std::string> labels;
    std::vector<std::pair<int, int>> edges;
    std::string line;
    std::size_t lineno = 0;

    auto intern = [&](const std::string& label) {
        auto [it, inserted] = index_of.try_emplace(label, static_cast<int>(labels.size()));
        if (inserted) labels.push_back(label);
        return it->second;
    };

    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream fields(line);
        std::string a, b, extra;
        if (!(fields >> a)) continue;  // blank line
        if (a[0] == '#') continue;
        if (!(fields >> b) || (fields >> extra)) throw MalformedLineError(lineno);
        if (a == b) throw SelfLoopError(a);
        edges.emplace_back(intern(a), intern(b));
    }
    if (edges.empty()) throw EmptyGraphError();

    LoadedGraph out;
    out.graph = Graph::from_edges(static_cast<int>(labels.size()), std::move(edges), &out.duplicates_collapsed);
    out.labels = std::move(labels);
    return out;
}

inline LoadedGraph load_edge_list(const std::string& text) {
    std::istringstream in(text);
    return load_edge_list(in);
}

// Writes "u v" lines with integer labels, preceded by '#' header lines.
inline void save_edge_list(std::ostream& out, const Graph& g, const std::string& header = "") {
    if (!header.empty()) out << "# " << header << "\n";
    for (const auto& [u, v] : g.edges()) out << u << " " << v << "\n";
}

/// Two equal blocks of n/2 vertices; within-block pairs joined with
/// probability p_in, cross-block with p_out. Deterministic per seed; retries
/// with seed+1, seed+2, ... if no edge survives.
inline Graph generate_planted_partition(int n, double p_in, double p_out, std::uint64_t seed) {
    if (!(p_out >= 0.0 && p_in >= p_out && p_in <= 1.0)) throw InvalidProbabilityError();
    if (n % 2 != 0) throw OddNError();
    if (n == 0 || (p_in == 0.0 && p_out == 0.0)) throw EmptyGraphError();

    const int half = n / 2;
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt));
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const bool same_block = (i < half) == (j < half);
                const double p = same_block ? p_in : p_out;
                if (uniform01(rng) < p) edges.emplace_back(i, j);
            }
        }
        if (!edges.empty()) return Graph::from_edges(n, std::move(edges));
    }
    throw EmptyGraphError();
}

}  // namespace qls
