#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "qls/errors.hpp"
#include "qls/graph.hpp"
#include "qls/modularity.hpp"
#include "qls/rng.hpp"
#include "qls/solver_registry.hpp"
#include "qls/subproblem.hpp"

namespace qls {

// Improvements at or below this are treated as ties and do not reset the
// stall counter.
constexpr double kImprovementEpsilon = 1e-12;

struct QlsConfig {
    int subset_size = 16;
    int no_improve_limit = 3;
    int max_iterations = 1000;
    std::string solver_name = "exact";
    SolverOptions solver;
    std::uint64_t seed = 0;
};

/// One seeded trajectory of the local search. `modularity_trajectory[0]` is
/// the initial guess's modularity; entry i+1 is the value after iteration i's
/// acceptance decision, so the sequence is non-decreasing and has
/// iterations + 1 entries.
struct RunRecord {
    std::uint64_t seed = 0;
    std::vector<double> modularity_trajectory;
    std::vector<bool> accepted;
    std::vector<std::vector<int>> subsets;
    SpinAssignment final_assignment;
    int iterations = 0;
    std::string converged_reason;  // "no_improve" | "max_iter"
    std::uint64_t total_evaluations = 0;
    int accepted_moves = 0;
    int effective_subset_size = 0;
    double final_modularity = 0.0;
    double wall_time_s = 0.0;
};

/// Uniform random spins, one 64-bit draw per vertex from mt19937_64(seed).
/// Depends only on (n, seed) so every solver sees the same starting point.
inline SpinAssignment initial_guess(const Graph& g, std::uint64_t seed) {
    SpinAssignment s;
    s.spins.resize(static_cast<std::size_t>(g.vertex_count()));
    std::mt19937_64 rng(seed);
    for (auto& spin : s.spins) spin = random_spin(rng);
    return s;
}

/// The min(k, n) vertices with the largest flip gain; ties go to the smaller
/// vertex id. Returned ascending.
inline std::vector<int> populate_subset(const GainTable& t, int k) {
    const int n = static_cast<int>(t.gain.size());
    if (k < 1) throw ConfigInvalidError("subset size must be >= 1");
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    const int take = std::min(k, n);
    std::partial_sort(order.begin(), order.begin() + take, order.end(), [&](int a, int b) {
        const double ga = t.gain[static_cast<std::size_t>(a)];
        const double gb = t.gain[static_cast<std::size_t>(b)];
        if (ga != gb) return ga > gb;
        return a < b;
    });
    order.resize(static_cast<std::size_t>(take));
    std::sort(order.begin(), order.end());
    return order;
}

/// The outer loop: pick the highest-gain subset, freeze the boundary, solve
/// the Ising subproblem with the configured backend, accept on strict
/// modularity improvement, stop after no_improve_limit consecutive
/// non-improving iterations (or the safety cap).
inline RunRecord run_qls(const Graph& g, const QlsConfig& cfg) {
    if (cfg.subset_size < 1 || cfg.no_improve_limit < 1 || cfg.max_iterations < 1)
        throw ConfigInvalidError("subset_size, no_improve_limit, max_iterations must be >= 1");
    if (std::find(solver_names().begin(), solver_names().end(), cfg.solver_name) == solver_names().end())
        throw ConfigInvalidError("unknown solver '" + cfg.solver_name + "' (valid: " + solver_names_joined() + ")");

    const auto start = std::chrono::steady_clock::now();

    RunRecord record;
    record.seed = cfg.seed;
    record.effective_subset_size = std::min(cfg.subset_size, g.vertex_count());

    SpinAssignment s = initial_guess(g, cfg.seed);
    GainTable table = init_gains(g, s);
    record.modularity_trajectory.push_back(table.current_modularity);

    int stall = 0;
    int iteration = 0;
    while (stall < cfg.no_improve_limit && iteration < cfg.max_iterations) {
        std::vector<int> subset = populate_subset(table, record.effective_subset_size);
        const Subproblem sp = build_subproblem(g, s, subset);
        const IsingModel model = to_ising(sp);
        const SolverResult solved =
            solve_subproblem(cfg.solver_name, model, derive_seed(cfg.seed, static_cast<std::uint64_t>(iteration)),
                             cfg.solver);
        record.total_evaluations += solved.evaluations;

        const double q_current = sp.value(sp.local_spins(s));
        const double q_candidate = sp.value(solved.spins);
        const double delta_h = sp.scale * (q_candidate - q_current);

        const bool improve = delta_h > kImprovementEpsilon;
        if (improve) {
            apply_move(g, s, table, sp.subset, solved.spins);
            stall = 0;
            ++record.accepted_moves;
        } else {
            ++stall;
        }
        record.accepted.push_back(improve);
        record.subsets.push_back(std::move(subset));
        record.modularity_trajectory.push_back(table.current_modularity);
        ++iteration;
    }

    record.iterations = iteration;
    record.converged_reason = stall >= cfg.no_improve_limit ? "no_improve" : "max_iter";
    record.final_assignment = std::move(s);
    record.final_modularity = table.current_modularity;
    record.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return record;
}

}  // namespace qls
