#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "qls/errors.hpp"
#include "qls/parallel.hpp"
#include "qls/rng.hpp"
#include "qls/solver_result.hpp"
#include "qls/subproblem.hpp"

namespace qls {

/// Best-of-N restart schedule: each sample runs `sweeps` Metropolis passes
/// under a geometric temperature ladder from t_initial down to t_final.
struct AnnealSchedule {
    int sweeps = 1000;
    double t_initial = 2.0;
    double t_final = 0.01;
    int samples = 10000;
};

inline void validate(const AnnealSchedule& s) {
    if (!(s.t_final > 0.0) || !(s.t_initial >= s.t_final) || s.sweeps < 1 || s.samples < 1)
        throw InvalidScheduleError();
}

/// 1000 sweeps, 10000 samples, cooling from twice the largest coefficient
/// magnitude down to 0.01.
inline AnnealSchedule default_schedule(const IsingModel& m) {
    AnnealSchedule s;
    s.t_initial = std::max(2.0 * m.max_abs_coefficient(), 2.0 * s.t_final);
    return s;
}

/// Simulated annealing: independent seeded restarts, single-spin Metropolis
/// updates in index order, geometric cooling. Restart r draws from
/// mt19937_64(derive_seed(seed, r)), so the best-of-N result is identical
/// however the restarts are scheduled across threads.
inline SolverResult solve_anneal(const IsingModel& m, const AnnealSchedule& sched,
                                 std::uint64_t seed, int threads = 0) {
    validate(sched);
    if (m.n_vars < 1) throw SolverError("model has no variables");
    const int n = m.n_vars;
    const std::vector<double> dense = m.dense_coupling();

    // One inverse-temperature ladder shared by all restarts.
    std::vector<double> inv_t(static_cast<std::size_t>(sched.sweeps));
    if (sched.sweeps == 1) {
        inv_t[0] = 1.0 / sched.t_initial;
    } else {
        const double log_ratio = std::log(sched.t_final / sched.t_initial) / (sched.sweeps - 1);
        for (int t = 0; t < sched.sweeps; ++t)
            inv_t[static_cast<std::size_t>(t)] = 1.0 / (sched.t_initial * std::exp(log_ratio * t));
    }

    struct RestartBest {
        double energy = std::numeric_limits<double>::infinity();
        std::vector<int> spins;
        std::uint64_t restart = 0;
    };

    const int n_chunks = sched.samples >= 256 ? 64 : 1;
    const int chunk_size = sched.samples / n_chunks;
    std::vector<RestartBest> chunk_best(static_cast<std::size_t>(n_chunks));

    parallel_chunks(n_chunks, threads, [&](int chunk) {
        const int r0 = chunk * chunk_size;
        const int r1 = (chunk == n_chunks - 1) ? sched.samples : r0 + chunk_size;
        RestartBest local;

        std::vector<double> spin(static_cast<std::size_t>(n));
        std::vector<double> field(static_cast<std::size_t>(n));
        std::vector<double> best_spin(static_cast<std::size_t>(n));

        for (int r = r0; r < r1; ++r) {
            std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
            for (int v = 0; v < n; ++v) spin[static_cast<std::size_t>(v)] = (rng() & 1ULL) ? 1.0 : -1.0;

            double e = m.offset;
            for (int p = 0; p < n; ++p) {
                double f = m.h[static_cast<std::size_t>(p)];
                const double* row = dense.data() + static_cast<std::size_t>(p) * n;
                for (int q = 0; q < n; ++q) f += row[q] * spin[static_cast<std::size_t>(q)];
                field[static_cast<std::size_t>(p)] = f;
                e += 0.5 * spin[static_cast<std::size_t>(p)] * (f + m.h[static_cast<std::size_t>(p)]);
            }

            double e_best = e;
            best_spin = spin;

            for (int t = 0; t < sched.sweeps; ++t) {
                const double beta = inv_t[static_cast<std::size_t>(t)];
                for (int b = 0; b < n; ++b) {
                    const std::size_t bu = static_cast<std::size_t>(b);
                    const double d_e = -2.0 * spin[bu] * field[bu];
                    bool accept = d_e <= 0.0;
                    if (!accept) {
                        const double u = uniform01(rng);
                        const double x = d_e * beta;
                        // exp(-x) below the 2^-53 resolution of u can never
                        // win the comparison; skip computing it.
                        accept = x < 40.0 && u < std::exp(-x);
                    }
                    if (accept) {
                        e += d_e;
                        spin[bu] = -spin[bu];
                        const double c = 2.0 * spin[bu];
                        const double* row = dense.data() + bu * static_cast<std::size_t>(n);
                        for (int q = 0; q < n; ++q) field[static_cast<std::size_t>(q)] += c * row[q];
                        if (e < e_best) {
                            e_best = e;
                            best_spin = spin;
                        }
                    }
                }
            }

            // Exact energy of the restart's best configuration; the tracked
            // value carries accumulated rounding.
            std::vector<int> ispins(static_cast<std::size_t>(n));
            for (int v = 0; v < n; ++v) ispins[static_cast<std::size_t>(v)] = best_spin[static_cast<std::size_t>(v)] > 0 ? 1 : -1;
            const double exact = energy(m, ispins);
            if (exact < local.energy ||
                (exact == local.energy && static_cast<std::uint64_t>(r) < local.restart)) {
                local.energy = exact;
                local.spins = std::move(ispins);
                local.restart = static_cast<std::uint64_t>(r);
            }
        }
        chunk_best[static_cast<std::size_t>(chunk)] = std::move(local);
    });

    const RestartBest* winner = &chunk_best[0];
    for (const auto& cb : chunk_best) {
        if (cb.spins.empty()) continue;
        if (winner->spins.empty() || cb.energy < winner->energy ||
            (cb.energy == winner->energy && cb.restart < winner->restart))
            winner = &cb;
    }

    SolverResult result;
    result.spins = winner->spins;
    result.energy = winner->energy;
    result.evaluations = static_cast<std::uint64_t>(sched.samples);
    result.solver_name = "anneal";
    return result;
}

}  // namespace qls
