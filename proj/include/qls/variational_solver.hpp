#pragma once

#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include "qls/nelder_mead.hpp"
#include "qls/rng.hpp"
#include "qls/solver_result.hpp"
#include "qls/statevector.hpp"
#include "qls/subproblem.hpp"

namespace qls {

struct VariationalOptions {
    int depth = 1;
    int budget = 100;     // objective evaluations for the parameter search
    int n_samples = 10000;
};

// theta0 stream is derive_seed(seed, 0), measurement stream derive_seed(seed, 1).
inline AnsatzParams random_initial_params(int n_qubits, int depth, std::uint64_t seed) {
    AnsatzParams params;
    params.depth = depth;
    const std::size_t count = AnsatzParams::param_count(n_qubits, depth);
    params.theta.resize(count);
    std::mt19937_64 rng(seed);
    constexpr double pi = 3.14159265358979323846;
    for (auto& a : params.theta) a = (2.0 * uniform01(rng) - 1.0) * pi;
    return params;
}

/// Variational pipeline: random angles, Nelder-Mead on the state's energy
/// expectation, then measure the optimized state and keep the lowest-energy
/// bitstring seen. Reported energy is exactly the minimum over the sampled
/// bitstrings; evaluations counts optimizer calls.
inline SolverResult solve_variational(const IsingModel& m, const VariationalOptions& opts,
                                      std::uint64_t seed) {
    if (m.n_vars < 1 || m.n_vars > kMaxQubits) throw TooManyQubitsError(m.n_vars);
    if (opts.depth < 0) throw ConfigInvalidError("ansatz depth must be >= 0");
    if (opts.n_samples < 1) throw ConfigInvalidError("shots must be >= 1");
    const int n = m.n_vars;

    const AnsatzParams theta0 = random_initial_params(n, opts.depth, derive_seed(seed, 0));
    auto objective = [&](const std::vector<double>& theta) {
        AnsatzParams p{theta, opts.depth};
        return expectation(prepare_state(n, p), m);
    };
    const OptimizeResult opt = nelder_mead_minimize(objective, theta0.theta, opts.budget);

    const StateVector optimized = prepare_state(n, AnsatzParams{opt.best_point, opts.depth});
    const std::vector<std::uint64_t> draws = sample(optimized, opts.n_samples, derive_seed(seed, 1));

    std::unordered_map<std::uint64_t, double> energy_of;
    double best_energy = std::numeric_limits<double>::infinity();
    std::uint64_t best_z = 0;
    bool first = true;
    for (std::uint64_t z : draws) {
        auto it = energy_of.find(z);
        if (it == energy_of.end()) it = energy_of.emplace(z, energy(m, spins_from_bits(z, n))).first;
        if (first || it->second < best_energy) {
            first = false;
            best_energy = it->second;
            best_z = z;
        }
    }

    SolverResult result;
    result.spins = spins_from_bits(best_z, n);
    result.energy = best_energy;
    result.evaluations = static_cast<std::uint64_t>(opt.evaluations);
    result.solver_name = "variational";
    return result;
}

}  // namespace qls
