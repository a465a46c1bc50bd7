#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qls/anneal_solver.hpp"
#include "qls/errors.hpp"
#include "qls/exact_solver.hpp"
#include "qls/solver_result.hpp"
#include "qls/variational_solver.hpp"

namespace qls {

/// Backend knobs shared by the CLI and the orchestrator. `shots` is the
/// best-of-N count for the annealer and the measurement count for the
/// variational solver; depth and opt_budget apply to the variational solver
/// only. threads = 0 lets solvers use the global budget.
struct SolverOptions {
    int shots = 10000;
    int depth = 1;
    int opt_budget = 100;
    int threads = 0;
};

inline const std::vector<std::string>& solver_names() {
    static const std::vector<std::string> names{"exact", "anneal", "variational"};
    return names;
}

inline std::string solver_names_joined() {
    std::string out;
    for (const auto& name : solver_names()) {
        if (!out.empty()) out += ", ";
        out += name;
    }
    return out;
}

/// Stateless dispatch: solvers are pure functions of (model, seed, options),
/// so backends are interchangeable inside the local search.
inline SolverResult solve_subproblem(const std::string& solver_name, const IsingModel& m,
                                     std::uint64_t seed, const SolverOptions& opts = {}) {
    if (solver_name == "exact") return solve_exact(m, opts.threads);
    if (solver_name == "anneal") {
        AnnealSchedule sched = default_schedule(m);
        sched.samples = opts.shots;
        return solve_anneal(m, sched, seed, opts.threads);
    }
    if (solver_name == "variational") {
        VariationalOptions vopts;
        vopts.depth = opts.depth;
        vopts.budget = opts.opt_budget;
        vopts.n_samples = opts.shots;
        return solve_variational(m, vopts, seed);
    }
    throw ConfigInvalidError("unknown solver '" + solver_name + "' (valid: " + solver_names_joined() + ")");
}

}  // namespace qls
