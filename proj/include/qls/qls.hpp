#pragma once

#include "qls/anneal_solver.hpp"
#include "qls/bench.hpp"
#include "qls/errors.hpp"
#include "qls/exact_solver.hpp"
#include "qls/graph.hpp"
#include "qls/local_search.hpp"
#include "qls/modularity.hpp"
#include "qls/nelder_mead.hpp"
#include "qls/parallel.hpp"
#include "qls/rng.hpp"
#include "qls/solver_registry.hpp"
#include "qls/solver_result.hpp"
#include "qls/statevector.hpp"
#include "qls/subproblem.hpp"
#include "qls/variational_solver.hpp"
