#pragma once

#include <stdexcept>
#include <string>

namespace qls {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad input data (edge lists, generated graphs with no edges). CLI exit 3.
struct GraphDataError : Error {
    using Error::Error;
};

struct SelfLoopError : GraphDataError {
    explicit SelfLoopError(const std::string& label)
        : GraphDataError("self-loop on vertex '" + label + "'") {}
};

struct MalformedLineError : GraphDataError {
    explicit MalformedLineError(std::size_t lineno)
        : GraphDataError("malformed edge-list line " + std::to_string(lineno)), lineno(lineno) {}
    std::size_t lineno;
};

struct EmptyGraphError : GraphDataError {
    EmptyGraphError() : GraphDataError("graph has no edges") {}
};

// Bad user-facing configuration. CLI exit 2.
struct ConfigError : Error {
    using Error::Error;
};

struct InvalidProbabilityError : ConfigError {
    InvalidProbabilityError() : ConfigError("probabilities must satisfy 0 <= p_out <= p_in <= 1") {}
};

struct OddNError : ConfigError {
    OddNError() : ConfigError("planted partition needs an even vertex count") {}
};

struct ConfigInvalidError : ConfigError {
    using ConfigError::ConfigError;
};

// Subproblem-solver failures. CLI exit 4.
struct SolverError : Error {
    using Error::Error;
};

struct TooManyVariablesError : SolverError {
    explicit TooManyVariablesError(int n_vars)
        : SolverError("exact solver limited to 32 variables, got " + std::to_string(n_vars)) {}
};

struct InvalidScheduleError : SolverError {
    InvalidScheduleError() : SolverError("anneal schedule needs t_initial >= t_final > 0, sweeps >= 1, samples >= 1") {}
};

struct TooManyQubitsError : SolverError {
    explicit TooManyQubitsError(int n)
        : SolverError("statevector limited to 20 qubits, got " + std::to_string(n)) {}
};

struct BudgetTooSmallError : SolverError {
    BudgetTooSmallError(int budget, int dim)
        : SolverError("optimizer budget " + std::to_string(budget) + " below dim+1 = " + std::to_string(dim + 1)) {}
};

// API misuse; not reachable from the CLI surface.
struct LengthMismatchError : Error {
    using Error::Error;
};

struct SubsetOutOfRangeError : Error {
    using Error::Error;
};

struct EmptySubsetError : Error {
    EmptySubsetError() : Error("subset must be non-empty") {}
};

struct DuplicateVertexError : Error {
    explicit DuplicateVertexError(int v) : Error("duplicate subset vertex " + std::to_string(v)) {}
};

struct ParamLengthMismatchError : Error {
    ParamLengthMismatchError(std::size_t got, std::size_t want)
        : Error("ansatz parameter count " + std::to_string(got) + ", expected " + std::to_string(want)) {}
};

struct SizeMismatchError : Error {
    using Error::Error;
};

}  // namespace qls
