#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "qls/errors.hpp"
#include "qls/rng.hpp"
#include "qls/subproblem.hpp"

namespace qls {

constexpr int kMaxQubits = 20;  // 2^20 amplitudes = 16 MiB

/// Dense statevector over n qubits; basis index bit q is qubit q, with
/// qubit 0 in the least significant bit.
struct StateVector {
    std::vector<std::complex<double>> amplitudes;
    int n_qubits = 0;

    static StateVector zero_state(int n) {
        if (n < 1 || n > kMaxQubits) throw TooManyQubitsError(n);
        StateVector sv;
        sv.n_qubits = n;
        sv.amplitudes.assign(1ULL << n, {0.0, 0.0});
        sv.amplitudes[0] = 1.0;
        return sv;
    }

    double norm_squared() const {
        double total = 0.0;
        for (const auto& a : amplitudes) total += std::norm(a);
        return total;
    }
};

// Ry(theta) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]]
inline void apply_ry(StateVector& sv, int qubit, double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const std::uint64_t mask = 1ULL << qubit;
    const std::uint64_t size = sv.amplitudes.size();
    for (std::uint64_t z = 0; z < size; ++z) {
        if (z & mask) continue;
        auto& a0 = sv.amplitudes[z];
        auto& a1 = sv.amplitudes[z | mask];
        const auto new0 = c * a0 - s * a1;
        const auto new1 = s * a0 + c * a1;
        a0 = new0;
        a1 = new1;
    }
}

// Rz(theta) = diag(e^{-i t/2}, e^{+i t/2})
inline void apply_rz(StateVector& sv, int qubit, double theta) {
    const std::complex<double> phase0 = std::polar(1.0, -theta / 2.0);
    const std::complex<double> phase1 = std::polar(1.0, theta / 2.0);
    const std::uint64_t mask = 1ULL << qubit;
    const std::uint64_t size = sv.amplitudes.size();
    for (std::uint64_t z = 0; z < size; ++z) sv.amplitudes[z] *= (z & mask) ? phase1 : phase0;
}

inline void apply_cnot(StateVector& sv, int control, int target) {
    const std::uint64_t cmask = 1ULL << control;
    const std::uint64_t tmask = 1ULL << target;
    const std::uint64_t size = sv.amplitudes.size();
    for (std::uint64_t z = 0; z < size; ++z)
        if ((z & cmask) && !(z & tmask)) std::swap(sv.amplitudes[z], sv.amplitudes[z | tmask]);
}

/// Angles for the layered Ry/Rz ansatz: depth+1 rotation layers, each laid
/// out as (ry(q0), rz(q0), ry(q1), rz(q1), ...), with a linear CNOT chain
/// after each of the first `depth` layers.
struct AnsatzParams {
    std::vector<double> theta;
    int depth = 1;

    static std::size_t param_count(int n_qubits, int depth) {
        return 2u * static_cast<std::size_t>(n_qubits) * (static_cast<std::size_t>(depth) + 1);
    }
};

inline StateVector prepare_state(int n_qubits, const AnsatzParams& params) {
    const std::size_t want = AnsatzParams::param_count(n_qubits, params.depth);
    if (params.theta.size() != want) throw ParamLengthMismatchError(params.theta.size(), want);
    for (double a : params.theta)
        if (!std::isfinite(a)) throw Error("non-finite ansatz angle");

    StateVector sv = StateVector::zero_state(n_qubits);
    std::size_t next = 0;
    for (int layer = 0; layer <= params.depth; ++layer) {
        for (int q = 0; q < n_qubits; ++q) {
            apply_ry(sv, q, params.theta[next++]);
            apply_rz(sv, q, params.theta[next++]);
        }
        if (layer < params.depth)
            for (int q = 0; q + 1 < n_qubits; ++q) apply_cnot(sv, q, q + 1);
    }
    return sv;
}

/// <psi| H |psi> for the diagonal Ising Hamiltonian: sum over basis states of
/// |amp|^2 times the state's energy, the energies enumerated incrementally.
inline double expectation(const StateVector& sv, const IsingModel& m) {
    if (sv.n_qubits != m.n_vars)
        throw SizeMismatchError("state has " + std::to_string(sv.n_qubits) + " qubits, model " +
                                std::to_string(m.n_vars) + " variables");
    const int n = m.n_vars;
    const std::vector<double> dense = m.dense_coupling();

    std::vector<double> spin(static_cast<std::size_t>(n), 1.0);
    std::vector<double> field(static_cast<std::size_t>(n));
    double e = m.offset;
    for (int p = 0; p < n; ++p) {
        double f = m.h[static_cast<std::size_t>(p)];
        const double* row = dense.data() + static_cast<std::size_t>(p) * n;
        for (int q = 0; q < n; ++q) f += row[q];
        field[static_cast<std::size_t>(p)] = f;
        e += 0.5 * (f + m.h[static_cast<std::size_t>(p)]);
    }

    std::uint64_t z = 0;
    double total = std::norm(sv.amplitudes[0]) * e;
    const std::uint64_t size = sv.amplitudes.size();
    for (std::uint64_t i = 1; i < size; ++i) {
        const int b = std::countr_zero(i);
        const std::size_t bu = static_cast<std::size_t>(b);
        e += -2.0 * spin[bu] * field[bu];
        spin[bu] = -spin[bu];
        z ^= 1ULL << b;
        const double c = 2.0 * spin[bu];
        const double* row = dense.data() + bu * static_cast<std::size_t>(n);
        for (int q = 0; q < n; ++q) field[static_cast<std::size_t>(q)] += c * row[q];
        total += std::norm(sv.amplitudes[z]) * e;
    }
    return total;
}

/// `count` iid measurements in the computational basis; returns basis
/// indices in draw order, deterministic per seed.
inline std::vector<std::uint64_t> sample(const StateVector& sv, int count, std::uint64_t seed) {
    if (count < 1) throw Error("sample count must be >= 1");
    std::vector<double> cdf(sv.amplitudes.size());
    double acc = 0.0;
    for (std::size_t z = 0; z < sv.amplitudes.size(); ++z) {
        acc += std::norm(sv.amplitudes[z]);
        cdf[z] = acc;
    }

    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> draws(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double u = uniform01(rng) * acc;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        draws[static_cast<std::size_t>(i)] =
            static_cast<std::uint64_t>(it == cdf.end() ? cdf.size() - 1 : static_cast<std::size_t>(it - cdf.begin()));
    }
    return draws;
}

}  // namespace qls
