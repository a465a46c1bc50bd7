#pragma once

#include <bit>
#include <cstdint>
#include <limits>
#include <vector>

#include "qls/errors.hpp"
#include "qls/parallel.hpp"
#include "qls/solver_result.hpp"
#include "qls/subproblem.hpp"

namespace qls {

namespace detail {

// Running minimum with ties resolved to the smallest bit pattern, which
// equals first-hit order under counting enumeration.
struct EnumBest {
    double energy = std::numeric_limits<double>::infinity();
    std::uint64_t pattern = 0;

    void offer(double e, std::uint64_t z) {
        if (e < energy || (e == energy && z < pattern)) {
            energy = e;
            pattern = z;
        }
    }
};

// Energy of bit pattern z under dense couplings (bit b -> spin 1-2b).
inline double pattern_energy(const IsingModel& m, const std::vector<double>& dense, std::uint64_t z) {
    const int n = m.n_vars;
    double total = m.offset;
    for (int p = 0; p < n; ++p) {
        const double sp = (z >> p) & 1ULL ? -1.0 : 1.0;
        total += m.h[static_cast<std::size_t>(p)] * sp;
        const double* row = dense.data() + static_cast<std::size_t>(p) * n;
        for (int q = p + 1; q < n; ++q) {
            const double sq = (z >> q) & 1ULL ? -1.0 : 1.0;
            total += row[q] * sp * sq;
        }
    }
    return total;
}

// Plain Gray-code sweep over the counting range [i0, i1). Local fields make
// each step O(n); the energy is re-anchored from scratch periodically so
// accumulated rounding stays far below comparison tolerances.
inline EnumBest enumerate_range(const IsingModel& m, const std::vector<double>& dense,
                                std::uint64_t i0, std::uint64_t i1) {
    const int n = m.n_vars;
    EnumBest best;

    std::vector<double> spin(static_cast<std::size_t>(n));
    std::vector<double> field(static_cast<std::size_t>(n));
    std::uint64_t z = i0 ^ (i0 >> 1);  // Gray code of the counting index
    double e = 0.0;

    auto anchor = [&] {
        for (int p = 0; p < n; ++p) spin[static_cast<std::size_t>(p)] = (z >> p) & 1ULL ? -1.0 : 1.0;
        e = pattern_energy(m, dense, z);
        for (int p = 0; p < n; ++p) {
            double f = m.h[static_cast<std::size_t>(p)];
            const double* row = dense.data() + static_cast<std::size_t>(p) * n;
            for (int q = 0; q < n; ++q) f += row[q] * spin[static_cast<std::size_t>(q)];
            field[static_cast<std::size_t>(p)] = f;
        }
    };

    anchor();
    best.offer(e, z);
    constexpr std::uint64_t kReanchor = 1ULL << 16;
    for (std::uint64_t i = i0 + 1; i < i1; ++i) {
        const int b = std::countr_zero(i);
        const std::size_t bu = static_cast<std::size_t>(b);
        z ^= 1ULL << b;
        if (((i - i0) & (kReanchor - 1)) == 0) {
            anchor();
        } else {
            e += -2.0 * spin[bu] * field[bu];
            spin[bu] = -spin[bu];
            const double c = 2.0 * spin[bu];
            const double* row = dense.data() + bu * static_cast<std::size_t>(n);
            for (int q = 0; q < n; ++q) field[static_cast<std::size_t>(q)] += c * row[q];
        }
        best.offer(e, z);
    }
    return best;
}

constexpr int kTableLowBits = 16;

// Energies of the submodel over variables 0..15, indexed by bit pattern.
inline std::vector<double> build_low_energy_table(const IsingModel& m) {
    constexpr int kLow = kTableLowBits;
    IsingModel low;
    low.n_vars = kLow;
    low.h.assign(m.h.begin(), m.h.begin() + kLow);
    low.coupling.resize(pair_count(kLow));
    for (int p = 0; p < kLow; ++p)
        for (int q = p + 1; q < kLow; ++q)
            low.coupling[pair_index(kLow, p, q)] = m.coupling[pair_index(m.n_vars, p, q)];
    const std::vector<double> low_dense = low.dense_coupling();

    std::vector<double> table(1ULL << kLow);
    std::vector<double> spin(kLow, 1.0);
    std::vector<double> field(kLow);
    std::uint64_t z = 0;
    double e = low.offset;
    for (int p = 0; p < kLow; ++p) {
        double f = low.h[static_cast<std::size_t>(p)];
        const double* row = low_dense.data() + static_cast<std::size_t>(p) * kLow;
        for (int q = 0; q < kLow; ++q) f += row[q];
        field[static_cast<std::size_t>(p)] = f;
        e += 0.5 * (f + low.h[static_cast<std::size_t>(p)]);
    }
    table[0] = e;
    for (std::uint64_t i = 1; i < (1ULL << kLow); ++i) {
        const int b = std::countr_zero(i);
        const std::size_t bu = static_cast<std::size_t>(b);
        z ^= 1ULL << b;
        if ((i & 0xFFULL) == 0) {
            e = pattern_energy(low, low_dense, z);
            for (int p = 0; p < kLow; ++p) {
                spin[static_cast<std::size_t>(p)] = (z >> p) & 1ULL ? -1.0 : 1.0;
                double f = low.h[static_cast<std::size_t>(p)];
                const double* row = low_dense.data() + static_cast<std::size_t>(p) * kLow;
                for (int q = 0; q < kLow; ++q) f += row[q] * spin[static_cast<std::size_t>(q)];
                field[static_cast<std::size_t>(p)] = f;
            }
        } else {
            e += -2.0 * spin[bu] * field[bu];
            spin[bu] = -spin[bu];
            const double c = 2.0 * spin[bu];
            const double* row = low_dense.data() + bu * kLow;
            for (int q = 0; q < kLow; ++q) field[static_cast<std::size_t>(q)] += c * row[q];
        }
        table[z] = e;
    }
    return table;
}

// Two-level enumeration for n > 20: per high configuration, cross couplings
// enter through four nibble partial-sum tables, so each of the 2^16 low
// patterns costs three adds and a min. Indices are recovered by a scalar
// rescan only when a block can improve the running best.
inline EnumBest enumerate_tabled(const IsingModel& m, const std::vector<double>& dense,
                                 const std::vector<double>& low_energy,
                                 std::uint64_t hi0, std::uint64_t hi1) {
    constexpr int kLow = kTableLowBits;
    const int n = m.n_vars;
    const int n_high = n - kLow;

    EnumBest best;
    std::vector<double> hspin(static_cast<std::size_t>(n_high));
    double cross[kLow];  // per low variable: sum over high spins of J
    double e_high = 0.0;

    auto anchor_high = [&](std::uint64_t zh) {
        for (int b = 0; b < n_high; ++b) hspin[static_cast<std::size_t>(b)] = (zh >> b) & 1ULL ? -1.0 : 1.0;
        e_high = m.offset;
        for (int b = 0; b < n_high; ++b) {
            e_high += m.h[static_cast<std::size_t>(kLow + b)] * hspin[static_cast<std::size_t>(b)];
            const double* row = dense.data() + static_cast<std::size_t>(kLow + b) * n;
            for (int c = b + 1; c < n_high; ++c)
                e_high += row[kLow + c] * hspin[static_cast<std::size_t>(b)] * hspin[static_cast<std::size_t>(c)];
        }
        for (int i = 0; i < kLow; ++i) {
            double gsum = 0.0;
            const double* row = dense.data() + static_cast<std::size_t>(i) * n;
            for (int b = 0; b < n_high; ++b) gsum += row[kLow + b] * hspin[static_cast<std::size_t>(b)];
            cross[i] = gsum;
        }
    };

    std::uint64_t zh = hi0 ^ (hi0 >> 1);
    anchor_high(zh);

    double t0[16], t1[16], t2[16], t3[16];
    auto build_nibble = [&](double* t, int base) {
        const double g0 = cross[base];
        const double g1 = cross[base + 1];
        const double g2 = cross[base + 2];
        const double g3 = cross[base + 3];
        for (int v = 0; v < 16; ++v)
            t[v] = (v & 1 ? -g0 : g0) + (v & 2 ? -g1 : g1) + (v & 4 ? -g2 : g2) + (v & 8 ? -g3 : g3);
    };

    const double* le = low_energy.data();
    for (std::uint64_t ih = hi0; ih < hi1; ++ih) {
        if (ih != hi0) {
            const int b = std::countr_zero(ih);
            zh ^= 1ULL << b;
            if (((ih - hi0) & 0xFFFULL) == 0) {
                anchor_high(zh);
            } else {
                const std::size_t bu = static_cast<std::size_t>(b);
                double f = m.h[static_cast<std::size_t>(kLow + b)];
                const double* row = dense.data() + static_cast<std::size_t>(kLow + b) * n;
                for (int c = 0; c < n_high; ++c) f += row[kLow + c] * hspin[static_cast<std::size_t>(c)];
                e_high += -2.0 * hspin[bu] * f;
                hspin[bu] = -hspin[bu];
                const double cc = 2.0 * hspin[bu];
                for (int i = 0; i < kLow; ++i) cross[i] += cc * row[i];
            }
        }

        build_nibble(t0, 0);
        build_nibble(t1, 4);
        build_nibble(t2, 8);
        build_nibble(t3, 12);

        double block_min = std::numeric_limits<double>::infinity();
        for (int hi_nib = 0; hi_nib < 4096; ++hi_nib) {
            const double base = e_high + t1[hi_nib & 15] + t2[(hi_nib >> 4) & 15] + t3[(hi_nib >> 8) & 15];
            const double* lep = le + (static_cast<std::size_t>(hi_nib) << 4);
            double lane[16];
            for (int v = 0; v < 16; ++v) lane[v] = (base + t0[v]) + lep[v];
            for (int v = 0; v < 16; ++v) block_min = lane[v] < block_min ? lane[v] : block_min;
        }

        const std::uint64_t z_base = zh << kLow;
        if (block_min < best.energy || (block_min == best.energy && z_base < best.pattern)) {
            // Operation order matches the block pass exactly, so the first
            // e == block_min hit is the block's smallest minimizing pattern.
            double found = std::numeric_limits<double>::infinity();
            std::uint64_t found_z = 0;
            bool hit = false;
            for (std::uint64_t zl = 0; zl < (1ULL << kLow); ++zl) {
                const int hi_nib = static_cast<int>(zl >> 4);
                const double base = e_high + t1[hi_nib & 15] + t2[(hi_nib >> 4) & 15] + t3[(hi_nib >> 8) & 15];
                const double e = (base + t0[zl & 15]) + le[zl];
                if (e == block_min) {
                    best.offer(e, z_base | zl);
                    hit = true;
                    break;
                }
                if (e < found) {
                    found = e;
                    found_z = zl;
                }
            }
            if (!hit) best.offer(found, z_base | found_z);
        }
    }
    return best;
}

}  // namespace detail

/// Exhaustive ground-state search, up to 32 variables. Enumeration order is
/// the bit pattern counting from 0 with variable 0 in the least significant
/// bit; ties keep the earliest pattern. Work is split into fixed chunks so
/// the result does not depend on the thread count.
inline SolverResult solve_exact(const IsingModel& m, int threads = 0) {
    if (m.n_vars < 1 || m.n_vars > 32) throw TooManyVariablesError(m.n_vars);
    const int n = m.n_vars;
    const std::vector<double> dense = m.dense_coupling();

    constexpr int kTableThreshold = 20;
    const bool tabled = n > kTableThreshold;
    std::vector<double> low_energy;
    if (tabled) low_energy = detail::build_low_energy_table(m);

    const std::uint64_t total = tabled ? (1ULL << (n - detail::kTableLowBits)) : (1ULL << n);
    const int n_chunks = total >= (1ULL << 14) ? 64 : 1;
    const std::uint64_t chunk_size = total / static_cast<std::uint64_t>(n_chunks);

    std::vector<detail::EnumBest> chunk_best(static_cast<std::size_t>(n_chunks));
    parallel_chunks(n_chunks, threads, [&](int c) {
        const std::uint64_t lo = chunk_size * static_cast<std::uint64_t>(c);
        const std::uint64_t hi = (c == n_chunks - 1) ? total : lo + chunk_size;
        chunk_best[static_cast<std::size_t>(c)] =
            tabled ? detail::enumerate_tabled(m, dense, low_energy, lo, hi)
                   : detail::enumerate_range(m, dense, lo, hi);
    });

    detail::EnumBest best;
    for (const auto& cb : chunk_best) best.offer(cb.energy, cb.pattern);

    SolverResult result;
    result.spins = spins_from_bits(best.pattern, n);
    result.energy = energy(m, result.spins);  // exact, not the accumulated value
    result.evaluations = 1ULL << n;
    result.solver_name = "exact";
    return result;
}

}  // namespace qls
