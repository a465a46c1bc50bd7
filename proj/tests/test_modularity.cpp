#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "qls/modularity.hpp"
#include "test_oracles.hpp"

using namespace qls;
using Catch::Matchers::WithinAbs;

namespace {
SpinAssignment assignment(std::vector<int> spins) { return SpinAssignment{std::move(spins)}; }
}  // namespace

TEST_CASE("modularity matches the hand-checked barbell values") {
    const Graph g = oracle::barbell();
    CHECK_THAT(modularity(g, assignment({-1, -1, -1, 1, 1, 1})), WithinAbs(5.0 / 14.0, 1e-12));
    CHECK_THAT(modularity(g, assignment({-1, -1, 1, 1, 1, 1})), WithinAbs(6.0 / 49.0, 1e-12));
    CHECK(modularity(g, assignment({1, 1, 1, 1, 1, 1})) == 0.0);
    CHECK(modularity(g, assignment({-1, -1, -1, -1, -1, -1})) == 0.0);
}

TEST_CASE("the barbell optimum is the natural split") {
    const auto [best, spins] = oracle::best_modularity(oracle::barbell());
    CHECK_THAT(best, WithinAbs(5.0 / 14.0, 1e-12));
    // counting order reaches the all-plus-on-{3,4,5} labeling first
    CHECK(std::abs(spins[0] + spins[1] + spins[2]) == 3);
    CHECK(spins[3] == -spins[0]);
}

TEST_CASE("single-edge graph") {
    const Graph g = Graph::from_edges(2, {{0, 1}});
    const SpinAssignment split = assignment({-1, 1});
    CHECK_THAT(modularity(g, split), WithinAbs(-0.5, 1e-12));
    const GainTable t = init_gains(g, split);
    CHECK_THAT(t.gain[0], WithinAbs(0.5, 1e-12));
    CHECK_THAT(t.gain[1], WithinAbs(0.5, 1e-12));
}

TEST_CASE("modularity validates the assignment") {
    const Graph g = oracle::barbell();
    CHECK_THROWS_AS(modularity(g, assignment({-1, 1})), LengthMismatchError);
    CHECK_THROWS_AS(modularity(g, assignment({-1, 1, 0, 1, 1, 1})), LengthMismatchError);
}

TEST_CASE("flip gains on the barbell") {
    const Graph g = oracle::barbell();
    const SpinAssignment optimum = assignment({-1, -1, -1, 1, 1, 1});
    CHECK_THAT(flip_gain(g, optimum, 2), WithinAbs(-23.0 / 98.0, 1e-12));
    const SpinAssignment uniform = assignment({-1, -1, -1, -1, -1, -1});
    CHECK_THAT(flip_gain(g, uniform, 0), WithinAbs(-2.0 / 49.0, 1e-12));
}

TEST_CASE("isolated vertex has zero gain") {
    const Graph g = Graph::from_edges(3, {{0, 1}});
    CHECK(flip_gain(g, assignment({-1, 1, 1}), 2) == 0.0);
}

TEST_CASE("init_gains on the uniform barbell assignment") {
    const Graph g = oracle::barbell();
    const GainTable t = init_gains(g, assignment({-1, -1, -1, -1, -1, -1}));
    CHECK(t.current_modularity == 0.0);
    const double expected[] = {-2.0 / 49, -2.0 / 49, -9.0 / 98, -9.0 / 98, -2.0 / 49, -2.0 / 49};
    for (int v = 0; v < 6; ++v) CHECK_THAT(t.gain[static_cast<std::size_t>(v)], WithinAbs(expected[v], 1e-12));
}

TEST_CASE("gain equals the modularity difference of the flipped assignment") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const Graph g = oracle::gnp(3 + trial % 12, 0.4, 100 + static_cast<std::uint64_t>(trial));
        SpinAssignment s{oracle::random_spins(g.vertex_count(), rng)};
        const GainTable t = init_gains(g, s);
        for (int v = 0; v < g.vertex_count(); ++v) {
            SpinAssignment flipped = s;
            flipped[v] = -flipped[v];
            CHECK_THAT(t.gain[static_cast<std::size_t>(v)],
                       WithinAbs(modularity(g, flipped) - modularity(g, s), 1e-9));
        }
    }
}

TEST_CASE("apply_move barbell examples") {
    const Graph g = oracle::barbell();

    SECTION("identity move changes nothing") {
        SpinAssignment s = assignment({-1, -1, -1, -1, -1, -1});
        GainTable t = init_gains(g, s);
        const double delta = apply_move(g, s, t, {2, 3}, {-1, -1});
        CHECK(delta == 0.0);
        CHECK(t.current_modularity == 0.0);
    }
    SECTION("flipping one triangle reaches the optimum") {
        SpinAssignment s = assignment({-1, -1, -1, -1, -1, -1});
        GainTable t = init_gains(g, s);
        apply_move(g, s, t, {3, 4, 5}, {1, 1, 1});
        CHECK_THAT(t.current_modularity, WithinAbs(5.0 / 14.0, 1e-12));
    }
    SECTION("flipping the bridge pair") {
        SpinAssignment s = assignment({-1, -1, -1, -1, -1, -1});
        GainTable t = init_gains(g, s);
        apply_move(g, s, t, {2, 3}, {1, 1});
        CHECK_THAT(t.current_modularity, WithinAbs(-4.0 / 49.0, 1e-12));
    }
}

TEST_CASE("apply_move validates its inputs") {
    const Graph g = oracle::barbell();
    SpinAssignment s = assignment({-1, -1, -1, -1, -1, -1});
    GainTable t = init_gains(g, s);
    CHECK_THROWS_AS(apply_move(g, s, t, {2, 9}, {1, 1}), SubsetOutOfRangeError);
    CHECK_THROWS_AS(apply_move(g, s, t, {2, 2}, {1, 1}), DuplicateVertexError);
    CHECK_THROWS_AS(apply_move(g, s, t, {2, 3}, {1}), LengthMismatchError);
}

TEST_CASE("incremental tables match recomputation from scratch") {
    std::mt19937_64 rng(17);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const Graph g = oracle::gnp(4 + trial % 14, 0.35, 500 + static_cast<std::uint64_t>(trial));
        const int n = g.vertex_count();
        SpinAssignment s{oracle::random_spins(n, rng)};
        GainTable t = init_gains(g, s);

        const int subset_size = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
        std::vector<int> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<int> subset(order.begin(), order.begin() + subset_size);
        std::sort(subset.begin(), subset.end());
        std::vector<int> new_spins(subset.size());
        for (auto& sp : new_spins) sp = random_spin(rng);

        apply_move(g, s, t, subset, new_spins);
        const GainTable fresh = init_gains(g, s);
        CHECK_THAT(t.current_modularity, WithinAbs(fresh.current_modularity, 1e-9));
        for (int v = 0; v < n; ++v)
            CHECK_THAT(t.gain[static_cast<std::size_t>(v)], WithinAbs(fresh.gain[static_cast<std::size_t>(v)], 1e-9));
        ++checked;
    }
    CHECK(checked == 200);
}

TEST_CASE("modularity is bounded and symmetric under global flips") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const Graph g = oracle::gnp(3 + trial % 10, 0.4, 900 + static_cast<std::uint64_t>(trial));
        SpinAssignment s{oracle::random_spins(g.vertex_count(), rng)};
        SpinAssignment negated = s;
        for (auto& sp : negated.spins) sp = -sp;
        const double h = modularity(g, s);
        CHECK(std::abs(h) <= 1.0);
        CHECK(h == modularity(g, negated));
    }
}
