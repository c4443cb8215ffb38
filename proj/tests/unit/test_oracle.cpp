#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "widthspan/distribution.hpp"
#include "widthspan/generators.hpp"
#include "widthspan/oracle.hpp"

using namespace widthspan;

namespace {

Graph random_connected(int n, int extra, std::mt19937& rng) {
    std::set<std::pair<int, int>> pairs;
    for (int v = 2; v <= n; ++v) {
        pairs.emplace(std::uniform_int_distribution<int>(1, v - 1)(rng), v);
    }
    for (int k = 0; k < extra; ++k) {
        int u = std::uniform_int_distribution<int>(1, n)(rng);
        int v = std::uniform_int_distribution<int>(1, n)(rng);
        if (u != v) {
            pairs.emplace(std::min(u, v), std::max(u, v));
        }
    }
    return oracle::make_graph(n, {pairs.begin(), pairs.end()});
}

}  // namespace

TEST_CASE("matrix-tree counts") {
    for (int n = 2; n <= 8; ++n) {
        BigInt expect = 1;
        for (int k = 0; k < n - 2; ++k) {
            expect *= n;
        }
        CHECK(spanning_tree_count(oracle::complete(n)) == expect);
        CHECK(spanning_tree_count(oracle::path(n)) == 1);
    }
    for (int n = 3; n <= 10; ++n) {
        CHECK(spanning_tree_count(oracle::cycle(n)) == n);
    }
    const auto grid = generate({.family = Family::grid, .n = 6, .grid_width = 3});
    CHECK(spanning_tree_count(grid.graph) == 15);
    // K_30 has 30^28 trees, far past 64 bits
    BigInt big = 1;
    for (int k = 0; k < 28; ++k) {
        big *= 30;
    }
    CHECK(spanning_tree_count(oracle::complete(30)) == big);
}

TEST_CASE("examples") {
    const auto c4 = enumerate_min_stretch(oracle::cycle(4));
    CHECK(c4.spanning_tree_count == 4);
    CHECK(c4.min_total_stretch == 6);
    CHECK(c4.argmin_trees.size() == 4);

    const auto k4 = enumerate_min_stretch(oracle::complete(4));
    CHECK(k4.spanning_tree_count == 16);
    CHECK(k4.matrix_tree_count == 16);
    CHECK(k4.min_total_stretch == 9);
    // the four stars
    CHECK(k4.argmin_trees.size() == 4);
    CHECK(k4.argmin_trees.front() == std::vector<EdgeId>{0, 1, 2});

    for (int n : {1, 2, 5, 9}) {
        const auto p = enumerate_min_stretch(oracle::path(n));
        CHECK(p.spanning_tree_count == 1);
        CHECK(p.min_total_stretch == n - 1);
    }
}

TEST_CASE("enumeration agrees with subset brute force") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + trial % 6;
        const auto g = random_connected(n, trial % 7, rng);
        const auto brute = oracle::brute_min_stretch(g);
        const auto result = enumerate_min_stretch(g, 1'000'000, true);
        CHECK(result.spanning_tree_count == brute.trees);
        CHECK(result.matrix_tree_count == brute.trees);
        CHECK(result.min_total_stretch == brute.best);
        CHECK(result.argmin_trees.size() == brute.argmin);
        CHECK(result.histogram == brute.histogram);
        CHECK(std::is_sorted(result.argmin_trees.begin(), result.argmin_trees.end()));
        for (const auto& tree : result.argmin_trees) {
            CHECK(oracle::total_stretch(g, tree) == brute.best);
        }
    }
}

TEST_CASE("cap is enforced before enumeration") {
    try {
        enumerate_min_stretch(oracle::complete(6), 1000);
        FAIL("cap ignored");
    } catch (const CapExceeded& e) {
        CHECK(e.count() == 1296);
    }
    CHECK_NOTHROW(enumerate_min_stretch(oracle::complete(6), 1296));
    CHECK(enumerate_min_stretch(oracle::complete(4)).histogram.empty());
}

TEST_CASE("expected stretch oracle") {
    CHECK(expected_stretch_oracle(oracle::path(2), LinearArrangement::identity(2)) == std::vector<Rational>{1});
    for (const auto& x : expected_stretch_oracle(oracle::path(4), LinearArrangement::identity(4))) {
        CHECK(x == Rational(1));
    }
    const auto c4 = oracle::cycle(4);
    const auto order = LinearArrangement::from_order({1, 2, 4, 3});
    CHECK(expected_stretch_oracle(c4, order) == explicit_distribution(c4, order).per_edge_expected);

    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto gen = generate({.family = Family::random_bandwidth, .n = 8 + static_cast<int>(seed) * 3,
                                   .seed = seed, .bandwidth = 2 + static_cast<int>(seed % 3), .probability = 0.5});
        CHECK(expected_stretch_oracle(gen.graph, gen.arrangement) ==
              explicit_distribution(gen.graph, gen.arrangement).per_edge_expected);
    }
}
