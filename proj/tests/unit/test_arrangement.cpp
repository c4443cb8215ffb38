#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <tuple>

#include "oracles.hpp"
#include "widthspan/arrangement.hpp"
#include "widthspan/error.hpp"
#include "widthspan/generators.hpp"

using namespace widthspan;

namespace {

const LinearArrangement c4_order = LinearArrangement::from_order({1, 2, 4, 3});

}  // namespace

TEST_CASE("width examples") {
    const auto p4 = oracle::path(4);
    const auto w_path = widths(p4, LinearArrangement::identity(4));
    CHECK(w_path.bandwidth == 1);
    CHECK(w_path.cutwidth == 1);

    const auto c4 = oracle::cycle(4);
    const auto w_cycle = widths(c4, c4_order);
    const auto expect = oracle::widths(c4, {1, 2, 4, 3});
    CHECK(w_cycle.bandwidth == expect.first);
    CHECK(w_cycle.cutwidth == expect.second);
    CHECK(expect == std::pair{2, 2});

    const auto k4 = oracle::complete(4);
    for (auto order : {std::vector<Vertex>{1, 2, 3, 4}, std::vector<Vertex>{3, 1, 4, 2}}) {
        const auto w = widths(k4, LinearArrangement::from_order(order));
        CHECK(std::pair{w.bandwidth, w.cutwidth} == oracle::widths(k4, order));
        CHECK(w.bandwidth == 3);
        CHECK(w.cutwidth == 4);
    }
}

TEST_CASE("widths and gap loads agree with the naive count") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto gen = generate({.family = Family::random_cutwidth, .n = 30, .seed = seed, .cutwidth = 3});
        std::vector<Vertex> order(gen.arrangement.order().begin(), gen.arrangement.order().end());
        std::mt19937 rng(static_cast<unsigned>(seed));
        std::shuffle(order.begin(), order.end(), rng);
        const auto a = LinearArrangement::from_order(order);
        const auto w = widths(gen.graph, a);
        CHECK(std::pair{w.bandwidth, w.cutwidth} == oracle::widths(gen.graph, order));
        const auto loads = gap_loads(gen.graph, a);
        CHECK(*std::max_element(loads.begin() + 1, loads.end()) == w.cutwidth);
        std::int64_t sum = 0;
        for (EdgeId e = 0; e < gen.graph.num_edges(); ++e) {
            sum += spread(gen.graph, a, e);
        }
        CHECK(sum == total_spread(gen.graph, a));
        // every edge crosses spread-many gaps
        CHECK(sum == std::accumulate(loads.begin() + 1, loads.end(), std::int64_t{0}));
    }
}

TEST_CASE("arrangement tree shape") {
    const ArrangementTree t4(oracle::path(4), LinearArrangement::identity(4));
    const auto& root = t4.node(t4.root());
    CHECK(root.lo == 1);
    CHECK(root.hi == 4);
    CHECK(t4.node(root.left).lo == 1);
    CHECK(t4.node(root.left).hi == 2);
    CHECK(t4.node(root.right).lo == 3);
    CHECK(t4.node(root.right).hi == 4);

    const ArrangementTree t5(oracle::path(5), LinearArrangement::identity(5));
    CHECK(t5.node(t5.node(0).left).hi == 4);
    CHECK(t5.node(t5.node(0).right).lo == 5);
    CHECK(t5.node(t5.node(0).right).is_leaf());
    CHECK(t5.num_nodes() == 9);

    CHECK(left_block_size(2) == 1);
    CHECK(left_block_size(5) == 4);
    CHECK(left_block_size(8) == 4);
    CHECK(ceil_power_of_two(1) == 1);
    CHECK(ceil_power_of_two(9) == 16);
}

TEST_CASE("C_4 root split set") {
    const auto c4 = oracle::cycle(4);
    const ArrangementTree tree(c4, c4_order);
    auto root_split = tree.node(0).split_edges;
    std::sort(root_split.begin(), root_split.end());
    // (2,3) has ID 1, (1,4) has ID 3
    CHECK(root_split == std::vector<EdgeId>{1, 3});
    CHECK(spread(c4, c4_order, 1) == 2);
    CHECK(spread(c4, c4_order, 3) == 2);
}

TEST_CASE("every edge sits at the node separating its endpoints") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto gen = generate({.family = Family::random_bandwidth, .n = 37 + static_cast<int>(seed) * 11,
                                   .seed = seed, .bandwidth = 4, .probability = 0.6});
        const ArrangementTree tree(gen.graph, gen.arrangement);
        std::vector<int> seen(static_cast<std::size_t>(gen.graph.num_edges()), 0);
        for (int id = 0; id < tree.num_nodes(); ++id) {
            const auto& node = tree.node(id);
            for (EdgeId e : node.split_edges) {
                ++seen[static_cast<std::size_t>(e)];
                const int pa = gen.arrangement.position_of(gen.graph.edge(e).u);
                const int pb = gen.arrangement.position_of(gen.graph.edge(e).v);
                const auto& left = tree.node(node.left);
                const auto& right = tree.node(node.right);
                const bool separated = (pa <= left.hi && pb >= right.lo) || (pb <= left.hi && pa >= right.lo);
                CHECK(separated);
                CHECK(tree.edge_split_node(e) == id);
                CHECK(tree.split_node(pa, pb) == id);
            }
        }
        CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
        const auto order = tree.postorder();
        std::vector<int> rank(order.size());
        for (std::size_t k = 0; k < order.size(); ++k) {
            rank[static_cast<std::size_t>(order[k])] = static_cast<int>(k);
        }
        for (int id = 0; id < tree.num_nodes(); ++id) {
            if (tree.node(id).parent >= 0) {
                CHECK(rank[static_cast<std::size_t>(id)] < rank[static_cast<std::size_t>(tree.node(id).parent)]);
            }
        }
    }
}

TEST_CASE("split height examples") {
    CHECK(split_height(3, 6, 8).p == 4);
    CHECK(split_height(3, 6, 16).p == 4);
    CHECK(split_height(1, 2, 8).p == 1);
    CHECK(split_height(4, 5, 8).p == 4);
    for (int n_total : {8, 16, 32}) {
        for (int i = 1; i <= n_total; ++i) {
            for (int j = i + 1; j <= n_total; ++j) {
                const auto s = split_height(i, j, n_total);
                const int p = oracle::split_p(i, j);
                CHECK(s.p == p);
                CHECK((1 << s.height) == 2 * p);
            }
        }
    }
}

TEST_CASE("padding") {
    CHECK(PaddedArrangement::padded_size(4) == 8);
    CHECK(PaddedArrangement::padded_size(5) == 16);
    CHECK(PaddedArrangement::shift_count(4) == 4);
    CHECK(PaddedArrangement::shift_count(5) == 11);
    const PaddedArrangement pa(c4_order, 3);
    CHECK(pa.n_prime == 8);
    CHECK(pa.padded_position(3) == 7);
    CHECK_THROWS_AS(PaddedArrangement(c4_order, 4), ValidationError);
}

TEST_CASE("arrangement files") {
    const auto a = load_arrangement("c order\n3\n1\n\n2\n", 3);
    CHECK(a.vertex_at(1) == 3);
    CHECK(a.position_of(2) == 3);
    CHECK(load_arrangement(serialize_arrangement(a), 3).order()[0] == 3);
    CHECK_THROWS(load_arrangement("1\n1\n2\n", 3));
    CHECK_THROWS(load_arrangement("1\n2\n", 3));
    CHECK_THROWS(load_arrangement("1\nx\n2\n", 3));
    CHECK_THROWS_AS(LinearArrangement::from_order({1, 3}), ValidationError);
    CHECK_THROWS_AS(require_matching(oracle::path(4), LinearArrangement::identity(3)), ValidationError);
}
