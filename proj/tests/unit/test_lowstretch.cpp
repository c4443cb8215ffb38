#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <tuple>

#include "oracles.hpp"
#include "widthspan/error.hpp"
#include "widthspan/generators.hpp"
#include "widthspan/lowstretch.hpp"
#include "widthspan/union_find.hpp"

using namespace widthspan;

namespace {

std::vector<EdgeId> sorted_ids(std::vector<EdgeId> ids) {
    std::sort(ids.begin(), ids.end());
    return ids;
}

// Long components of every arrangement-tree node, by BFS on the induced subgraph.
std::vector<int> naive_long_components(const Graph& g, const LinearArrangement& a, const ArrangementTree& tree,
                                       int b) {
    std::vector<int> out;
    for (const auto& node : tree.nodes()) {
        UnionFind uf(g.num_vertices() + 1);
        for (const auto& e : g.edges()) {
            const int pu = a.position_of(e.u);
            const int pv = a.position_of(e.v);
            if (pu >= node.lo && pu <= node.hi && pv >= node.lo && pv <= node.hi) {
                uf.unite(e.u, e.v);
            }
        }
        std::set<int> left_roots;
        std::set<int> right_roots;
        for (int pos = node.lo; pos <= node.hi; ++pos) {
            const int root = uf.find(a.vertex_at(pos));
            if (pos < node.lo + b) {
                left_roots.insert(root);
            }
            if (pos > node.hi - b) {
                right_roots.insert(root);
            }
        }
        int count = 0;
        for (int r : left_roots) {
            count += right_roots.count(r) > 0 ? 1 : 0;
        }
        out.push_back(count);
    }
    return out;
}

Graph c4_with_order(std::vector<std::pair<int, int>> edges) { return oracle::make_graph(4, std::move(edges)); }

}  // namespace

TEST_CASE("P_4 is its own tree") {
    const auto g = oracle::path(4);
    const auto r = build_tree(g, LinearArrangement::identity(4));
    CHECK(r.tree_edges == std::vector<EdgeId>{0, 1, 2});
    CHECK(r.avg_stretch() == Rational(1));
    CHECK(r.fcb_weight == 0);
    CHECK(r.fcb_identity_holds());
}

TEST_CASE("C_4 under order 1 2 4 3") {
    const auto a = LinearArrangement::from_order({1, 2, 4, 3});

    SUBCASE("file order (1,2) (2,3) (3,4) (1,4)") {
        // (2,3) and (1,4) tie on height and spread at the root; the lower ID wins
        const auto g = c4_with_order({{1, 2}, {2, 3}, {3, 4}, {1, 4}});
        const auto r = build_tree(g, a);
        CHECK(r.tree_edges == std::vector<EdgeId>{0, 1, 2});
        CHECK(r.per_edge_stretch == std::vector<std::int64_t>{1, 1, 1, 3});
        CHECK(r.per_edge_stretch == oracle::stretches(g, r.tree_edges));
        CHECK(r.avg_stretch() == Rational(3, 2));
        CHECK(r.fcb_weight == 4);
    }
    SUBCASE("(1,4) listed before (2,3)") {
        const auto g = c4_with_order({{1, 2}, {1, 4}, {3, 4}, {2, 3}});
        const auto r = build_tree(g, a);
        CHECK(r.tree_edges == std::vector<EdgeId>{0, 1, 2});
        CHECK(r.per_edge_stretch[3] == 3);
        CHECK(r.avg_stretch() == Rational(3, 2));
        CHECK(r.fcb_weight == 4);
    }
}

TEST_CASE("stretch_of examples in K_4") {
    const auto k4 = oracle::complete(4);  // IDs: 12 13 14 23 24 34
    const auto star = stretch_of(k4, std::vector<EdgeId>{0, 1, 2});
    CHECK(star.total_stretch == 9);
    CHECK(star.per_edge_stretch == std::vector<std::int64_t>{1, 1, 1, 2, 2, 2});
    const auto path = stretch_of(k4, std::vector<EdgeId>{0, 3, 5});
    CHECK(path.total_stretch == 10);
    CHECK(path.total_stretch == oracle::total_stretch(k4, {0, 3, 5}));
    CHECK(path.fcb_identity_holds());
    CHECK_THROWS_AS(stretch_of(k4, std::vector<EdgeId>{0, 1, 3}), ValidationError);
    CHECK_THROWS_AS(stretch_of(k4, std::vector<EdgeId>{0, 1}), ValidationError);
}

TEST_CASE("Kruskal, node scan and naive Kruskal agree") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const int n = 20 + static_cast<int>(seed) * 7;
        const int b = 1 + static_cast<int>(seed % 5);
        const auto gen = generate({.family = Family::random_bandwidth, .n = n, .seed = seed, .bandwidth = b,
                                   .probability = 0.5});
        const auto& g = gen.graph;
        const auto r = build_tree(g, gen.arrangement);
        CHECK(r.tree_edges == sorted_ids(greedy_node_scan_tree(g, gen.arrangement)));
        CHECK(r.per_edge_stretch == oracle::stretches(g, r.tree_edges));
        CHECK(r.fcb_identity_holds());

        std::int64_t fcb = 0;
        for (EdgeId e = 0; e < g.num_edges(); ++e) {
            if (!std::binary_search(r.tree_edges.begin(), r.tree_edges.end(), e)) {
                fcb += r.per_edge_stretch[static_cast<std::size_t>(e)] + 1;
            }
        }
        CHECK(fcb == r.fcb_weight);

        for (int shift : {0, 1, PaddedArrangement::shift_count(n) - 1}) {
            const PaddedArrangement pa(gen.arrangement, shift);
            const auto pr = build_tree(g, pa);
            CHECK(pr.tree_edges == oracle::padded_kruskal(g, pa));
            CHECK(pr.fcb_identity_holds());
        }
    }
}

TEST_CASE("split bound on padded arrangements") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto gen = generate({.family = Family::random_bandwidth, .n = 50, .seed = seed, .bandwidth = 3,
                                   .probability = 0.8});
        for (int shift = 0; shift < PaddedArrangement::shift_count(50); shift += 9) {
            const PaddedArrangement pa(gen.arrangement, shift);
            const auto report = build_tree(gen.graph, pa);
            const auto rows = split_bound_check(gen.graph, pa, report);
            REQUIRE(rows.size() == static_cast<std::size_t>(gen.graph.num_edges()));
            for (const auto& row : rows) {
                const auto& e = gen.graph.edge(row.edge);
                const int pu = pa.padded_position(e.u);
                const int pv = pa.padded_position(e.v);
                CHECK(row.p == oracle::split_p(std::min(pu, pv), std::max(pu, pv)));
                CHECK(row.bound_ok);
                CHECK(row.stretch <= 2 * row.p - 1);
                if (row.p == 1) {
                    CHECK(row.stretch == 1);
                }
            }
        }
    }
}

TEST_CASE("C_4 edge (2,3) on the padded line") {
    const auto g = oracle::cycle(4);
    const PaddedArrangement pa(LinearArrangement::from_order({1, 2, 4, 3}), 0);
    const auto report = build_tree(g, pa);
    const auto rows = split_bound_check(g, pa, report);
    // positions 2 and 4: p = 2, bound 3
    CHECK(rows[1].p == 2);
    CHECK(rows[1].stretch <= 3);
    CHECK(std::all_of(rows.begin(), rows.end(), [](const SplitBoundRow& r) { return r.bound_ok; }));
}

TEST_CASE("charges on a path") {
    for (int n : {2, 7, 16, 33}) {
        const auto report = charge_diagnostics(oracle::path(n), LinearArrangement::identity(n));
        for (const auto& node : report.nodes) {
            CHECK(node.long_components == 1);
            CHECK(node.charge == 0);
        }
        CHECK(report.total_charge == 0);
    }
}

TEST_CASE("long components match an induced-subgraph count") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const int b = 2 + static_cast<int>(seed % 4);
        const auto gen = generate({.family = Family::random_bandwidth, .n = 40, .seed = seed, .bandwidth = b,
                                   .probability = 0.35});
        const ArrangementTree tree(gen.graph, gen.arrangement);
        const auto report = charge_diagnostics(gen.graph, gen.arrangement);
        const int bw = widths(gen.graph, gen.arrangement).bandwidth;
        const auto expect = naive_long_components(gen.graph, gen.arrangement, tree, bw);
        REQUIRE(report.nodes.size() == expect.size());
        for (std::size_t k = 0; k < expect.size(); ++k) {
            CHECK(report.nodes[k].long_components == expect[k]);
        }
        CHECK(report.nodes[0].long_components == 1);
        CHECK(report.long_component_bound_ok());
        CHECK(report.charge_bound_ok(40));
        CHECK(report.monotonicity_violations_large_children == 0);
    }
}

TEST_CASE("monotonicity can fail below b leaves") {
    // C_5 in zigzag order: the node over vertices 5 and 3 has no internal edge,
    // so it holds two long components while each one-leaf child holds one.
    const auto g = oracle::cycle(5);
    const auto a = LinearArrangement::from_order({1, 2, 5, 3, 4});
    REQUIRE(widths(g, a).bandwidth == 2);
    const auto report = charge_diagnostics(g, a);
    const ArrangementTree tree(g, a);
    const auto expect = naive_long_components(g, a, tree, 2);
    int violations = 0;
    for (int id = 0; id < tree.num_nodes(); ++id) {
        const auto& node = tree.node(id);
        if (node.is_leaf()) {
            continue;
        }
        for (int child : {node.left, node.right}) {
            violations += expect[static_cast<std::size_t>(id)] > expect[static_cast<std::size_t>(child)];
        }
    }
    CHECK(violations > 0);
    CHECK(report.monotonicity_violations == violations);
    CHECK(report.monotonicity_violations_large_children == 0);
}

TEST_CASE("fundamental cycle bounds") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const int b = 1 + static_cast<int>(seed % 6);
        const auto gen = generate({.family = Family::random_bandwidth, .n = 64, .seed = seed, .bandwidth = b,
                                   .probability = 0.5});
        const auto& g = gen.graph;
        const auto report = build_tree(g, gen.arrangement);
        const auto summary = fundamental_cycle_bounds(g, gen.arrangement, report);
        const int bw = widths(g, gen.arrangement).bandwidth;
        CHECK(summary.cycles == g.num_edges() - g.num_vertices() + 1);
        CHECK(summary.ok());

        // cycle = tree path between the endpoints plus the edge itself
        std::int64_t max_len = 0;
        int max_spread = 0;
        for (EdgeId e = 0; e < g.num_edges(); ++e) {
            if (std::binary_search(report.tree_edges.begin(), report.tree_edges.end(), e)) {
                continue;
            }
            const auto& ed = g.edge(e);
            const auto from_u = oracle::tree_bfs(g, report.tree_edges, ed.u);
            const auto from_v = oracle::tree_bfs(g, report.tree_edges, ed.v);
            const int len = from_u[static_cast<std::size_t>(ed.v)];
            int lo = g.num_vertices();
            int hi = 1;
            for (Vertex x = 1; x <= g.num_vertices(); ++x) {
                if (from_u[static_cast<std::size_t>(x)] + from_v[static_cast<std::size_t>(x)] == len) {
                    lo = std::min(lo, gen.arrangement.position_of(x));
                    hi = std::max(hi, gen.arrangement.position_of(x));
                }
            }
            const int s = hi - lo;
            CHECK(2 * s <= bw * (len + 1));
            CHECK(len + 1 <= s + 1);
            max_len = std::max<std::int64_t>(max_len, len + 1);
            max_spread = std::max(max_spread, s);
        }
        CHECK(summary.max_length == max_len);
        CHECK(summary.max_spread == max_spread);
    }
}

TEST_CASE("bandwidth bounds on a small sweep") {
    for (int b = 1; b <= 6; ++b) {
        for (int n : {16, 64, 256}) {
            const auto gen = generate({.family = Family::random_bandwidth, .n = n, .seed = 3, .bandwidth = b,
                                       .probability = 0.7});
            const auto r = build_tree(gen.graph, gen.arrangement);
            const std::int64_t cube = static_cast<std::int64_t>(b) * b * b;
            CHECK(r.avg_stretch() <= Rational(4 * cube + 2));
            CHECK(r.fcb_weight <= 4 * cube * n);
        }
    }
}
