#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "widthspan/error.hpp"
#include "widthspan/generators.hpp"
#include "widthspan/graph.hpp"
#include "widthspan/rational.hpp"
#include "widthspan/tree_lca.hpp"
#include "widthspan/union_find.hpp"

using namespace widthspan;

TEST_CASE("load path and cycle") {
    const auto p4 = load_graph("p 4 3\ne 1 2\ne 2 3\ne 3 4\n");
    CHECK(p4.num_vertices() == 4);
    CHECK(p4.num_edges() == 3);
    CHECK(p4.degree(1) == 1);
    CHECK(p4.degree(2) == 2);

    const auto c4 = load_graph("c a comment\np 4 4\ne 1 2\ne 2 3\ne 3 4\ne 1 4\n");
    CHECK(c4.num_edges() == 4);
    for (Vertex v = 1; v <= 4; ++v) {
        CHECK(c4.degree(v) == 2);
    }
    // edge IDs follow file order
    CHECK(c4.edge(3) == Edge{1, 4});
    CHECK(c4.find_edge(4, 1) == 3);
    CHECK_FALSE(c4.has_edge(1, 3));
}

TEST_CASE("loader errors carry the line") {
    try {
        load_graph("p 2 2\ne 1 2\ne 1 2\n");
        FAIL("duplicate accepted");
    } catch (const ValidationError& e) {
        CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(load_graph("p 2 1\ne 1 1\n"), ValidationError);
    CHECK_THROWS_AS(load_graph("p 3 1\ne 1 4\n"), ValidationError);
    CHECK_THROWS_AS(load_graph("p 4 2\ne 1 2\ne 3 4\n"), ValidationError);
    CHECK_THROWS_AS(load_graph("e 1 2\n"), ParseError);
    CHECK_THROWS_AS(load_graph("p 2 2\ne 1 2\n"), ParseError);
    CHECK_THROWS_AS(load_graph("p 2 1\ne 1 2 3\n"), ParseError);
    try {
        load_graph("p 3 2\ne 1 2\nx 2 3\n");
        FAIL("bad line accepted");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("serialize round trip") {
    const auto g = oracle::complete(5);
    const auto h = load_graph(serialize_graph(g));
    REQUIRE(h.num_edges() == g.num_edges());
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        CHECK(h.edge(e) == g.edge(e));
    }
}

TEST_CASE("constructor normalises endpoints") {
    const Graph g(3, {Edge{2, 1}, Edge{3, 2}});
    CHECK(g.edge(0) == Edge{1, 2});
    CHECK(g.opposite(1, 3) == 2);
    CHECK_THROWS_AS(Graph(3, {Edge{1, 2}, Edge{2, 1}}), ValidationError);
    CHECK_FALSE(Graph(3, {Edge{1, 2}}).connected());
}

TEST_CASE("generator examples") {
    SUBCASE("path") {
        const auto gen = generate({.family = Family::path, .n = 4});
        CHECK(gen.graph.num_edges() == 3);
        const std::vector<Vertex> order(gen.arrangement.order().begin(), gen.arrangement.order().end());
        CHECK(order == std::vector<Vertex>{1, 2, 3, 4});
        CHECK(oracle::widths(gen.graph, order).first == 1);
    }
    SUBCASE("cycle") {
        const auto gen = generate({.family = Family::cycle, .n = 4});
        const std::vector<Vertex> order(gen.arrangement.order().begin(), gen.arrangement.order().end());
        CHECK(order == std::vector<Vertex>{1, 2, 4, 3});
        CHECK(oracle::widths(gen.graph, order).first == 2);
    }
    SUBCASE("complete") {
        const auto gen = generate({.family = Family::complete, .n = 4});
        CHECK(gen.graph.num_edges() == 6);
        const std::vector<Vertex> order(gen.arrangement.order().begin(), gen.arrangement.order().end());
        CHECK(oracle::widths(gen.graph, order).first == 3);
    }
}

TEST_CASE("generated families respect their width parameter") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        for (int b = 1; b <= 5; ++b) {
            const auto gen = generate({.family = Family::random_bandwidth, .n = 40, .seed = seed, .bandwidth = b,
                                       .probability = 0.5});
            CHECK(gen.graph.connected());
            const std::vector<Vertex> order(gen.arrangement.order().begin(), gen.arrangement.order().end());
            CHECK(oracle::widths(gen.graph, order).first <= b);
        }
        for (int c = 2; c <= 4; ++c) {
            const auto gen = generate({.family = Family::random_cutwidth, .n = 40, .seed = seed, .cutwidth = c});
            CHECK(gen.graph.connected());
            const std::vector<Vertex> order(gen.arrangement.order().begin(), gen.arrangement.order().end());
            CHECK(oracle::widths(gen.graph, order).second <= c);
        }
    }
    const auto grid = generate({.family = Family::grid, .n = 12, .grid_width = 3});
    const std::vector<Vertex> order(grid.arrangement.order().begin(), grid.arrangement.order().end());
    CHECK(grid.graph.num_edges() == 17);
    CHECK(oracle::widths(grid.graph, order).first == 3);

    const auto cat = generate({.family = Family::caterpillar, .n = 30, .seed = 4});
    CHECK(cat.graph.num_edges() == 29);
    CHECK(cat.graph.connected());
}

TEST_CASE("generators are deterministic in the seed") {
    const GeneratorParams params{.family = Family::random_bandwidth, .n = 64, .seed = 11, .bandwidth = 3,
                                 .probability = 0.4};
    CHECK(serialize_graph(generate(params).graph) == serialize_graph(generate(params).graph));
    for (auto name : {"path", "cycle", "grid", "complete", "caterpillar", "random_bandwidth", "random_cutwidth"}) {
        const auto f = parse_family(name);
        REQUIRE(f.has_value());
        CHECK(family_name(*f) == name);
    }
    CHECK_FALSE(parse_family("wheel").has_value());
}

TEST_CASE("tree distances match BFS") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + trial;
        std::vector<Edge> edges;
        for (Vertex v = 2; v <= n; ++v) {
            edges.push_back(Edge{std::uniform_int_distribution<Vertex>(1, v - 1)(rng), v});
        }
        const Graph tree(n, edges);
        std::vector<EdgeId> ids(static_cast<std::size_t>(tree.num_edges()));
        std::iota(ids.begin(), ids.end(), 0);
        const TreeDistances td(n, edges, std::uniform_int_distribution<Vertex>(1, n)(rng));
        for (Vertex a = 1; a <= n; ++a) {
            const auto bfs = oracle::tree_bfs(tree, ids, a);
            for (Vertex b = 1; b <= n; ++b) {
                CHECK(td.distance(a, b) == bfs[static_cast<std::size_t>(b)]);
            }
        }
    }
}

TEST_CASE("rational and union find") {
    CHECK(Rational(6, 4).to_string() == "3/2");
    CHECK(Rational(-3, -1).to_string() == "3");
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK_THROWS(Rational(1, 0));

    UnionFind uf(5);
    CHECK(uf.unite(0, 1));
    CHECK(uf.unite(3, 4));
    CHECK_FALSE(uf.unite(1, 0));
    CHECK(uf.same(3, 4));
    CHECK_FALSE(uf.same(1, 3));
}
