#pragma once

// Brute-force reference computations for the tests. Only the graph,
// arrangement and union-find primitives come from the library.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <tuple>
#include <utility>
#include <vector>

#include "widthspan/arrangement.hpp"
#include "widthspan/graph.hpp"
#include "widthspan/union_find.hpp"

namespace oracle {

using widthspan::Edge;
using widthspan::EdgeId;
using widthspan::Graph;
using widthspan::LinearArrangement;
using widthspan::Vertex;

inline Graph make_graph(int n, std::vector<std::pair<int, int>> pairs) {
    std::vector<Edge> edges;
    for (auto [u, v] : pairs) {
        edges.push_back(Edge{u, v});
    }
    return Graph(n, std::move(edges));
}

inline Graph path(int n) {
    std::vector<std::pair<int, int>> e;
    for (int v = 1; v < n; ++v) {
        e.emplace_back(v, v + 1);
    }
    return make_graph(n, e);
}

inline Graph cycle(int n) {
    auto e = std::vector<std::pair<int, int>>{};
    for (int v = 1; v < n; ++v) {
        e.emplace_back(v, v + 1);
    }
    e.emplace_back(1, n);
    return make_graph(n, e);
}

inline Graph complete(int n) {
    std::vector<std::pair<int, int>> e;
    for (int u = 1; u <= n; ++u) {
        for (int v = u + 1; v <= n; ++v) {
            e.emplace_back(u, v);
        }
    }
    return make_graph(n, e);
}

inline std::pair<int, int> widths(const Graph& g, const std::vector<Vertex>& order) {
    const int n = static_cast<int>(order.size());
    std::vector<int> pos(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k < n; ++k) {
        pos[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = k + 1;
    }
    int band = 0;
    for (const auto& e : g.edges()) {
        band = std::max(band, std::abs(pos[static_cast<std::size_t>(e.u)] - pos[static_cast<std::size_t>(e.v)]));
    }
    int cut = 0;
    for (int gap = 1; gap < n; ++gap) {
        int crossing = 0;
        for (const auto& e : g.edges()) {
            const int a = std::min(pos[static_cast<std::size_t>(e.u)], pos[static_cast<std::size_t>(e.v)]);
            const int b = std::max(pos[static_cast<std::size_t>(e.u)], pos[static_cast<std::size_t>(e.v)]);
            crossing += a <= gap && b > gap;
        }
        cut = std::max(cut, crossing);
    }
    return {band, cut};
}

// Largest power of two dividing some integer in [i, j).
inline int split_p(int i, int j) {
    int best = 0;
    for (int x = i; x < j; ++x) {
        int p = 1;
        while (x % (2 * p) == 0) {
            p *= 2;
        }
        best = std::max(best, p);
    }
    return best;
}

// BFS distances in the tree given by `ids` from `source`.
inline std::vector<int> tree_bfs(const Graph& g, const std::vector<EdgeId>& ids, Vertex source) {
    const auto n = static_cast<std::size_t>(g.num_vertices());
    std::vector<std::vector<Vertex>> adj(n + 1);
    for (EdgeId id : ids) {
        const auto& e = g.edge(id);
        adj[static_cast<std::size_t>(e.u)].push_back(e.v);
        adj[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    std::vector<int> dist(n + 1, -1);
    std::deque<Vertex> queue{source};
    dist[static_cast<std::size_t>(source)] = 0;
    while (!queue.empty()) {
        const Vertex x = queue.front();
        queue.pop_front();
        for (Vertex y : adj[static_cast<std::size_t>(x)]) {
            if (dist[static_cast<std::size_t>(y)] < 0) {
                dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
                queue.push_back(y);
            }
        }
    }
    return dist;
}

inline bool is_spanning_tree(const Graph& g, const std::vector<EdgeId>& ids) {
    if (static_cast<int>(ids.size()) != g.num_vertices() - 1) {
        return false;
    }
    const auto d = tree_bfs(g, ids, 1);
    return std::all_of(d.begin() + 1, d.end(), [](int x) { return x >= 0; });
}

// Per-edge stretch, or empty if `ids` is not a spanning tree.
inline std::vector<std::int64_t> stretches(const Graph& g, const std::vector<EdgeId>& ids) {
    if (!is_spanning_tree(g, ids)) {
        return {};
    }
    std::vector<std::int64_t> out;
    for (const auto& e : g.edges()) {
        out.push_back(tree_bfs(g, ids, e.u)[static_cast<std::size_t>(e.v)]);
    }
    return out;
}

inline std::int64_t total_stretch(const Graph& g, const std::vector<EdgeId>& ids) {
    const auto s = stretches(g, ids);
    return std::accumulate(s.begin(), s.end(), std::int64_t{0});
}

struct Brute {
    std::uint64_t trees = 0;
    std::int64_t best = -1;
    std::uint64_t argmin = 0;
    std::map<std::int64_t, std::uint64_t> histogram;
};

// Every (n-1)-subset of edges, kept when it is a spanning tree. Only for tiny m.
inline Brute brute_min_stretch(const Graph& g) {
    const int m = g.num_edges();
    const int k = g.num_vertices() - 1;
    Brute out;
    if (k == 0) {
        out.trees = 1;
        out.best = 0;
        out.argmin = 1;
        out.histogram[0] = 1;
        return out;
    }
    std::vector<bool> pick(static_cast<std::size_t>(m), false);
    std::fill(pick.begin(), pick.begin() + k, true);
    do {
        std::vector<EdgeId> ids;
        for (int e = 0; e < m; ++e) {
            if (pick[static_cast<std::size_t>(e)]) {
                ids.push_back(e);
            }
        }
        if (!is_spanning_tree(g, ids)) {
            continue;
        }
        ++out.trees;
        const auto total = total_stretch(g, ids);
        ++out.histogram[total];
        if (out.best < 0 || total < out.best) {
            out.best = total;
        }
    } while (std::prev_permutation(pick.begin(), pick.end()));
    out.argmin = out.histogram[out.best];
    return out;
}

// Textbook Kruskal over padded positions, keyed by (p, spread, ID) with p
// recomputed by split_p. Returns ascending IDs.
inline std::vector<EdgeId> padded_kruskal(const Graph& g, const widthspan::PaddedArrangement& a) {
    std::vector<std::tuple<int, int, EdgeId>> keyed;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        const int pu = a.padded_position(g.edge(e).u);
        const int pv = a.padded_position(g.edge(e).v);
        keyed.emplace_back(split_p(std::min(pu, pv), std::max(pu, pv)), std::abs(pu - pv), e);
    }
    std::sort(keyed.begin(), keyed.end());
    widthspan::UnionFind uf(g.num_vertices() + 1);
    std::vector<EdgeId> out;
    for (auto [p, s, e] : keyed) {
        if (uf.unite(g.edge(e).u, g.edge(e).v)) {
            out.push_back(e);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace oracle
