#include "widthspan/lowstretch.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "widthspan/error.hpp"
#include "widthspan/tree_lca.hpp"
#include "widthspan/union_find.hpp"

namespace widthspan {

std::vector<EdgeWeight> arrangement_edge_weights(const Graph& g, const LinearArrangement& a) {
    const ArrangementTree tree(g, a);
    std::vector<EdgeWeight> weights(static_cast<std::size_t>(g.num_edges()));
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        weights[static_cast<std::size_t>(e)] =
            EdgeWeight{tree.node(tree.edge_split_node(e)).height, spread(g, a, e), e};
    }
    return weights;
}

std::vector<EdgeWeight> padded_edge_weights(const Graph& g, const PaddedArrangement& a) {
    require_matching(g, a.base);
    std::vector<EdgeWeight> weights(static_cast<std::size_t>(g.num_edges()));
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        const auto& ed = g.edge(e);
        const int pu = a.padded_position(ed.u);
        const int pv = a.padded_position(ed.v);
        const int i = std::min(pu, pv);
        const int j = std::max(pu, pv);
        weights[static_cast<std::size_t>(e)] = EdgeWeight{split_height(i, j, a.n_prime).height, j - i, e};
    }
    return weights;
}

std::vector<EdgeId> minimum_spanning_tree(const Graph& g, std::span<const EdgeWeight> weights) {
    std::vector<EdgeWeight> sorted(weights.begin(), weights.end());
    std::sort(sorted.begin(), sorted.end());
    UnionFind uf(g.num_vertices() + 1);
    std::vector<EdgeId> tree;
    tree.reserve(static_cast<std::size_t>(std::max(0, g.num_vertices() - 1)));
    for (const auto& w : sorted) {
        const auto& e = g.edge(w.edge_id);
        if (uf.unite(e.u, e.v)) {
            tree.push_back(w.edge_id);
        }
    }
    std::sort(tree.begin(), tree.end());
    return tree;
}

std::vector<EdgeId> greedy_node_scan_tree(const Graph& g, const LinearArrangement& a) {
    const ArrangementTree tree(g, a);
    UnionFind uf(g.num_vertices() + 1);
    std::vector<EdgeId> chosen;
    for (int id : tree.postorder()) {
        std::vector<EdgeId> split = tree.node(id).split_edges;
        std::sort(split.begin(), split.end(), [&](EdgeId x, EdgeId y) {
            const int sx = spread(g, a, x);
            const int sy = spread(g, a, y);
            return sx != sy ? sx < sy : x < y;
        });
        for (EdgeId e : split) {
            if (uf.unite(g.edge(e).u, g.edge(e).v)) {
                chosen.push_back(e);
            }
        }
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

StretchReport stretch_of(const Graph& g, std::span<const EdgeId> tree_edges) {
    const int n = g.num_vertices();
    const int m = g.num_edges();
    if (static_cast<int>(tree_edges.size()) != std::max(0, n - 1)) {
        throw ValidationError("not a spanning tree: " + std::to_string(tree_edges.size()) + " edges for " +
                              std::to_string(n) + " vertices");
    }
    StretchReport report;
    report.n = n;
    report.m = m;
    report.tree_edges.assign(tree_edges.begin(), tree_edges.end());
    std::sort(report.tree_edges.begin(), report.tree_edges.end());

    UnionFind uf(n + 1);
    std::vector<Edge> edges;
    edges.reserve(report.tree_edges.size());
    std::vector<bool> in_tree(static_cast<std::size_t>(m), false);
    for (EdgeId e : report.tree_edges) {
        if (e < 0 || e >= m) {
            throw ValidationError("edge id " + std::to_string(e) + " out of range");
        }
        if (in_tree[static_cast<std::size_t>(e)]) {
            throw ValidationError("edge id " + std::to_string(e) + " listed twice");
        }
        in_tree[static_cast<std::size_t>(e)] = true;
        if (!uf.unite(g.edge(e).u, g.edge(e).v)) {
            throw ValidationError("not a spanning tree: edge id " + std::to_string(e) + " closes a cycle");
        }
        edges.push_back(g.edge(e));
    }

    report.per_edge_stretch.assign(static_cast<std::size_t>(m), 1);
    if (n == 0) {
        return report;
    }
    const TreeDistances distances(n, edges);
    for (EdgeId e = 0; e < m; ++e) {
        if (in_tree[static_cast<std::size_t>(e)]) {
            report.total_stretch += 1;
            continue;
        }
        const std::int64_t d = distances.distance(g.edge(e).u, g.edge(e).v);
        report.per_edge_stretch[static_cast<std::size_t>(e)] = d;
        report.total_stretch += d;
        report.fcb_weight += d + 1;
    }
    return report;
}

StretchReport build_tree(const Graph& g, const LinearArrangement& a) {
    require_connected(g);
    const auto weights = arrangement_edge_weights(g, a);
    const auto tree = minimum_spanning_tree(g, weights);
    return stretch_of(g, tree);
}

StretchReport build_tree(const Graph& g, const PaddedArrangement& a) {
    require_connected(g);
    const auto weights = padded_edge_weights(g, a);
    const auto tree = minimum_spanning_tree(g, weights);
    return stretch_of(g, tree);
}

std::vector<SplitBoundRow> split_bound_check(const Graph& g, const PaddedArrangement& a, const StretchReport& report) {
    std::vector<SplitBoundRow> rows;
    rows.reserve(static_cast<std::size_t>(g.num_edges()));
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        const auto& ed = g.edge(e);
        const int pu = a.padded_position(ed.u);
        const int pv = a.padded_position(ed.v);
        const int i = std::min(pu, pv);
        const int j = std::max(pu, pv);
        const int p = split_height(i, j, a.n_prime).p;
        const std::int64_t s = report.per_edge_stretch[static_cast<std::size_t>(e)];
        rows.push_back(SplitBoundRow{e, p, s, s <= 2 * static_cast<std::int64_t>(p) - 1});
    }
    return rows;
}

ChargeReport charge_diagnostics(const Graph& g, const LinearArrangement& a) {
    const ArrangementTree tree(g, a);
    const int b = widths(g, a).bandwidth;
    ChargeReport report;
    report.bandwidth = b;
    report.nodes.resize(static_cast<std::size_t>(tree.num_nodes()));

    UnionFind uf(g.num_vertices() + 1);
    std::vector<int> left_roots;
    for (int id : tree.postorder()) {
        const auto& node = tree.node(id);
        for (EdgeId e : node.split_edges) {
            uf.unite(g.edge(e).u, g.edge(e).v);
        }
        left_roots.clear();
        const int left_end = std::min(node.hi, node.lo + b - 1);
        for (int pos = node.lo; pos <= left_end; ++pos) {
            left_roots.push_back(uf.find(a.vertex_at(pos)));
        }
        std::sort(left_roots.begin(), left_roots.end());
        left_roots.erase(std::unique(left_roots.begin(), left_roots.end()), left_roots.end());
        std::vector<int> long_roots;
        for (int pos = std::max(node.lo, node.hi - b + 1); pos <= node.hi; ++pos) {
            const int r = uf.find(a.vertex_at(pos));
            if (std::binary_search(left_roots.begin(), left_roots.end(), r)) {
                long_roots.push_back(r);
            }
        }
        std::sort(long_roots.begin(), long_roots.end());
        const int count = static_cast<int>(std::unique(long_roots.begin(), long_roots.end()) - long_roots.begin());

        auto& row = report.nodes[static_cast<std::size_t>(id)];
        row.node = id;
        row.lo = node.lo;
        row.hi = node.hi;
        row.leaves = node.size();
        row.long_components = count;
        report.max_long_components = std::max(report.max_long_components, count);
    }

    for (int id = 0; id < tree.num_nodes(); ++id) {
        const auto& node = tree.node(id);
        if (node.is_leaf()) {
            continue;
        }
        auto& x = report.nodes[static_cast<std::size_t>(id)];
        const auto& y = report.nodes[static_cast<std::size_t>(node.left)];
        const auto& z = report.nodes[static_cast<std::size_t>(node.right)];
        const int lx = x.long_components;
        const int ly = y.long_components;
        const int lz = z.long_components;
        for (const auto* child : {&y, &z}) {
            if (lx > child->long_components) {
                ++report.monotonicity_violations;
                if (child->leaves >= b) {
                    ++report.monotonicity_violations_large_children;
                }
            }
        }
        std::int64_t common = 0;
        bool common_set = false;
        if (lx < ly && lx < lz) {
            common = y.leaves + z.leaves;
            common_set = true;
        } else if (lx < ly && lx == lz) {
            common = y.leaves;
            common_set = true;
        }
        if (common_set) {
            x.charge = common;
            x.charge_literal = common;
        } else {
            x.charge = (lx < lz && ly == lx) ? z.leaves : 0;
            x.charge_literal = (lz < lx && ly == lz) ? z.leaves : 0;
        }
        report.total_charge += x.charge;
        report.total_charge_literal += x.charge_literal;
    }
    return report;
}

CycleBoundSummary fundamental_cycle_bounds(const Graph& g, const LinearArrangement& a, const StretchReport& report) {
    CycleBoundSummary summary;
    summary.bandwidth = widths(g, a).bandwidth;
    const int n = g.num_vertices();
    if (n <= 1) {
        return summary;
    }
    std::vector<Edge> edges;
    std::vector<bool> in_tree(static_cast<std::size_t>(g.num_edges()), false);
    for (EdgeId e : report.tree_edges) {
        edges.push_back(g.edge(e));
        in_tree[static_cast<std::size_t>(e)] = true;
    }
    const TreeDistances tree(n, edges);

    // Binary lifting: up[k][v] is the 2^k-th ancestor; lo/hi[k][v] are the
    // min/max positions over the 2^k vertices starting at v going up.
    const int levels = std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(n))));
    const auto size = static_cast<std::size_t>(n) + 1;
    std::vector<std::vector<Vertex>> up(static_cast<std::size_t>(levels), std::vector<Vertex>(size, 0));
    std::vector<std::vector<int>> lo(static_cast<std::size_t>(levels), std::vector<int>(size, 0));
    std::vector<std::vector<int>> hi(static_cast<std::size_t>(levels), std::vector<int>(size, 0));
    for (Vertex v = 1; v <= n; ++v) {
        up[0][static_cast<std::size_t>(v)] = tree.parent(v);
        lo[0][static_cast<std::size_t>(v)] = hi[0][static_cast<std::size_t>(v)] = a.position_of(v);
    }
    for (int k = 1; k < levels; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        for (Vertex v = 1; v <= n; ++v) {
            const auto vv = static_cast<std::size_t>(v);
            const Vertex mid = up[kk - 1][vv];
            up[kk][vv] = mid == 0 ? 0 : up[kk - 1][static_cast<std::size_t>(mid)];
            lo[kk][vv] = lo[kk - 1][vv];
            hi[kk][vv] = hi[kk - 1][vv];
            if (mid != 0) {
                lo[kk][vv] = std::min(lo[kk][vv], lo[kk - 1][static_cast<std::size_t>(mid)]);
                hi[kk][vv] = std::max(hi[kk][vv], hi[kk - 1][static_cast<std::size_t>(mid)]);
            }
        }
    }
    auto climb = [&](Vertex v, int steps, int& min_pos, int& max_pos) {
        for (int k = 0; steps > 0; ++k, steps >>= 1) {
            if (steps & 1) {
                const auto kk = static_cast<std::size_t>(k);
                min_pos = std::min(min_pos, lo[kk][static_cast<std::size_t>(v)]);
                max_pos = std::max(max_pos, hi[kk][static_cast<std::size_t>(v)]);
                v = up[kk][static_cast<std::size_t>(v)];
            }
        }
    };

    const std::int64_t b = summary.bandwidth;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        if (in_tree[static_cast<std::size_t>(e)]) {
            continue;
        }
        const auto& ed = g.edge(e);
        const Vertex top = tree.lca(ed.u, ed.v);
        int min_pos = a.position_of(top);
        int max_pos = min_pos;
        climb(ed.u, tree.depth(ed.u) - tree.depth(top), min_pos, max_pos);
        climb(ed.v, tree.depth(ed.v) - tree.depth(top), min_pos, max_pos);
        const std::int64_t length = report.per_edge_stretch[static_cast<std::size_t>(e)] + 1;
        const int s = max_pos - min_pos;
        ++summary.cycles;
        summary.max_length = std::max(summary.max_length, length);
        summary.max_spread = std::max(summary.max_spread, s);
        if (2 * static_cast<std::int64_t>(s) > b * length) {
            ++summary.lower_violations;
        }
        if (length > s + 1) {
            ++summary.upper_violations;
        }
    }
    return summary;
}

}  // namespace widthspan
