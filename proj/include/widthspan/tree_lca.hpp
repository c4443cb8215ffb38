#pragma once

#include <span>
#include <vector>

#include "widthspan/graph.hpp"

namespace widthspan {

/*
 * Distance queries on a spanning tree over vertices 1..n via an Euler tour
 * and a sparse-table RMQ: O(n log n) build, O(1) per query.
 */
class TreeDistances {
public:
    /// `tree_edges` must form a spanning tree of vertices 1..n.
    TreeDistances(int n, std::span<const Edge> tree_edges, Vertex root = 1);

    int depth(Vertex v) const { return depth_[static_cast<std::size_t>(v)]; }
    Vertex parent(Vertex v) const { return parent_[static_cast<std::size_t>(v)]; }
    Vertex lca(Vertex a, Vertex b) const;
    int distance(Vertex a, Vertex b) const { return depth(a) + depth(b) - 2 * depth(lca(a, b)); }

private:
    std::vector<int> depth_;
    std::vector<Vertex> parent_;
    std::vector<int> first_visit_;
    std::vector<Vertex> euler_;
    std::vector<std::vector<int>> table_;  // table_[k][i]: index into euler_ of min depth in [i, i + 2^k)
};

}  // namespace widthspan
