#include "widthspan/tree_lca.hpp"

#include <bit>
#include <utility>

#include "widthspan/error.hpp"

namespace widthspan {

TreeDistances::TreeDistances(int n, std::span<const Edge> tree_edges, Vertex root) {
    const auto size = static_cast<std::size_t>(n) + 1;
    std::vector<std::vector<Vertex>> adjacency(size);
    for (const auto& e : tree_edges) {
        adjacency[static_cast<std::size_t>(e.u)].push_back(e.v);
        adjacency[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    depth_.assign(size, -1);
    parent_.assign(size, 0);
    first_visit_.assign(size, -1);
    if (n == 0) {
        return;
    }
    euler_.reserve(2 * size);

    // Iterative DFS; each stack frame remembers the next neighbour to visit.
    std::vector<std::pair<Vertex, std::size_t>> stack;
    stack.emplace_back(root, 0);
    depth_[static_cast<std::size_t>(root)] = 0;
    first_visit_[static_cast<std::size_t>(root)] = 0;
    euler_.push_back(root);
    while (!stack.empty()) {
        auto& [v, next] = stack.back();
        const auto& nbrs = adjacency[static_cast<std::size_t>(v)];
        if (next < nbrs.size()) {
            const Vertex w = nbrs[next++];
            if (w == parent_[static_cast<std::size_t>(v)] && depth_[static_cast<std::size_t>(w)] >= 0) {
                continue;
            }
            if (depth_[static_cast<std::size_t>(w)] >= 0) {
                throw InternalError("tree edges contain a cycle");
            }
            parent_[static_cast<std::size_t>(w)] = v;
            depth_[static_cast<std::size_t>(w)] = depth_[static_cast<std::size_t>(v)] + 1;
            first_visit_[static_cast<std::size_t>(w)] = static_cast<int>(euler_.size());
            euler_.push_back(w);
            stack.emplace_back(w, 0);
        } else {
            stack.pop_back();
            if (!stack.empty()) {
                euler_.push_back(stack.back().first);
            }
        }
    }
    for (Vertex v = 1; v <= n; ++v) {
        if (depth_[static_cast<std::size_t>(v)] < 0) {
            throw InternalError("tree edges do not span every vertex");
        }
    }

    const std::size_t len = euler_.size();
    const int levels = std::bit_width(len);
    table_.assign(static_cast<std::size_t>(levels), {});
    table_[0].resize(len);
    for (std::size_t i = 0; i < len; ++i) {
        table_[0][i] = static_cast<int>(i);
    }
    for (int k = 1; k < levels; ++k) {
        const std::size_t half = std::size_t{1} << (k - 1);
        const std::size_t count = len - (std::size_t{1} << k) + 1;
        auto& row = table_[static_cast<std::size_t>(k)];
        const auto& prev = table_[static_cast<std::size_t>(k) - 1];
        row.resize(count);
        for (std::size_t i = 0; i < count; ++i) {
            const int a = prev[i];
            const int b = prev[i + half];
            row[i] = depth(euler_[static_cast<std::size_t>(a)]) <= depth(euler_[static_cast<std::size_t>(b)]) ? a : b;
        }
    }
}

Vertex TreeDistances::lca(Vertex a, Vertex b) const {
    auto lo = static_cast<std::size_t>(first_visit_[static_cast<std::size_t>(a)]);
    auto hi = static_cast<std::size_t>(first_visit_[static_cast<std::size_t>(b)]);
    if (lo > hi) {
        std::swap(lo, hi);
    }
    const int k = std::bit_width(hi - lo + 1) - 1;
    const auto& row = table_[static_cast<std::size_t>(k)];
    const int x = row[lo];
    const int y = row[hi + 1 - (std::size_t{1} << k)];
    const Vertex vx = euler_[static_cast<std::size_t>(x)];
    const Vertex vy = euler_[static_cast<std::size_t>(y)];
    return depth(vx) <= depth(vy) ? vx : vy;
}

}  // namespace widthspan
