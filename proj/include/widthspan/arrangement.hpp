#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "widthspan/graph.hpp"

namespace widthspan {

/*
 * Bijection between vertices 1..n and positions 1..n.
 */
class LinearArrangement {
public:
    LinearArrangement() = default;

    static LinearArrangement identity(int n);
    /// `order[k]` is the vertex at position k + 1. Throws ValidationError if
    /// the order is not a permutation of 1..n.
    static LinearArrangement from_order(std::vector<Vertex> order);

    int size() const noexcept { return static_cast<int>(vertex_at_.size()); }
    int position_of(Vertex v) const { return position_of_[static_cast<std::size_t>(v)]; }
    Vertex vertex_at(int position) const { return vertex_at_[static_cast<std::size_t>(position) - 1]; }
    std::span<const Vertex> order() const noexcept { return vertex_at_; }

private:
    std::vector<Vertex> vertex_at_;    // index position - 1
    std::vector<int> position_of_;     // index vertex; slot 0 unused
};

/// Parses an arrangement file: one vertex per line, line k holds the vertex at
/// position k. Blank lines and `c` comment lines are skipped.
LinearArrangement load_arrangement(std::string_view text, int n);
LinearArrangement load_arrangement_file(const std::string& path, int n);
std::string serialize_arrangement(const LinearArrangement& a);

/// Throws ValidationError unless `a` arranges exactly the vertices of `g`.
void require_matching(const Graph& g, const LinearArrangement& a);

int spread(const Graph& g, const LinearArrangement& a, EdgeId e);

struct Widths {
    int bandwidth = 0;
    int cutwidth = 0;
};

/// Bandwidth and cutwidth of `a` in one pass (difference array for cuts).
Widths widths(const Graph& g, const LinearArrangement& a);

std::int64_t total_spread(const Graph& g, const LinearArrangement& a);

/// Edges crossing each gap: entry i (1 <= i < n) counts edges with one
/// endpoint at position <= i and the other at >= i + 1. Entry 0 is unused.
std::vector<int> gap_loads(const Graph& g, const LinearArrangement& a);

struct ArrangementNode {
    int lo = 0;  // first position, 1-based inclusive
    int hi = 0;  // last position, inclusive
    int height = 0;
    int left = -1;
    int right = -1;
    int parent = -1;
    std::vector<EdgeId> split_edges;

    int size() const noexcept { return hi - lo + 1; }
    bool is_leaf() const noexcept { return left < 0; }
};

/*
 * Balanced binary recursion over positions 1..n. An internal node of size s
 * puts the largest power of two strictly below s in its left child and the rest
 * in its right child. Each edge is stored at the unique node whose children
 * separate its endpoint positions.
 *
 * Nodes are stored in preorder; node 0 is the root.
 */
class ArrangementTree {
public:
    ArrangementTree(const Graph& g, const LinearArrangement& a);

    const std::vector<ArrangementNode>& nodes() const noexcept { return nodes_; }
    const ArrangementNode& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
    int root() const noexcept { return 0; }
    int num_nodes() const noexcept { return static_cast<int>(nodes_.size()); }

    /// Lowest node whose interval contains both positions (O(log n) descent).
    int split_node(int position_a, int position_b) const;
    int edge_split_node(EdgeId e) const { return edge_node_[static_cast<std::size_t>(e)]; }

    /// Node ids with every child listed before its parent.
    std::vector<int> postorder() const;

private:
    int build(int lo, int hi, int parent);

    std::vector<ArrangementNode> nodes_;
    std::vector<int> edge_node_;
};

/// Largest power of two strictly less than `size` (size >= 2).
int left_block_size(int size);

/// Smallest power of two >= x (x >= 1).
int ceil_power_of_two(int x);

struct SplitHeight {
    int height = 0;  // log2 of the splitting node's leaf count
    int p = 0;       // largest power of two dividing an integer in [i, j)
};

/// Split of positions i < j in a perfect arrangement tree over `n_total`
/// (a power of two) positions. Leaves are indexed 0-based internally, so the
/// root splits at multiples of n_total / 2 and the splitting node has 2p leaves.
SplitHeight split_height(int i, int j, int n_total);

/*
 * A base arrangement placed inside n' positions, n' the smallest power of two
 * >= 2n. `shift` padding positions come first; padding vertices are never
 * materialised.
 */
struct PaddedArrangement {
    LinearArrangement base;
    int n_prime = 0;
    int shift = 0;

    PaddedArrangement() = default;
    PaddedArrangement(LinearArrangement base_arrangement, int shift_value);

    int padded_position(Vertex v) const { return shift + base.position_of(v); }

    static int padded_size(int n);
    /// Number of admissible shifts: shift ranges over 0 .. n' - n - 1.
    static int shift_count(int n);
};

}  // namespace widthspan
