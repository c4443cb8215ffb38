#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "widthspan/arrangement.hpp"
#include "widthspan/graph.hpp"

namespace widthspan {

/// Unrooted decomposition. Bags are indexed 0..count-1 (file IDs minus one);
/// each bag is kept sorted.
struct TreeDecomposition {
    int num_vertices = 0;
    std::vector<std::vector<Vertex>> bags;
    std::vector<std::pair<int, int>> edges;

    int width() const;
};

/// Throws ValidationError naming the offending vertex, edge or bag when the
/// bag tree is not a tree, a vertex or edge is uncovered, or a vertex's bags
/// are disconnected.
void validate_decomposition(const Graph& g, const TreeDecomposition& td);

/// PACE .td text: `c` comments, `s td <bags> <width+1> <n>`, `b <id> <v...>`,
/// then one `<id> <id>` line per tree edge. Structural checks only; use
/// validate_decomposition against the graph.
TreeDecomposition load_td(std::string_view text);
TreeDecomposition load_td_file(const std::string& path);
std::string serialize_td(const TreeDecomposition& td);

/// Bags of b + 1 consecutive positions, b the bandwidth of `a`.
TreeDecomposition path_decomposition(const Graph& g, const LinearArrangement& a);

/// Decomposition induced by eliminating vertices in `order`.
TreeDecomposition elimination_decomposition(const Graph& g, const std::vector<Vertex>& order);

/// Minimum-degree elimination heuristic.
std::vector<Vertex> min_degree_order(const Graph& g);

/// Optimal elimination order by trying every permutation; n <= 9.
std::vector<Vertex> exact_elimination_order(const Graph& g);

enum class NiceKind { leaf, introduce, forget, join };

struct NiceNode {
    NiceKind kind = NiceKind::leaf;
    std::vector<Vertex> bag;  // sorted
    Vertex vertex = 0;        // introduced or forgotten vertex
    int left = -1;            // only child, or first child of a join
    int right = -1;           // second child of a join
};

/// Rooted nice decomposition; children always precede their parent, the root
/// is the last node.
struct NiceTreeDecomposition {
    std::vector<NiceNode> nodes;

    int root() const { return static_cast<int>(nodes.size()) - 1; }
    int width() const;
    /// |D(B_i)|: vertices appearing in the subtree of node i.
    std::vector<int> below_counts() const;
};

/// Nice form of equal width: singleton leaves, forget-then-introduce chains
/// along tree edges, binary joins, and a root forgetting down to one vertex.
NiceTreeDecomposition make_nice(const Graph& g, const TreeDecomposition& td);

/// Checks node kinds against their children, singleton leaves and root, and
/// the decomposition properties with respect to g.
void validate_nice(const Graph& g, const NiceTreeDecomposition& ntd);

std::string nice_kind_name(NiceKind kind);

}  // namespace widthspan
