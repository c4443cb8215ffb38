#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "widthspan/graph.hpp"

namespace widthspan {

enum class NodeKind : std::uint8_t { bag, above, below };

/*
 * Which part of the graph an edge's contracted path runs through:
 *   direct  a single graph edge between two bag vertices (cost 1)
 *   above   interior vertices not yet introduced
 *   below   interior vertices already forgotten
 * Edges at a Steiner vertex always carry that vertex's tag.
 */
enum class Side : std::uint8_t { direct, above, below };

/// Canonical encoding, one 16-bit token per symbol.
using ConfigKey = std::u16string;

/*
 * The image of a spanning tree as seen from one bag: the minimal subtree
 * connecting the bag vertices, with maximal paths through non-bag vertices
 * contracted to single weighted edges. Non-bag vertices of degree >= 3 stay
 * as anonymous Steiner vertices tagged above or below.
 */
struct Configuration {
    struct Node {
        NodeKind kind = NodeKind::bag;
        Vertex label = 0;  // bag vertices only
    };
    struct Link {
        int a = 0;
        int b = 0;
        int cost = 1;
        Side side = Side::direct;
    };

    std::vector<Node> nodes;
    std::vector<Link> links;

    static Configuration singleton(Vertex v);

    int add_node(NodeKind kind, Vertex label = 0);
    void add_link(int a, int b, int cost, Side side);

    int find_bag(Vertex v) const;  // node index or -1
    std::vector<Vertex> bag() const;
    std::vector<std::vector<int>> incidence() const;  // node -> link indices

    int count(NodeKind kind) const;
    /// Vertices the configuration still expects among the unintroduced ones:
    /// one per above Steiner vertex plus (cost - 1) per above edge.
    std::int64_t promised_above() const;

    /// Cost-weighted tree distance from node `from` to every node.
    std::vector<std::int64_t> distances_from(int from) const;
    std::int64_t distance(Vertex u, Vertex v) const;

    /// Removes non-bag leaves and suppresses degree-2 non-bag vertices until
    /// neither rule applies. Merged edges take the suppressed vertex's tag.
    void normalize();

    ConfigKey key() const;
    static Configuration decode(const ConfigKey& key);

    /// Throws InternalError unless this is a tree with costs >= 1, consistent
    /// side tags, and every Steiner vertex of degree >= 3.
    void validate() const;

    std::string to_string() const;
};

/// Side tag an edge between nodes a and b should carry, given the side of its
/// interior vertices.
Side side_for(const Configuration& c, int a, int b, int cost, Side interior);

/*
 * Conforms a spanning tree to `bag`: drops branches that reach no bag vertex,
 * contracts maximal non-bag paths into weighted edges and tags the remaining
 * non-bag vertices with `below[v]` (true for vertices already forgotten).
 */
Configuration contract_to_configuration(int n, std::span<const Edge> tree_edges, std::span<const Vertex> bag,
                                        const std::vector<bool>& below);

}  // namespace widthspan
