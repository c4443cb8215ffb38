#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace widthspan {

/// Vertices are labelled 1..n.
using Vertex = std::int32_t;
/// Edge IDs are 0..m-1, fixed at construction (file order for loaded graphs).
using EdgeId = std::int32_t;

struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/*
 * Simple undirected graph with stable edge IDs. Immutable after construction.
 *
 * The constructor rejects self-loops, duplicate edges and out-of-range
 * endpoints; endpoints are stored with u < v. Connectivity is computed once and
 * queried with connected(); algorithms that need it call require_connected().
 */
class Graph {
public:
    Graph() = default;
    Graph(int n, std::vector<Edge> edges);

    int num_vertices() const noexcept { return n_; }
    int num_edges() const noexcept { return static_cast<int>(edges_.size()); }

    const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
    std::span<const Edge> edges() const noexcept { return edges_; }

    std::span<const EdgeId> incident_edges(Vertex v) const;
    int degree(Vertex v) const { return static_cast<int>(incident_edges(v).size()); }
    Vertex opposite(EdgeId e, Vertex v) const;

    std::optional<EdgeId> find_edge(Vertex a, Vertex b) const;
    bool has_edge(Vertex a, Vertex b) const { return find_edge(a, b).has_value(); }

    bool connected() const noexcept { return connected_; }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_;
    std::vector<EdgeId> incidence_;
    bool connected_ = true;
};

/// Throws ValidationError if g is disconnected.
void require_connected(const Graph& g);

/// Parses the line-oriented edge-list format (`c` comments, `p <n> <m>`,
/// `e <u> <v>`). Errors carry the offending line number. The result is
/// guaranteed simple and connected.
Graph load_graph(std::string_view text);
Graph load_graph_file(const std::string& path);

std::string serialize_graph(const Graph& g);

/// Reads a whole file into memory; throws std::runtime_error on I/O failure.
std::string read_text_file(const std::string& path);

}  // namespace widthspan
