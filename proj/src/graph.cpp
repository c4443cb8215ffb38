#include "widthspan/graph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "widthspan/error.hpp"
#include "widthspan/union_find.hpp"

namespace widthspan {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n < 0) {
        throw ValidationError("negative vertex count");
    }
    std::set<std::pair<Vertex, Vertex>> seen;
    for (auto& e : edges_) {
        if (e.u < 1 || e.u > n || e.v < 1 || e.v > n) {
            throw ValidationError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                                  ") has an endpoint outside 1.." + std::to_string(n));
        }
        if (e.u == e.v) {
            throw ValidationError("self-loop at vertex " + std::to_string(e.u));
        }
        if (e.u > e.v) {
            std::swap(e.u, e.v);
        }
        if (!seen.emplace(e.u, e.v).second) {
            throw ValidationError("duplicate edge (" + std::to_string(e.u) + ", " +
                                  std::to_string(e.v) + ")");
        }
    }

    std::vector<std::size_t> counts(static_cast<std::size_t>(n) + 2, 0);
    for (const auto& e : edges_) {
        ++counts[static_cast<std::size_t>(e.u)];
        ++counts[static_cast<std::size_t>(e.v)];
    }
    offsets_.assign(static_cast<std::size_t>(n) + 2, 0);
    for (int v = 1; v <= n; ++v) {
        offsets_[static_cast<std::size_t>(v) + 1] = offsets_[static_cast<std::size_t>(v)] + counts[static_cast<std::size_t>(v)];
    }
    incidence_.assign(2 * edges_.size(), 0);
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end());
    for (EdgeId id = 0; id < num_edges(); ++id) {
        const auto& e = edges_[static_cast<std::size_t>(id)];
        incidence_[fill[static_cast<std::size_t>(e.u)]++] = id;
        incidence_[fill[static_cast<std::size_t>(e.v)]++] = id;
    }

    UnionFind uf(n + 1);
    int components = n;
    for (const auto& e : edges_) {
        if (uf.unite(e.u, e.v)) {
            --components;
        }
    }
    connected_ = components <= 1;
}

std::span<const EdgeId> Graph::incident_edges(Vertex v) const {
    const auto lo = offsets_[static_cast<std::size_t>(v)];
    const auto hi = offsets_[static_cast<std::size_t>(v) + 1];
    return std::span<const EdgeId>(incidence_).subspan(lo, hi - lo);
}

Vertex Graph::opposite(EdgeId e, Vertex v) const {
    const auto& ed = edge(e);
    return ed.u == v ? ed.v : ed.u;
}

std::optional<EdgeId> Graph::find_edge(Vertex a, Vertex b) const {
    if (a < 1 || b < 1 || a > n_ || b > n_ || a == b) {
        return std::nullopt;
    }
    if (degree(a) > degree(b)) {
        std::swap(a, b);
    }
    for (EdgeId e : incident_edges(a)) {
        if (opposite(e, a) == b) {
            return e;
        }
    }
    return std::nullopt;
}

void require_connected(const Graph& g) {
    if (!g.connected()) {
        throw ValidationError("graph is disconnected");
    }
}

namespace {

bool is_blank(std::string_view line) {
    return std::all_of(line.begin(), line.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

}  // namespace

Graph load_graph(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    int header_line = 0;
    long long n = -1;
    long long m = -1;
    std::vector<Edge> edges;
    std::set<std::pair<Vertex, Vertex>> seen;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (is_blank(line)) {
            continue;
        }
        std::istringstream tokens(line);
        std::string kind;
        tokens >> kind;
        if (kind == "c") {
            continue;
        }
        if (kind == "p") {
            if (header_line != 0) {
                throw ParseError(line_no, "second 'p' header");
            }
            std::string first;
            tokens >> first;
            if (first == "edge" || first == "tw") {
                tokens >> n >> m;
            } else {
                std::istringstream(first) >> n;
                tokens >> m;
            }
            std::string trailing;
            if (!tokens || n < 0 || m < 0 || (tokens >> trailing)) {
                throw ParseError(line_no, "expected 'p <n> <m>'");
            }
            header_line = line_no;
            edges.reserve(static_cast<std::size_t>(m));
            continue;
        }
        if (kind == "e") {
            if (header_line == 0) {
                throw ParseError(line_no, "edge line before 'p' header");
            }
            long long u = 0;
            long long v = 0;
            std::string trailing;
            if (!(tokens >> u >> v) || (tokens >> trailing)) {
                throw ParseError(line_no, "expected 'e <u> <v>'");
            }
            if (u < 1 || v < 1 || u > n || v > n) {
                throw ValidationError("vertex out of range 1.." + std::to_string(n), line_no);
            }
            if (u == v) {
                throw ValidationError("self-loop at vertex " + std::to_string(u), line_no);
            }
            const std::pair<Vertex, Vertex> key = std::minmax({static_cast<Vertex>(u), static_cast<Vertex>(v)});
            if (!seen.insert(key).second) {
                throw ValidationError("duplicate edge (" + std::to_string(key.first) + ", " +
                                          std::to_string(key.second) + ")",
                                      line_no);
            }
            if (static_cast<long long>(edges.size()) >= m) {
                throw ParseError(line_no, "more edges than declared in header");
            }
            edges.push_back(Edge{static_cast<Vertex>(u), static_cast<Vertex>(v)});
            continue;
        }
        throw ParseError(line_no, "unrecognised line type '" + kind + "'");
    }
    if (header_line == 0) {
        throw ParseError(0, "missing 'p <n> <m>' header");
    }
    if (static_cast<long long>(edges.size()) != m) {
        throw ParseError(line_no, "header declares " + std::to_string(m) + " edges, found " +
                                      std::to_string(edges.size()));
    }
    Graph g(static_cast<int>(n), std::move(edges));
    if (!g.connected()) {
        throw ValidationError("graph is disconnected", header_line);
    }
    return g;
}

Graph load_graph_file(const std::string& path) {
    return load_graph(read_text_file(path));
}

std::string serialize_graph(const Graph& g) {
    std::ostringstream out;
    out << "p " << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (const auto& e : g.edges()) {
        out << "e " << e.u << ' ' << e.v << '\n';
    }
    return out.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace widthspan
