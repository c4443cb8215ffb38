#include "widthspan/arrangement.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdlib>
#include <sstream>
#include <utility>

#include "widthspan/error.hpp"

namespace widthspan {

LinearArrangement LinearArrangement::identity(int n) {
    std::vector<Vertex> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        order[static_cast<std::size_t>(i)] = i + 1;
    }
    return from_order(std::move(order));
}

LinearArrangement LinearArrangement::from_order(std::vector<Vertex> order) {
    LinearArrangement a;
    const int n = static_cast<int>(order.size());
    a.position_of_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int k = 0; k < n; ++k) {
        const Vertex v = order[static_cast<std::size_t>(k)];
        if (v < 1 || v > n) {
            throw ValidationError("arrangement vertex " + std::to_string(v) + " outside 1.." + std::to_string(n));
        }
        if (a.position_of_[static_cast<std::size_t>(v)] != 0) {
            throw ValidationError("vertex " + std::to_string(v) + " appears twice in arrangement");
        }
        a.position_of_[static_cast<std::size_t>(v)] = k + 1;
    }
    a.vertex_at_ = std::move(order);
    return a;
}

LinearArrangement load_arrangement(std::string_view text, int n) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::vector<Vertex> order;
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream tokens(line);
        std::string token;
        if (!(tokens >> token) || token == "c") {
            continue;
        }
        char* end = nullptr;
        const long v = std::strtol(token.c_str(), &end, 10);
        std::string trailing;
        if (*end != '\0' || (tokens >> trailing)) {
            throw ParseError(line_no, "expected a single vertex id");
        }
        if (v < 1 || v > n) {
            throw ValidationError("vertex " + token + " outside 1.." + std::to_string(n), line_no);
        }
        if (seen[static_cast<std::size_t>(v)]) {
            throw ValidationError("vertex " + token + " placed twice", line_no);
        }
        seen[static_cast<std::size_t>(v)] = true;
        order.push_back(static_cast<Vertex>(v));
    }
    if (static_cast<int>(order.size()) != n) {
        throw ValidationError("arrangement lists " + std::to_string(order.size()) + " vertices, graph has " +
                              std::to_string(n));
    }
    return LinearArrangement::from_order(std::move(order));
}

LinearArrangement load_arrangement_file(const std::string& path, int n) {
    return load_arrangement(read_text_file(path), n);
}

std::string serialize_arrangement(const LinearArrangement& a) {
    std::ostringstream out;
    for (Vertex v : a.order()) {
        out << v << '\n';
    }
    return out.str();
}

void require_matching(const Graph& g, const LinearArrangement& a) {
    if (a.size() != g.num_vertices()) {
        throw ValidationError("arrangement has " + std::to_string(a.size()) + " positions, graph has " +
                              std::to_string(g.num_vertices()) + " vertices");
    }
}

int spread(const Graph& g, const LinearArrangement& a, EdgeId e) {
    const auto& ed = g.edge(e);
    return std::abs(a.position_of(ed.u) - a.position_of(ed.v));
}

std::vector<int> gap_loads(const Graph& g, const LinearArrangement& a) {
    const int n = g.num_vertices();
    std::vector<int> delta(static_cast<std::size_t>(n) + 2, 0);
    for (const auto& e : g.edges()) {
        auto [lo, hi] = std::minmax({a.position_of(e.u), a.position_of(e.v)});
        ++delta[static_cast<std::size_t>(lo)];
        --delta[static_cast<std::size_t>(hi)];
    }
    std::vector<int> loads(static_cast<std::size_t>(std::max(n, 1)), 0);
    int running = 0;
    for (int i = 1; i < n; ++i) {
        running += delta[static_cast<std::size_t>(i)];
        loads[static_cast<std::size_t>(i)] = running;
    }
    return loads;
}

Widths widths(const Graph& g, const LinearArrangement& a) {
    require_matching(g, a);
    Widths w;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        w.bandwidth = std::max(w.bandwidth, spread(g, a, e));
    }
    for (int load : gap_loads(g, a)) {
        w.cutwidth = std::max(w.cutwidth, load);
    }
    return w;
}

std::int64_t total_spread(const Graph& g, const LinearArrangement& a) {
    std::int64_t total = 0;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        total += spread(g, a, e);
    }
    return total;
}

int left_block_size(int size) {
    return static_cast<int>(std::bit_floor(static_cast<unsigned>(size - 1)));
}

int ceil_power_of_two(int x) {
    return static_cast<int>(std::bit_ceil(static_cast<unsigned>(std::max(x, 1))));
}

ArrangementTree::ArrangementTree(const Graph& g, const LinearArrangement& a) {
    require_matching(g, a);
    const int n = g.num_vertices();
    if (n > 0) {
        nodes_.reserve(static_cast<std::size_t>(2 * n - 1));
        build(1, n, -1);
    }
    edge_node_.assign(static_cast<std::size_t>(g.num_edges()), -1);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        const auto& ed = g.edge(e);
        const int node = split_node(a.position_of(ed.u), a.position_of(ed.v));
        edge_node_[static_cast<std::size_t>(e)] = node;
        nodes_[static_cast<std::size_t>(node)].split_edges.push_back(e);
    }
}

int ArrangementTree::build(int lo, int hi, int parent) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(ArrangementNode{lo, hi, 0, -1, -1, parent, {}});
    if (hi > lo) {
        const int p = left_block_size(hi - lo + 1);
        const int left = build(lo, lo + p - 1, id);
        const int right = build(lo + p, hi, id);
        auto& node = nodes_[static_cast<std::size_t>(id)];
        node.left = left;
        node.right = right;
        node.height = 1 + std::max(nodes_[static_cast<std::size_t>(left)].height,
                                   nodes_[static_cast<std::size_t>(right)].height);
    }
    return id;
}

int ArrangementTree::split_node(int position_a, int position_b) const {
    auto [lo, hi] = std::minmax(position_a, position_b);
    int id = root();
    while (true) {
        const auto& node = nodes_[static_cast<std::size_t>(id)];
        if (node.is_leaf()) {
            return id;
        }
        const auto& left = nodes_[static_cast<std::size_t>(node.left)];
        if (hi <= left.hi) {
            id = node.left;
        } else if (lo > left.hi) {
            id = node.right;
        } else {
            return id;
        }
    }
}

std::vector<int> ArrangementTree::postorder() const {
    // Preorder reversed lists every child before its parent.
    std::vector<int> order(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        order[i] = static_cast<int>(nodes_.size() - 1 - i);
    }
    return order;
}

SplitHeight split_height(int i, int j, int n_total) {
    if (i < 1 || i >= j || j > n_total) {
        throw std::out_of_range("split_height needs 1 <= i < j <= n_total");
    }
    const auto diff = static_cast<unsigned>((i - 1) ^ (j - 1));
    const int height = std::bit_width(diff);
    return SplitHeight{height, 1 << (height - 1)};
}

PaddedArrangement::PaddedArrangement(LinearArrangement base_arrangement, int shift_value)
    : base(std::move(base_arrangement)), n_prime(padded_size(base.size())), shift(shift_value) {
    if (shift < 0 || shift >= shift_count(base.size())) {
        throw ValidationError("shift " + std::to_string(shift) + " outside 0.." +
                                std::to_string(shift_count(base.size()) - 1));
    }
}

int PaddedArrangement::padded_size(int n) {
    return ceil_power_of_two(2 * std::max(n, 1));
}

int PaddedArrangement::shift_count(int n) {
    return padded_size(n) - n;
}

}  // namespace widthspan
