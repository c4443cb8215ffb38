#include "widthspan/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <tuple>

namespace widthspan {

BigInt spanning_tree_count(const Graph& g) {
    const int n = g.num_vertices();
    if (n <= 1) {
        return 1;
    }
    const int size = n - 1;
    // Rows/columns are vertices 2..n.
    std::vector<std::vector<BigInt>> mat(static_cast<std::size_t>(size), std::vector<BigInt>(static_cast<std::size_t>(size)));
    for (const auto& e : g.edges()) {
        for (auto [x, y] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
            if (x == 1) {
                continue;
            }
            const auto r = static_cast<std::size_t>(x - 2);
            mat[r][r] += 1;
            if (y != 1) {
                mat[r][static_cast<std::size_t>(y - 2)] -= 1;
            }
        }
    }
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k < mat.size(); ++k) {
        if (mat[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < mat.size() && mat[swap_row][k] == 0) {
                ++swap_row;
            }
            if (swap_row == mat.size()) {
                return 0;
            }
            std::swap(mat[k], mat[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < mat.size(); ++i) {
            for (std::size_t j = k + 1; j < mat.size(); ++j) {
                mat[i][j] = (mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j]) / prev;
            }
        }
        prev = mat[k][k];
    }
    return sign * mat.back().back();
}

namespace {

// Sum over all edges of the tree distance, by BFS from every vertex.
std::int64_t total_tree_stretch(const Graph& g, const std::vector<EdgeId>& tree) {
    const int n = g.num_vertices();
    std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n) + 1);
    for (EdgeId e : tree) {
        adj[static_cast<std::size_t>(g.edge(e).u)].push_back(g.edge(e).v);
        adj[static_cast<std::size_t>(g.edge(e).v)].push_back(g.edge(e).u);
    }
    std::int64_t total = 0;
    std::vector<int> dist(static_cast<std::size_t>(n) + 1);
    for (Vertex s = 1; s <= n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[static_cast<std::size_t>(s)] = 0;
        std::queue<Vertex> queue;
        queue.push(s);
        while (!queue.empty()) {
            const Vertex x = queue.front();
            queue.pop();
            for (Vertex y : adj[static_cast<std::size_t>(x)]) {
                if (dist[static_cast<std::size_t>(y)] < 0) {
                    dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
                    queue.push(y);
                }
            }
        }
        for (EdgeId e : g.incident_edges(s)) {
            const Vertex other = g.opposite(e, s);
            if (other > s) {
                total += dist[static_cast<std::size_t>(other)];
            }
        }
    }
    return total;
}

class Enumerator {
public:
    Enumerator(const Graph& g, OracleResult& result, bool histogram)
        : g_(g), result_(result), histogram_(histogram) {}

    void run() {
        std::vector<int> label(static_cast<std::size_t>(g_.num_vertices()) + 1);
        std::iota(label.begin(), label.end(), 0);
        recurse(0, label);
    }

private:
    // Components of chosen edges plus every undecided edge from `from` on.
    bool still_connected(EdgeId from, const std::vector<int>& label) const {
        std::vector<int> comp(label);
        auto find = [&](int x) {
            while (comp[static_cast<std::size_t>(x)] != x) {
                x = comp[static_cast<std::size_t>(x)];
            }
            return x;
        };
        int pieces = 0;
        for (Vertex v = 1; v <= g_.num_vertices(); ++v) {
            if (label[static_cast<std::size_t>(v)] == v) {
                ++pieces;
            }
        }
        // `label` maps every vertex straight to its component representative.
        for (EdgeId e = from; e < g_.num_edges() && pieces > 1; ++e) {
            const int a = find(label[static_cast<std::size_t>(g_.edge(e).u)]);
            const int b = find(label[static_cast<std::size_t>(g_.edge(e).v)]);
            if (a != b) {
                comp[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
                --pieces;
            }
        }
        return pieces == 1;
    }

    void recurse(EdgeId e, const std::vector<int>& label) {
        if (static_cast<int>(chosen_.size()) == g_.num_vertices() - 1) {
            record();
            return;
        }
        if (e == g_.num_edges()) {
            return;
        }
        const int a = label[static_cast<std::size_t>(g_.edge(e).u)];
        const int b = label[static_cast<std::size_t>(g_.edge(e).v)];
        if (a != b) {
            std::vector<int> merged(label);
            const int keep = std::min(a, b);
            const int drop = std::max(a, b);
            for (auto& x : merged) {
                if (x == drop) {
                    x = keep;
                }
            }
            chosen_.push_back(e);
            recurse(e + 1, merged);
            chosen_.pop_back();
        }
        if (still_connected(e + 1, label)) {
            recurse(e + 1, label);
        }
    }

    void record() {
        ++result_.spanning_tree_count;
        const auto total = total_tree_stretch(g_, chosen_);
        if (histogram_) {
            ++result_.histogram[total];
        }
        if (result_.argmin_trees.empty() || total < result_.min_total_stretch) {
            result_.min_total_stretch = total;
            result_.argmin_trees.assign(1, chosen_);
        } else if (total == result_.min_total_stretch) {
            result_.argmin_trees.push_back(chosen_);
        }
    }

    const Graph& g_;
    OracleResult& result_;
    bool histogram_;
    std::vector<EdgeId> chosen_;
};

}  // namespace

OracleResult enumerate_min_stretch(const Graph& g, std::uint64_t cap, bool histogram) {
    require_connected(g);
    OracleResult result;
    result.matrix_tree_count = spanning_tree_count(g);
    if (result.matrix_tree_count > cap) {
        throw CapExceeded(result.matrix_tree_count, cap);
    }
    Enumerator(g, result, histogram).run();
    return result;
}

std::vector<Rational> expected_stretch_oracle(const Graph& g, const LinearArrangement& a) {
    require_connected(g);
    require_matching(g, a);
    const int n = g.num_vertices();
    const int m = g.num_edges();
    int n_prime = 1;
    while (n_prime < 2 * n) {
        n_prime *= 2;
    }
    const int shifts = n_prime - n;
    std::vector<std::int64_t> sums(static_cast<std::size_t>(m), 0);

    for (int shift = 0; shift < shifts; ++shift) {
        std::vector<std::tuple<int, int, EdgeId>> order;
        for (EdgeId e = 0; e < m; ++e) {
            int i = shift + a.position_of(g.edge(e).u);
            int j = shift + a.position_of(g.edge(e).v);
            if (i > j) {
                std::swap(i, j);
            }
            int h = 0;
            while ((i - 1) / (1 << h) != (j - 1) / (1 << h)) {
                ++h;
            }
            order.emplace_back(h, j - i, e);
        }
        std::sort(order.begin(), order.end());

        std::vector<int> comp(static_cast<std::size_t>(n) + 1);
        std::iota(comp.begin(), comp.end(), 0);
        std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(n) + 1);
        for (const auto& [h, s, e] : order) {
            const Vertex u = g.edge(e).u;
            const Vertex v = g.edge(e).v;
            const int cu = comp[static_cast<std::size_t>(u)];
            const int cv = comp[static_cast<std::size_t>(v)];
            if (cu == cv) {
                continue;
            }
            for (auto& c : comp) {
                if (c == cv) {
                    c = cu;
                }
            }
            adj[static_cast<std::size_t>(u)].push_back(v);
            adj[static_cast<std::size_t>(v)].push_back(u);
        }

        // Walk the tree path of each edge via parent pointers from a BFS at u.
        for (EdgeId e = 0; e < m; ++e) {
            const Vertex u = g.edge(e).u;
            const Vertex v = g.edge(e).v;
            std::vector<Vertex> parent(static_cast<std::size_t>(n) + 1, 0);
            parent[static_cast<std::size_t>(u)] = u;
            std::queue<Vertex> queue;
            queue.push(u);
            while (!queue.empty()) {
                const Vertex x = queue.front();
                queue.pop();
                for (Vertex y : adj[static_cast<std::size_t>(x)]) {
                    if (parent[static_cast<std::size_t>(y)] == 0) {
                        parent[static_cast<std::size_t>(y)] = x;
                        queue.push(y);
                    }
                }
            }
            std::int64_t steps = 0;
            for (Vertex x = v; x != u; x = parent[static_cast<std::size_t>(x)]) {
                ++steps;
            }
            sums[static_cast<std::size_t>(e)] += steps;
        }
    }

    std::vector<Rational> expected;
    expected.reserve(sums.size());
    for (auto s : sums) {
        expected.emplace_back(s, shifts);
    }
    return expected;
}

}  // namespace widthspan
