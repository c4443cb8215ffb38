#include "widthspan/tree_decomposition.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <set>
#include <sstream>

#include "widthspan/error.hpp"
#include "widthspan/union_find.hpp"

namespace widthspan {

namespace {

std::string bag_name(int index) { return "bag " + std::to_string(index + 1); }

int max_bag_size(const std::vector<std::vector<Vertex>>& bags) {
    std::size_t best = 0;
    for (const auto& b : bags) {
        best = std::max(best, b.size());
    }
    return static_cast<int>(best);
}

}  // namespace

int TreeDecomposition::width() const { return max_bag_size(bags) - 1; }

void validate_decomposition(const Graph& g, const TreeDecomposition& td) {
    const int n = g.num_vertices();
    const int count = static_cast<int>(td.bags.size());
    if (td.num_vertices != n) {
        throw ValidationError("decomposition is for " + std::to_string(td.num_vertices) + " vertices, graph has " +
                              std::to_string(n));
    }
    if (count == 0) {
        throw ValidationError("decomposition has no bags");
    }
    std::vector<std::vector<int>> bags_of(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i < count; ++i) {
        const auto& bag = td.bags[static_cast<std::size_t>(i)];
        for (std::size_t k = 0; k < bag.size(); ++k) {
            const Vertex v = bag[k];
            if (v < 1 || v > n) {
                throw ValidationError(bag_name(i) + " contains vertex " + std::to_string(v) + " outside 1.." +
                                      std::to_string(n));
            }
            if (k > 0 && bag[k - 1] >= v) {
                throw ValidationError(bag_name(i) + " is not sorted or repeats vertex " + std::to_string(v));
            }
            bags_of[static_cast<std::size_t>(v)].push_back(i);
        }
    }

    if (static_cast<int>(td.edges.size()) != count - 1) {
        throw ValidationError("bag tree has " + std::to_string(td.edges.size()) + " edges for " +
                              std::to_string(count) + " bags");
    }
    UnionFind uf(count);
    for (const auto& [a, b] : td.edges) {
        if (a < 0 || a >= count || b < 0 || b >= count) {
            throw ValidationError("bag tree edge refers to a missing bag");
        }
        if (!uf.unite(a, b)) {
            throw ValidationError("bag tree has a cycle through " + bag_name(a) + " and " + bag_name(b));
        }
    }

    auto contains = [&](int bag, Vertex v) {
        const auto& b = td.bags[static_cast<std::size_t>(bag)];
        return std::binary_search(b.begin(), b.end(), v);
    };
    for (Vertex v = 1; v <= n; ++v) {
        if (bags_of[static_cast<std::size_t>(v)].empty()) {
            throw ValidationError("vertex " + std::to_string(v) + " is in no bag");
        }
    }
    for (const auto& e : g.edges()) {
        const auto& list = bags_of[static_cast<std::size_t>(e.u)];
        const bool covered = std::any_of(list.begin(), list.end(), [&](int bag) { return contains(bag, e.v); });
        if (!covered) {
            throw ValidationError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                                  ") is not covered by any bag");
        }
    }
    // In a tree, the bags holding v are connected iff they span exactly
    // (count - 1) tree edges.
    std::vector<int> inner_edges(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& [a, b] : td.edges) {
        for (Vertex v : td.bags[static_cast<std::size_t>(a)]) {
            if (contains(b, v)) {
                ++inner_edges[static_cast<std::size_t>(v)];
            }
        }
    }
    for (Vertex v = 1; v <= n; ++v) {
        const auto holding = static_cast<int>(bags_of[static_cast<std::size_t>(v)].size());
        if (inner_edges[static_cast<std::size_t>(v)] != holding - 1) {
            throw ValidationError("bags containing vertex " + std::to_string(v) + " are not connected");
        }
    }
}

TreeDecomposition load_td(std::string_view text) {
    TreeDecomposition td;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    int declared_bags = -1;
    int declared_size = -1;
    int header_line = 0;
    std::vector<bool> seen;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::string head;
        if (!(fields >> head) || head == "c") {
            continue;
        }
        if (head == "s") {
            std::string kind;
            if (declared_bags >= 0) {
                throw ParseError(line_no, "second solution line");
            }
            if (!(fields >> kind >> declared_bags >> declared_size >> td.num_vertices) || kind != "td" ||
                declared_bags < 0 || declared_size < 0 || td.num_vertices < 0) {
                throw ParseError(line_no, "expected 's td <bags> <width+1> <n>'");
            }
            td.bags.assign(static_cast<std::size_t>(declared_bags), {});
            seen.assign(static_cast<std::size_t>(declared_bags), false);
            header_line = line_no;
            continue;
        }
        if (declared_bags < 0) {
            throw ParseError(line_no, "content before the 's td' line");
        }
        if (head == "b") {
            int id = 0;
            if (!(fields >> id) || id < 1 || id > declared_bags) {
                throw ParseError(line_no, "bag id out of range");
            }
            if (seen[static_cast<std::size_t>(id - 1)]) {
                throw ParseError(line_no, "bag " + std::to_string(id) + " defined twice");
            }
            seen[static_cast<std::size_t>(id - 1)] = true;
            auto& bag = td.bags[static_cast<std::size_t>(id - 1)];
            long long v = 0;
            while (fields >> v) {
                if (v < 1 || v > td.num_vertices) {
                    throw ParseError(line_no, "vertex " + std::to_string(v) + " out of range");
                }
                bag.push_back(static_cast<Vertex>(v));
            }
            if (!fields.eof()) {
                throw ParseError(line_no, "malformed bag line");
            }
            std::sort(bag.begin(), bag.end());
            if (std::adjacent_find(bag.begin(), bag.end()) != bag.end()) {
                throw ParseError(line_no, "bag " + std::to_string(id) + " repeats a vertex");
            }
            continue;
        }
        int a = 0;
        int b = 0;
        std::string rest;
        std::istringstream edge_fields(line);
        if (!(edge_fields >> a >> b) || (edge_fields >> rest)) {
            throw ParseError(line_no, "expected '<bag> <bag>'");
        }
        if (a < 1 || a > declared_bags || b < 1 || b > declared_bags || a == b) {
            throw ParseError(line_no, "bag tree edge (" + std::to_string(a) + ", " + std::to_string(b) + ") invalid");
        }
        td.edges.emplace_back(a - 1, b - 1);
    }
    if (declared_bags < 0) {
        throw ParseError(0, "missing 's td' line");
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (!seen[i]) {
            throw ParseError(header_line, "bag " + std::to_string(i + 1) + " is never defined");
        }
    }
    if (declared_bags > 0 && max_bag_size(td.bags) != declared_size) {
        throw ValidationError("declared bag size " + std::to_string(declared_size) + " but largest bag has " +
                                  std::to_string(max_bag_size(td.bags)),
                              header_line);
    }
    return td;
}

TreeDecomposition load_td_file(const std::string& path) { return load_td(read_text_file(path)); }

std::string serialize_td(const TreeDecomposition& td) {
    std::ostringstream out;
    out << "s td " << td.bags.size() << ' ' << max_bag_size(td.bags) << ' ' << td.num_vertices << '\n';
    for (std::size_t i = 0; i < td.bags.size(); ++i) {
        out << "b " << i + 1;
        for (Vertex v : td.bags[i]) {
            out << ' ' << v;
        }
        out << '\n';
    }
    for (const auto& [a, b] : td.edges) {
        out << a + 1 << ' ' << b + 1 << '\n';
    }
    return out.str();
}

TreeDecomposition path_decomposition(const Graph& g, const LinearArrangement& a) {
    require_matching(g, a);
    const int n = g.num_vertices();
    const int b = widths(g, a).bandwidth;
    TreeDecomposition td;
    td.num_vertices = n;
    const int count = std::max(1, n - b);
    for (int start = 1; start <= count; ++start) {
        std::vector<Vertex> bag;
        for (int pos = start; pos <= std::min(n, start + b); ++pos) {
            bag.push_back(a.vertex_at(pos));
        }
        std::sort(bag.begin(), bag.end());
        td.bags.push_back(std::move(bag));
        if (start > 1) {
            td.edges.emplace_back(start - 2, start - 1);
        }
    }
    return td;
}

TreeDecomposition elimination_decomposition(const Graph& g, const std::vector<Vertex>& order) {
    const int n = g.num_vertices();
    LinearArrangement::from_order(order);  // validates the permutation
    std::vector<int> rank(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i < n; ++i) {
        rank[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
    }
    std::vector<std::set<Vertex>> adj(static_cast<std::size_t>(n) + 1);
    for (const auto& e : g.edges()) {
        adj[static_cast<std::size_t>(e.u)].insert(e.v);
        adj[static_cast<std::size_t>(e.v)].insert(e.u);
    }
    TreeDecomposition td;
    td.num_vertices = n;
    td.bags.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const Vertex v = order[static_cast<std::size_t>(i)];
        std::vector<Vertex> later;
        for (Vertex w : adj[static_cast<std::size_t>(v)]) {
            if (rank[static_cast<std::size_t>(w)] > i) {
                later.push_back(w);
            }
        }
        for (Vertex x : later) {
            for (Vertex y : later) {
                if (x != y) {
                    adj[static_cast<std::size_t>(x)].insert(y);
                }
            }
        }
        auto& bag = td.bags[static_cast<std::size_t>(i)];
        bag = later;
        bag.push_back(v);
        std::sort(bag.begin(), bag.end());
        if (i + 1 < n) {
            int parent = n - 1;
            for (Vertex w : later) {
                parent = std::min(parent, rank[static_cast<std::size_t>(w)]);
            }
            td.edges.emplace_back(i, parent);
        }
    }
    return td;
}

std::vector<Vertex> min_degree_order(const Graph& g) {
    const int n = g.num_vertices();
    std::vector<std::set<Vertex>> adj(static_cast<std::size_t>(n) + 1);
    for (const auto& e : g.edges()) {
        adj[static_cast<std::size_t>(e.u)].insert(e.v);
        adj[static_cast<std::size_t>(e.v)].insert(e.u);
    }
    std::vector<bool> done(static_cast<std::size_t>(n) + 1, false);
    std::vector<Vertex> order;
    for (int step = 0; step < n; ++step) {
        Vertex best = 0;
        for (Vertex v = 1; v <= n; ++v) {
            if (!done[static_cast<std::size_t>(v)] &&
                (best == 0 || adj[static_cast<std::size_t>(v)].size() < adj[static_cast<std::size_t>(best)].size())) {
                best = v;
            }
        }
        done[static_cast<std::size_t>(best)] = true;
        order.push_back(best);
        const std::vector<Vertex> nbrs(adj[static_cast<std::size_t>(best)].begin(),
                                       adj[static_cast<std::size_t>(best)].end());
        for (Vertex x : nbrs) {
            adj[static_cast<std::size_t>(x)].erase(best);
            for (Vertex y : nbrs) {
                if (x != y) {
                    adj[static_cast<std::size_t>(x)].insert(y);
                }
            }
        }
    }
    return order;
}

std::vector<Vertex> exact_elimination_order(const Graph& g) {
    const int n = g.num_vertices();
    if (n > 9) {
        throw ValidationError("exhaustive elimination search is limited to 9 vertices");
    }
    std::vector<std::uint32_t> base(static_cast<std::size_t>(n), 0);
    for (const auto& e : g.edges()) {
        base[static_cast<std::size_t>(e.u - 1)] |= 1u << (e.v - 1);
        base[static_cast<std::size_t>(e.v - 1)] |= 1u << (e.u - 1);
    }
    std::vector<Vertex> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<Vertex> best = perm;
    int best_width = n;
    do {
        auto adj = base;
        std::uint32_t remaining = n >= 32 ? ~0u : (1u << n) - 1;
        int width = 0;
        for (Vertex v : perm) {
            const int i = v - 1;
            remaining &= ~(1u << i);
            const std::uint32_t later = adj[static_cast<std::size_t>(i)] & remaining;
            width = std::max(width, std::popcount(later));
            if (width >= best_width) {
                break;
            }
            for (std::uint32_t rest = later; rest != 0; rest &= rest - 1) {
                const int x = std::countr_zero(rest);
                adj[static_cast<std::size_t>(x)] |= later & ~(1u << x);
            }
        }
        if (width < best_width) {
            best_width = width;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

int NiceTreeDecomposition::width() const {
    std::size_t best = 0;
    for (const auto& node : nodes) {
        best = std::max(best, node.bag.size());
    }
    return static_cast<int>(best) - 1;
}

std::vector<int> NiceTreeDecomposition::below_counts() const {
    std::vector<int> counts(nodes.size(), 0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& node = nodes[i];
        switch (node.kind) {
            case NiceKind::leaf:
                counts[i] = 1;
                break;
            case NiceKind::introduce:
                counts[i] = counts[static_cast<std::size_t>(node.left)] + 1;
                break;
            case NiceKind::forget:
                counts[i] = counts[static_cast<std::size_t>(node.left)];
                break;
            case NiceKind::join:
                counts[i] = counts[static_cast<std::size_t>(node.left)] + counts[static_cast<std::size_t>(node.right)] -
                            static_cast<int>(node.bag.size());
                break;
        }
    }
    return counts;
}

namespace {

class NiceBuilder {
public:
    explicit NiceBuilder(NiceTreeDecomposition& out) : out_(out) {}

    int add(NiceKind kind, std::vector<Vertex> bag, Vertex vertex, int left, int right = -1) {
        out_.nodes.push_back(NiceNode{kind, std::move(bag), vertex, left, right});
        return static_cast<int>(out_.nodes.size()) - 1;
    }

    // Forget child-only vertices, then introduce parent-only ones.
    int chain(int top, const std::vector<Vertex>& target) {
        std::vector<Vertex> bag = out_.nodes[static_cast<std::size_t>(top)].bag;
        std::vector<Vertex> drop;
        std::vector<Vertex> gain;
        std::set_difference(bag.begin(), bag.end(), target.begin(), target.end(), std::back_inserter(drop));
        std::set_difference(target.begin(), target.end(), bag.begin(), bag.end(), std::back_inserter(gain));
        for (Vertex v : drop) {
            bag.erase(std::find(bag.begin(), bag.end(), v));
            top = add(NiceKind::forget, bag, v, top);
        }
        for (Vertex v : gain) {
            bag.insert(std::upper_bound(bag.begin(), bag.end(), v), v);
            top = add(NiceKind::introduce, bag, v, top);
        }
        return top;
    }

    int leaf_chain(const std::vector<Vertex>& target) {
        const int leaf = add(NiceKind::leaf, {target.front()}, target.front(), -1);
        return chain(leaf, target);
    }

private:
    NiceTreeDecomposition& out_;
};

}  // namespace

NiceTreeDecomposition make_nice(const Graph& g, const TreeDecomposition& td) {
    validate_decomposition(g, td);
    require_connected(g);
    const int count = static_cast<int>(td.bags.size());

    std::vector<std::set<int>> adj(static_cast<std::size_t>(count));
    for (const auto& [a, b] : td.edges) {
        adj[static_cast<std::size_t>(a)].insert(b);
        adj[static_cast<std::size_t>(b)].insert(a);
    }
    // Splice out empty bags, chaining their neighbours.
    std::vector<bool> alive(static_cast<std::size_t>(count), true);
    for (int x = 0; x < count; ++x) {
        if (!td.bags[static_cast<std::size_t>(x)].empty()) {
            continue;
        }
        const std::vector<int> nbrs(adj[static_cast<std::size_t>(x)].begin(), adj[static_cast<std::size_t>(x)].end());
        for (int y : nbrs) {
            adj[static_cast<std::size_t>(y)].erase(x);
        }
        for (std::size_t k = 1; k < nbrs.size(); ++k) {
            adj[static_cast<std::size_t>(nbrs[k - 1])].insert(nbrs[k]);
            adj[static_cast<std::size_t>(nbrs[k])].insert(nbrs[k - 1]);
        }
        adj[static_cast<std::size_t>(x)].clear();
        alive[static_cast<std::size_t>(x)] = false;
    }

    int root = -1;
    for (int x = 0; x < count; ++x) {
        if (alive[static_cast<std::size_t>(x)] &&
            (root < 0 || td.bags[static_cast<std::size_t>(x)].size() > td.bags[static_cast<std::size_t>(root)].size())) {
            root = x;
        }
    }

    // Iterative DFS for a parent-before-child order, processed in reverse.
    std::vector<int> parent(static_cast<std::size_t>(count), -1);
    std::vector<int> order;
    std::vector<int> stack{root};
    parent[static_cast<std::size_t>(root)] = root;
    while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        order.push_back(x);
        for (int y : adj[static_cast<std::size_t>(x)]) {
            if (parent[static_cast<std::size_t>(y)] < 0) {
                parent[static_cast<std::size_t>(y)] = x;
                stack.push_back(y);
            }
        }
    }

    NiceTreeDecomposition nice;
    NiceBuilder builder(nice);
    std::vector<int> top(static_cast<std::size_t>(count), -1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int x = *it;
        const auto& bag = td.bags[static_cast<std::size_t>(x)];
        int acc = -1;
        for (int y : adj[static_cast<std::size_t>(x)]) {
            if (y == parent[static_cast<std::size_t>(x)]) {
                continue;
            }
            const int branch = builder.chain(top[static_cast<std::size_t>(y)], bag);
            acc = acc < 0 ? branch : builder.add(NiceKind::join, bag, 0, acc, branch);
        }
        top[static_cast<std::size_t>(x)] = acc < 0 ? builder.leaf_chain(bag) : acc;
    }
    const auto& root_bag = td.bags[static_cast<std::size_t>(root)];
    builder.chain(top[static_cast<std::size_t>(root)], {root_bag.front()});
    return nice;
}

void validate_nice(const Graph& g, const NiceTreeDecomposition& ntd) {
    const auto count = static_cast<int>(ntd.nodes.size());
    if (count == 0) {
        throw ValidationError("nice decomposition is empty");
    }
    std::vector<int> uses(static_cast<std::size_t>(count), 0);
    TreeDecomposition td;
    td.num_vertices = g.num_vertices();
    auto fail = [](int i, const std::string& what) {
        throw ValidationError("nice node " + std::to_string(i) + ": " + what);
    };
    for (int i = 0; i < count; ++i) {
        const auto& node = ntd.nodes[static_cast<std::size_t>(i)];
        td.bags.push_back(node.bag);
        for (int child : {node.left, node.right}) {
            if (child < 0) {
                continue;
            }
            if (child >= i) {
                fail(i, "child does not precede its parent");
            }
            ++uses[static_cast<std::size_t>(child)];
            td.edges.emplace_back(child, i);
        }
        const bool has_left = node.left >= 0;
        const bool has_right = node.right >= 0;
        auto with = [&](std::vector<Vertex> bag, Vertex v) {
            bag.insert(std::upper_bound(bag.begin(), bag.end(), v), v);
            return bag;
        };
        switch (node.kind) {
            case NiceKind::leaf:
                if (has_left || has_right || node.bag.size() != 1) {
                    fail(i, "leaf must be a childless singleton");
                }
                break;
            case NiceKind::introduce: {
                if (!has_left || has_right) {
                    fail(i, "introduce needs exactly one child");
                }
                const auto& child = ntd.nodes[static_cast<std::size_t>(node.left)].bag;
                if (std::binary_search(child.begin(), child.end(), node.vertex) ||
                    with(child, node.vertex) != node.bag) {
                    fail(i, "bag is not child bag plus vertex " + std::to_string(node.vertex));
                }
                break;
            }
            case NiceKind::forget: {
                if (!has_left || has_right) {
                    fail(i, "forget needs exactly one child");
                }
                const auto& child = ntd.nodes[static_cast<std::size_t>(node.left)].bag;
                if (std::binary_search(node.bag.begin(), node.bag.end(), node.vertex) ||
                    with(node.bag, node.vertex) != child) {
                    fail(i, "bag is not child bag minus vertex " + std::to_string(node.vertex));
                }
                break;
            }
            case NiceKind::join:
                if (!has_left || !has_right) {
                    fail(i, "join needs two children");
                }
                if (ntd.nodes[static_cast<std::size_t>(node.left)].bag != node.bag ||
                    ntd.nodes[static_cast<std::size_t>(node.right)].bag != node.bag) {
                    fail(i, "join children must have the parent's bag");
                }
                break;
        }
    }
    for (int i = 0; i + 1 < count; ++i) {
        if (uses[static_cast<std::size_t>(i)] != 1) {
            fail(i, "must have exactly one parent");
        }
    }
    if (ntd.nodes.back().bag.size() != 1) {
        fail(count - 1, "root bag must hold exactly one vertex");
    }
    validate_decomposition(g, td);
}

std::string nice_kind_name(NiceKind kind) {
    switch (kind) {
        case NiceKind::leaf:
            return "leaf";
        case NiceKind::introduce:
            return "introduce";
        case NiceKind::forget:
            return "forget";
        case NiceKind::join:
            return "join";
    }
    return "unknown";
}

}  // namespace widthspan
