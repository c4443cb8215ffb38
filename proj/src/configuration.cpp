#include "widthspan/configuration.hpp"

#include <algorithm>
#include <sstream>

#include "widthspan/error.hpp"

namespace widthspan {

namespace {

constexpr char16_t above_token = 0xFFF1;
constexpr char16_t below_token = 0xFFF2;
constexpr Vertex max_label = 0xFFF0;

Side tag_side(NodeKind kind) { return kind == NodeKind::above ? Side::above : Side::below; }

}  // namespace

Configuration Configuration::singleton(Vertex v) {
    Configuration c;
    c.add_node(NodeKind::bag, v);
    return c;
}

int Configuration::add_node(NodeKind kind, Vertex label) {
    nodes.push_back(Node{kind, kind == NodeKind::bag ? label : 0});
    return static_cast<int>(nodes.size()) - 1;
}

void Configuration::add_link(int a, int b, int cost, Side side) { links.push_back(Link{a, b, cost, side}); }

int Configuration::find_bag(Vertex v) const {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].kind == NodeKind::bag && nodes[i].label == v) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

std::vector<Vertex> Configuration::bag() const {
    std::vector<Vertex> out;
    for (const auto& node : nodes) {
        if (node.kind == NodeKind::bag) {
            out.push_back(node.label);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<int>> Configuration::incidence() const {
    std::vector<std::vector<int>> inc(nodes.size());
    for (std::size_t e = 0; e < links.size(); ++e) {
        inc[static_cast<std::size_t>(links[e].a)].push_back(static_cast<int>(e));
        inc[static_cast<std::size_t>(links[e].b)].push_back(static_cast<int>(e));
    }
    return inc;
}

int Configuration::count(NodeKind kind) const {
    return static_cast<int>(std::count_if(nodes.begin(), nodes.end(), [&](const Node& n) { return n.kind == kind; }));
}

std::int64_t Configuration::promised_above() const {
    std::int64_t total = count(NodeKind::above);
    for (const auto& link : links) {
        if (link.side == Side::above) {
            total += link.cost - 1;
        }
    }
    return total;
}

std::vector<std::int64_t> Configuration::distances_from(int from) const {
    const auto inc = incidence();
    std::vector<std::int64_t> dist(nodes.size(), -1);
    dist[static_cast<std::size_t>(from)] = 0;
    std::vector<int> stack{from};
    while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        for (int e : inc[static_cast<std::size_t>(x)]) {
            const auto& link = links[static_cast<std::size_t>(e)];
            const int y = link.a == x ? link.b : link.a;
            if (dist[static_cast<std::size_t>(y)] < 0) {
                dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + link.cost;
                stack.push_back(y);
            }
        }
    }
    return dist;
}

std::int64_t Configuration::distance(Vertex u, Vertex v) const {
    const int a = find_bag(u);
    const int b = find_bag(v);
    if (a < 0 || b < 0) {
        throw InternalError("distance query for a vertex outside the bag");
    }
    return distances_from(a)[static_cast<std::size_t>(b)];
}

void Configuration::normalize() {
    std::vector<bool> node_dead(nodes.size(), false);
    std::vector<bool> link_dead(links.size(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::vector<int>> inc(nodes.size());
        for (std::size_t e = 0; e < links.size(); ++e) {
            if (!link_dead[e]) {
                inc[static_cast<std::size_t>(links[e].a)].push_back(static_cast<int>(e));
                inc[static_cast<std::size_t>(links[e].b)].push_back(static_cast<int>(e));
            }
        }
        for (std::size_t x = 0; x < nodes.size() && !changed; ++x) {
            if (node_dead[x] || nodes[x].kind == NodeKind::bag) {
                continue;
            }
            const auto& around = inc[x];
            if (around.size() <= 1) {
                node_dead[x] = true;
                for (int e : around) {
                    link_dead[static_cast<std::size_t>(e)] = true;
                }
                changed = true;
            } else if (around.size() == 2) {
                auto& first = links[static_cast<std::size_t>(around[0])];
                const auto& second = links[static_cast<std::size_t>(around[1])];
                const int y = first.a == static_cast<int>(x) ? first.b : first.a;
                const int z = second.a == static_cast<int>(x) ? second.b : second.a;
                first = Link{y, z, first.cost + second.cost, tag_side(nodes[x].kind)};
                link_dead[static_cast<std::size_t>(around[1])] = true;
                node_dead[x] = true;
                changed = true;
            }
        }
    }
    std::vector<int> remap(nodes.size(), -1);
    std::vector<Node> kept_nodes;
    for (std::size_t x = 0; x < nodes.size(); ++x) {
        if (!node_dead[x]) {
            remap[x] = static_cast<int>(kept_nodes.size());
            kept_nodes.push_back(nodes[x]);
        }
    }
    std::vector<Link> kept_links;
    for (std::size_t e = 0; e < links.size(); ++e) {
        if (!link_dead[e]) {
            auto link = links[e];
            link.a = remap[static_cast<std::size_t>(link.a)];
            link.b = remap[static_cast<std::size_t>(link.b)];
            kept_links.push_back(link);
        }
    }
    nodes = std::move(kept_nodes);
    links = std::move(kept_links);
}

namespace {

void encode(const Configuration& c, const std::vector<std::vector<int>>& inc, int x, int from, ConfigKey& out) {
    const auto& node = c.nodes[static_cast<std::size_t>(x)];
    if (node.kind == NodeKind::bag) {
        if (node.label < 1 || node.label >= max_label) {
            throw InternalError("vertex label does not fit the key alphabet");
        }
        out.push_back(static_cast<char16_t>(node.label));
    } else {
        out.push_back(node.kind == NodeKind::above ? above_token : below_token);
    }
    std::vector<ConfigKey> blocks;
    for (int e : inc[static_cast<std::size_t>(x)]) {
        const auto& link = c.links[static_cast<std::size_t>(e)];
        const int y = link.a == x ? link.b : link.a;
        if (y == from) {
            continue;
        }
        ConfigKey block;
        block.push_back(static_cast<char16_t>(link.cost));
        block.push_back(static_cast<char16_t>(link.side));
        encode(c, inc, y, x, block);
        blocks.push_back(std::move(block));
    }
    std::sort(blocks.begin(), blocks.end());
    out.push_back(static_cast<char16_t>(blocks.size()));
    for (const auto& block : blocks) {
        out += block;
    }
}

int decode_node(const ConfigKey& key, std::size_t& pos, Configuration& c) {
    if (pos + 2 > key.size()) {
        throw InternalError("truncated configuration key");
    }
    const char16_t token = key[pos++];
    const int x = token == above_token   ? c.add_node(NodeKind::above)
                  : token == below_token ? c.add_node(NodeKind::below)
                                         : c.add_node(NodeKind::bag, static_cast<Vertex>(token));
    const int children = key[pos++];
    for (int k = 0; k < children; ++k) {
        if (pos + 2 > key.size()) {
            throw InternalError("truncated configuration key");
        }
        const int cost = key[pos++];
        const auto side = static_cast<Side>(key[pos++]);
        const int y = decode_node(key, pos, c);
        c.add_link(x, y, cost, side);
    }
    return x;
}

}  // namespace

ConfigKey Configuration::key() const {
    int root = -1;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].kind == NodeKind::bag &&
            (root < 0 || nodes[i].label < nodes[static_cast<std::size_t>(root)].label)) {
            root = static_cast<int>(i);
        }
    }
    if (root < 0) {
        throw InternalError("configuration without bag vertices");
    }
    ConfigKey out;
    encode(*this, incidence(), root, -1, out);
    return out;
}

Configuration Configuration::decode(const ConfigKey& key) {
    Configuration c;
    std::size_t pos = 0;
    decode_node(key, pos, c);
    if (pos != key.size()) {
        throw InternalError("trailing tokens in configuration key");
    }
    return c;
}

Side side_for(const Configuration& c, int a, int b, int cost, Side interior) {
    for (int x : {a, b}) {
        const auto kind = c.nodes[static_cast<std::size_t>(x)].kind;
        if (kind != NodeKind::bag) {
            return tag_side(kind);
        }
    }
    return cost == 1 ? Side::direct : interior;
}

void Configuration::validate() const {
    if (nodes.empty() || links.size() + 1 != nodes.size()) {
        throw InternalError("configuration is not a tree: " + to_string());
    }
    const auto dist = distances_from(0);
    if (std::any_of(dist.begin(), dist.end(), [](std::int64_t d) { return d < 0; })) {
        throw InternalError("configuration is disconnected: " + to_string());
    }
    const auto inc = incidence();
    for (std::size_t x = 0; x < nodes.size(); ++x) {
        if (nodes[x].kind != NodeKind::bag && inc[x].size() < 3) {
            throw InternalError("Steiner vertex of degree < 3: " + to_string());
        }
    }
    for (const auto& link : links) {
        if (link.cost < 1) {
            throw InternalError("non-positive edge cost: " + to_string());
        }
        const auto ka = nodes[static_cast<std::size_t>(link.a)].kind;
        const auto kb = nodes[static_cast<std::size_t>(link.b)].kind;
        if (ka != NodeKind::bag && kb != NodeKind::bag && ka != kb) {
            throw InternalError("above and below Steiner vertices adjacent: " + to_string());
        }
        const Side wanted = side_for(*this, link.a, link.b, link.cost, link.side);
        if (link.side != wanted || (link.side == Side::direct && link.cost != 1)) {
            throw InternalError("inconsistent edge tag: " + to_string());
        }
    }
}

std::string Configuration::to_string() const {
    auto name = [&](int x) -> std::string {
        const auto& node = nodes[static_cast<std::size_t>(x)];
        if (node.kind == NodeKind::bag) {
            return std::to_string(node.label);
        }
        return (node.kind == NodeKind::above ? "A" : "B") + std::to_string(x);
    };
    std::ostringstream out;
    out << '{';
    if (links.empty() && !nodes.empty()) {
        out << name(0);
    }
    for (std::size_t e = 0; e < links.size(); ++e) {
        const auto& link = links[e];
        const char* side = link.side == Side::direct ? "" : (link.side == Side::above ? "^" : "_");
        out << (e ? " " : "") << name(link.a) << '-' << name(link.b) << ':' << link.cost << side;
    }
    out << '}';
    return out.str();
}

Configuration contract_to_configuration(int n, std::span<const Edge> tree_edges, std::span<const Vertex> bag,
                                        const std::vector<bool>& below) {
    if (bag.empty()) {
        throw ValidationError("cannot conform a tree to an empty bag");
    }
    const auto size = static_cast<std::size_t>(n) + 1;
    std::vector<std::vector<Vertex>> adj(size);
    for (const auto& e : tree_edges) {
        adj[static_cast<std::size_t>(e.u)].push_back(e.v);
        adj[static_cast<std::size_t>(e.v)].push_back(e.u);
    }
    std::vector<bool> in_bag(size, false);
    for (Vertex v : bag) {
        in_bag[static_cast<std::size_t>(v)] = true;
    }
    // Peel non-bag leaves; what survives is the minimal subtree spanning the bag.
    std::vector<int> degree(size, 0);
    std::vector<bool> alive(size, true);
    alive[0] = false;
    std::vector<Vertex> queue;
    for (Vertex v = 1; v <= n; ++v) {
        degree[static_cast<std::size_t>(v)] = static_cast<int>(adj[static_cast<std::size_t>(v)].size());
        if (!in_bag[static_cast<std::size_t>(v)] && degree[static_cast<std::size_t>(v)] <= 1) {
            queue.push_back(v);
        }
    }
    while (!queue.empty()) {
        const Vertex v = queue.back();
        queue.pop_back();
        if (!alive[static_cast<std::size_t>(v)]) {
            continue;
        }
        alive[static_cast<std::size_t>(v)] = false;
        for (Vertex w : adj[static_cast<std::size_t>(v)]) {
            if (alive[static_cast<std::size_t>(w)] && --degree[static_cast<std::size_t>(w)] <= 1 &&
                !in_bag[static_cast<std::size_t>(w)]) {
                queue.push_back(w);
            }
        }
    }

    Configuration c;
    std::vector<int> node_of(size, -1);
    for (Vertex v = 1; v <= n; ++v) {
        if (!alive[static_cast<std::size_t>(v)]) {
            continue;
        }
        if (in_bag[static_cast<std::size_t>(v)]) {
            node_of[static_cast<std::size_t>(v)] = c.add_node(NodeKind::bag, v);
        } else if (degree[static_cast<std::size_t>(v)] >= 3) {
            node_of[static_cast<std::size_t>(v)] =
                c.add_node(below[static_cast<std::size_t>(v)] ? NodeKind::below : NodeKind::above);
        }
    }
    for (Vertex v = 1; v <= n; ++v) {
        if (node_of[static_cast<std::size_t>(v)] < 0) {
            continue;
        }
        for (Vertex first : adj[static_cast<std::size_t>(v)]) {
            if (!alive[static_cast<std::size_t>(first)]) {
                continue;
            }
            Vertex prev = v;
            Vertex cur = first;
            int cost = 1;
            int below_count = 0;
            int interior = 0;
            while (node_of[static_cast<std::size_t>(cur)] < 0) {
                ++interior;
                below_count += below[static_cast<std::size_t>(cur)] ? 1 : 0;
                Vertex next = 0;
                for (Vertex w : adj[static_cast<std::size_t>(cur)]) {
                    if (w != prev && alive[static_cast<std::size_t>(w)]) {
                        next = w;
                    }
                }
                prev = cur;
                cur = next;
                ++cost;
            }
            // Record each path once, from its smaller endpoint.
            if (cur < v) {
                continue;
            }
            if (below_count != 0 && below_count != interior) {
                throw ValidationError("tree path between " + std::to_string(v) + " and " + std::to_string(cur) +
                                      " mixes forgotten and unintroduced vertices");
            }
            const int a = node_of[static_cast<std::size_t>(v)];
            const int b = node_of[static_cast<std::size_t>(cur)];
            c.add_link(a, b, cost, side_for(c, a, b, cost, below_count > 0 ? Side::below : Side::above));
        }
    }
    return c;
}

}  // namespace widthspan
