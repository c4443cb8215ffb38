#include "widthspan/twdp.hpp"

#include <algorithm>
#include <set>

#include "widthspan/error.hpp"
#include "widthspan/lowstretch.hpp"
#include "widthspan/union_find.hpp"

namespace widthspan {

bool DpTable::insert(const ConfigKey& key, std::int64_t cost, int pred_a, int pred_b) {
    auto [it, inserted] = index_.try_emplace(key, static_cast<int>(entries_.size()));
    if (inserted) {
        entries_.push_back(DpEntry{key, cost, pred_a, pred_b});
        return true;
    }
    auto& entry = entries_[static_cast<std::size_t>(it->second)];
    if (cost < entry.cost) {
        entry.cost = cost;
        entry.pred_a = pred_a;
        entry.pred_b = pred_b;
        return true;
    }
    return false;
}

int DpTable::index_of(const ConfigKey& key) const {
    const auto it = index_.find(key);
    return it == index_.end() ? -1 : it->second;
}

const DpEntry* DpTable::find(const ConfigKey& key) const {
    const int i = index_of(key);
    return i < 0 ? nullptr : &entries_[static_cast<std::size_t>(i)];
}

std::string introduce_case_name(IntroduceCase c) {
    switch (c) {
        case IntroduceCase::attach_edge:
            return "attach_edge";
        case IntroduceCase::replace_steiner:
            return "replace_steiner";
        case IntroduceCase::subdivide:
            return "subdivide";
        case IntroduceCase::hang_on_steiner:
            return "hang_on_steiner";
        case IntroduceCase::hang_on_bag:
            return "hang_on_bag";
        case IntroduceCase::split_edge:
            return "split_edge";
    }
    return "unknown";
}

namespace {

bool direct_links_exist(const Configuration& c, const Graph& g) {
    for (const auto& link : c.links) {
        if (link.side == Side::direct &&
            !g.has_edge(c.nodes[static_cast<std::size_t>(link.a)].label, c.nodes[static_cast<std::size_t>(link.b)].label)) {
            return false;
        }
    }
    return true;
}

}  // namespace

std::vector<IntroduceCandidate> introduce_candidates(const Configuration& child, Vertex v, const Graph& g,
                                                     int max_cost, std::int64_t above_capacity) {
    std::vector<IntroduceCandidate> out;
    auto fits = [&](const Configuration& c) { return above_capacity < 0 || c.promised_above() <= above_capacity; };
    // Adds a candidate; returns false once the promise budget is exceeded so
    // that loops over increasing guessed costs can stop.
    auto offer = [&](IntroduceCase kind, Configuration&& c) {
        if (!fits(c)) {
            return false;
        }
        if (direct_links_exist(c, g)) {
            out.push_back(IntroduceCandidate{kind, std::move(c)});
        }
        return true;
    };
    const auto nodes = static_cast<int>(child.nodes.size());

    for (int b = 0; b < nodes; ++b) {
        const auto kind = child.nodes[static_cast<std::size_t>(b)].kind;
        if (kind == NodeKind::bag) {
            for (int cost = 1; cost <= max_cost; ++cost) {
                Configuration c = child;
                const int x = c.add_node(NodeKind::bag, v);
                c.add_link(x, b, cost, cost == 1 ? Side::direct : Side::above);
                if (!offer(cost == 1 ? IntroduceCase::attach_edge : IntroduceCase::hang_on_bag, std::move(c))) {
                    break;
                }
            }
        } else if (kind == NodeKind::above) {
            for (int cost = 1; cost <= max_cost; ++cost) {
                Configuration c = child;
                const int x = c.add_node(NodeKind::bag, v);
                c.add_link(x, b, cost, Side::above);
                if (!offer(IntroduceCase::hang_on_steiner, std::move(c))) {
                    break;
                }
            }
            Configuration c = child;
            c.nodes[static_cast<std::size_t>(b)] = Configuration::Node{NodeKind::bag, v};
            for (auto& link : c.links) {
                if (link.a == b || link.b == b) {
                    link.side = side_for(c, link.a, link.b, link.cost, Side::above);
                }
            }
            offer(IntroduceCase::replace_steiner, std::move(c));
        }
    }

    for (std::size_t e = 0; e < child.links.size(); ++e) {
        const auto link = child.links[e];
        if (link.side != Side::above || link.cost < 2) {
            continue;
        }
        for (int c1 = 1; c1 < link.cost; ++c1) {
            const int c2 = link.cost - c1;
            {
                Configuration c = child;
                c.links.erase(c.links.begin() + static_cast<std::ptrdiff_t>(e));
                const int x = c.add_node(NodeKind::bag, v);
                c.add_link(link.a, x, c1, side_for(c, link.a, x, c1, Side::above));
                c.add_link(x, link.b, c2, side_for(c, x, link.b, c2, Side::above));
                offer(IntroduceCase::subdivide, std::move(c));
            }
            for (int c3 = 1; c3 <= max_cost; ++c3) {
                Configuration c = child;
                c.links.erase(c.links.begin() + static_cast<std::ptrdiff_t>(e));
                const int s = c.add_node(NodeKind::above);
                c.add_link(link.a, s, c1, Side::above);
                c.add_link(s, link.b, c2, Side::above);
                const int x = c.add_node(NodeKind::bag, v);
                c.add_link(x, s, c3, Side::above);
                if (!offer(IntroduceCase::split_edge, std::move(c))) {
                    break;
                }
            }
        }
    }
    return out;
}

std::int64_t introduce_charge(const Configuration& parent, Vertex v, const Graph& g) {
    const int x = parent.find_bag(v);
    const auto dist = parent.distances_from(x);
    std::int64_t total = 0;
    for (std::size_t y = 0; y < parent.nodes.size(); ++y) {
        const auto& node = parent.nodes[y];
        if (node.kind == NodeKind::bag && node.label != v && g.has_edge(v, node.label)) {
            total += dist[y];
        }
    }
    return total;
}

std::int64_t bag_edge_stretch(const Configuration& c, const Graph& g) {
    std::int64_t total = 0;
    for (std::size_t x = 0; x < c.nodes.size(); ++x) {
        if (c.nodes[x].kind != NodeKind::bag) {
            continue;
        }
        const auto dist = c.distances_from(static_cast<int>(x));
        for (std::size_t y = 0; y < c.nodes.size(); ++y) {
            const auto& other = c.nodes[y];
            if (other.kind == NodeKind::bag && c.nodes[x].label < other.label &&
                g.has_edge(c.nodes[x].label, other.label)) {
                total += dist[y];
            }
        }
    }
    return total;
}

DpTable leaf_table(Vertex v) {
    DpTable table;
    table.insert(Configuration::singleton(v).key(), 0);
    return table;
}

DpTable introduce_step(const DpTable& child, Vertex v, const Graph& g, std::int64_t above_capacity, bool prune,
                       int node_cap) {
    DpTable table;
    const auto& entries = child.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto config = Configuration::decode(entries[i].key);
        for (auto& candidate : introduce_candidates(config, v, g, g.num_vertices(), prune ? above_capacity : -1)) {
            if (static_cast<int>(candidate.config.nodes.size()) > node_cap) {
                throw InternalError("configuration with " + std::to_string(candidate.config.nodes.size()) +
                                    " vertices exceeds the cap of " + std::to_string(node_cap));
            }
            const auto cost = entries[i].cost + introduce_charge(candidate.config, v, g);
            table.insert(candidate.config.key(), cost, static_cast<int>(i));
        }
    }
    return table;
}

DpTable forget_step(const DpTable& child, Vertex v) {
    DpTable table;
    const auto& entries = child.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        auto config = Configuration::decode(entries[i].key);
        const int x = config.find_bag(v);
        bool reaches_above = false;
        for (const auto& link : config.links) {
            if ((link.a == x || link.b == x) && link.side == Side::above) {
                reaches_above = true;
            }
        }
        // A forgotten vertex has no neighbours outside the processed part.
        if (reaches_above) {
            continue;
        }
        config.nodes[static_cast<std::size_t>(x)] = Configuration::Node{NodeKind::below, 0};
        for (auto& link : config.links) {
            if (link.a == x || link.b == x) {
                link.side = Side::below;
            }
        }
        config.normalize();
        table.insert(config.key(), entries[i].cost, static_cast<int>(i));
    }
    return table;
}

namespace {

// Maximal groups of Steiner vertices and tagged edges with the given side.
// Edges between two bag vertices form groups of their own.
struct SideGroups {
    std::vector<std::vector<int>> nodes;
    std::vector<std::vector<int>> links;
};

SideGroups side_groups(const Configuration& c, NodeKind kind, Side side) {
    const auto count = static_cast<int>(c.nodes.size());
    UnionFind uf(count);
    for (const auto& link : c.links) {
        if (c.nodes[static_cast<std::size_t>(link.a)].kind == kind && c.nodes[static_cast<std::size_t>(link.b)].kind == kind) {
            uf.unite(link.a, link.b);
        }
    }
    SideGroups groups;
    std::vector<int> group_of(static_cast<std::size_t>(count), -1);
    for (int x = 0; x < count; ++x) {
        if (c.nodes[static_cast<std::size_t>(x)].kind != kind) {
            continue;
        }
        auto& slot = group_of[static_cast<std::size_t>(uf.find(x))];
        if (slot < 0) {
            slot = static_cast<int>(groups.nodes.size());
            groups.nodes.emplace_back();
            groups.links.emplace_back();
        }
        groups.nodes[static_cast<std::size_t>(slot)].push_back(x);
    }
    for (std::size_t e = 0; e < c.links.size(); ++e) {
        const auto& link = c.links[e];
        if (link.side != side) {
            continue;
        }
        int steiner = -1;
        for (int x : {link.a, link.b}) {
            if (c.nodes[static_cast<std::size_t>(x)].kind == kind) {
                steiner = x;
            }
        }
        if (steiner >= 0) {
            groups.links[static_cast<std::size_t>(group_of[static_cast<std::size_t>(uf.find(steiner))])].push_back(
                static_cast<int>(e));
        } else {
            groups.nodes.emplace_back();
            groups.links.push_back({static_cast<int>(e)});
        }
    }
    return groups;
}

void retag(Configuration& c, const SideGroups& groups, std::size_t group, NodeKind kind, Side side) {
    for (int x : groups.nodes[group]) {
        c.nodes[static_cast<std::size_t>(x)].kind = kind;
    }
    for (int e : groups.links[group]) {
        c.links[static_cast<std::size_t>(e)].side = side;
    }
}

}  // namespace

DpTable join_step(const DpTable& left, const DpTable& right, const Graph& g, std::int64_t above_capacity, bool prune) {
    DpTable table;
    const auto& entries = left.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto config = Configuration::decode(entries[i].key);
        const auto above = side_groups(config, NodeKind::above, Side::above);
        const auto below = side_groups(config, NodeKind::below, Side::below);
        const auto shared = bag_edge_stretch(config, g);
        const std::size_t groups = above.links.size();
        if (groups >= 31) {
            throw InternalError("too many above groups in a join");
        }
        // Each subset of the left side's pending groups is built by the right side.
        for (std::uint32_t mask = 0; mask < (1u << groups); ++mask) {
            Configuration mine = config;
            for (std::size_t k = 0; k < groups; ++k) {
                if (mask & (1u << k)) {
                    retag(mine, above, k, NodeKind::below, Side::below);
                }
            }
            if (prune && mine.promised_above() > above_capacity) {
                continue;
            }
            Configuration theirs = mine;
            for (std::size_t k = 0; k < below.links.size(); ++k) {
                retag(theirs, below, k, NodeKind::above, Side::above);
            }
            const int j = right.index_of(theirs.key());
            if (j < 0) {
                continue;
            }
            const auto cost = entries[i].cost + right.entries()[static_cast<std::size_t>(j)].cost - shared;
            table.insert(mine.key(), cost, static_cast<int>(i), j);
        }
    }
    return table;
}

DpResult dp_min_stretch(const Graph& g, const NiceTreeDecomposition& ntd, const DpOptions& options) {
    require_connected(g);
    validate_nice(g, ntd);
    const int n = g.num_vertices();
    const int k = ntd.width();
    const int cap = options.node_cap < 0 ? 2 * k + 2 : options.node_cap;
    const auto below = ntd.below_counts();

    DpResult result;
    result.tables.resize(ntd.nodes.size());
    for (std::size_t i = 0; i < ntd.nodes.size(); ++i) {
        const auto& node = ntd.nodes[i];
        const std::int64_t capacity = n - below[i];
        auto& table = result.tables[i];
        switch (node.kind) {
            case NiceKind::leaf:
                table = leaf_table(node.bag.front());
                break;
            case NiceKind::introduce:
                table = introduce_step(result.tables[static_cast<std::size_t>(node.left)], node.vertex, g, capacity,
                                       options.prune, cap);
                break;
            case NiceKind::forget:
                table = forget_step(result.tables[static_cast<std::size_t>(node.left)], node.vertex);
                break;
            case NiceKind::join:
                table = join_step(result.tables[static_cast<std::size_t>(node.left)],
                                  result.tables[static_cast<std::size_t>(node.right)], g, capacity, options.prune);
                break;
        }
        if (table.empty()) {
            throw InternalError("no feasible configuration at nice node " + std::to_string(i) + " (" +
                                nice_kind_name(node.kind) + ")");
        }
        result.max_table_size = std::max(result.max_table_size, table.size());
        result.total_entries += table.size();
        if (!options.retain_index) {
            for (int child : {node.left, node.right}) {
                if (child >= 0) {
                    result.tables[static_cast<std::size_t>(child)].drop_index();
                }
            }
        }
    }

    const auto root = static_cast<std::size_t>(ntd.root());
    const int best = result.tables[root].index_of(Configuration::singleton(ntd.nodes[root].bag.front()).key());
    if (best < 0) {
        throw InternalError("root table has no singleton configuration");
    }
    result.total_stretch = result.tables[root].entries()[static_cast<std::size_t>(best)].cost;

    std::set<EdgeId> edges;
    std::vector<std::pair<int, int>> stack{{static_cast<int>(root), best}};
    while (!stack.empty()) {
        const auto [node_id, entry_id] = stack.back();
        stack.pop_back();
        const auto& node = ntd.nodes[static_cast<std::size_t>(node_id)];
        const auto& entry = result.tables[static_cast<std::size_t>(node_id)].entries()[static_cast<std::size_t>(entry_id)];
        const auto config = Configuration::decode(entry.key);
        for (const auto& link : config.links) {
            if (link.side != Side::direct) {
                continue;
            }
            const auto e = g.find_edge(config.nodes[static_cast<std::size_t>(link.a)].label,
                                       config.nodes[static_cast<std::size_t>(link.b)].label);
            if (!e) {
                throw InternalError("direct configuration edge is not a graph edge");
            }
            edges.insert(*e);
        }
        if (node.left >= 0) {
            stack.emplace_back(node.left, entry.pred_a);
        }
        if (node.right >= 0) {
            stack.emplace_back(node.right, entry.pred_b);
        }
    }
    result.tree_edges.assign(edges.begin(), edges.end());
    StretchReport check;
    try {
        check = stretch_of(g, result.tree_edges);
    } catch (const ValidationError& err) {
        throw InternalError(std::string("reconstructed witness is not a spanning tree: ") + err.what());
    }
    if (check.total_stretch != result.total_stretch) {
        throw InternalError("witness stretch " + std::to_string(check.total_stretch) + " differs from table cost " +
                            std::to_string(result.total_stretch));
    }
    return result;
}

}  // namespace widthspan

namespace widthspan {

ConformityReport conformity_check(const Graph& g, const NiceTreeDecomposition& ntd, const DpResult& result,
                                  std::span<const EdgeId> tree) {
    const int n = g.num_vertices();
    const auto stretch = stretch_of(g, tree);
    std::vector<Edge> tree_edges;
    for (EdgeId e : tree) {
        tree_edges.push_back(g.edge(e));
    }
    ConformityReport report;
    std::vector<std::vector<bool>> processed(ntd.nodes.size());
    for (std::size_t i = 0; i < ntd.nodes.size(); ++i) {
        const auto& node = ntd.nodes[i];
        auto& mine = processed[i];
        if (node.kind == NiceKind::leaf) {
            mine.assign(static_cast<std::size_t>(n) + 1, false);
        } else {
            mine = processed[static_cast<std::size_t>(node.left)];
        }
        if (node.right >= 0) {
            const auto& other = processed[static_cast<std::size_t>(node.right)];
            for (std::size_t v = 0; v < mine.size(); ++v) {
                mine[v] = mine[v] || other[v];
            }
        }
        for (Vertex v : node.bag) {
            mine[static_cast<std::size_t>(v)] = true;
        }
        std::vector<bool> below(mine);
        for (Vertex v : node.bag) {
            below[static_cast<std::size_t>(v)] = false;
        }
        const auto config = contract_to_configuration(n, tree_edges, node.bag, below);
        ++report.bags;
        report.max_nodes = std::max(report.max_nodes, static_cast<int>(config.nodes.size()));

        std::int64_t bound = 0;
        for (EdgeId e = 0; e < g.num_edges(); ++e) {
            if (mine[static_cast<std::size_t>(g.edge(e).u)] && mine[static_cast<std::size_t>(g.edge(e).v)]) {
                bound += stretch.per_edge_stretch[static_cast<std::size_t>(e)];
            }
        }
        const auto* entry = result.tables[i].find(config.key());
        if (entry == nullptr) {
            ++report.missing;
        } else if (entry->cost > bound) {
            ++report.violations;
        }
    }
    return report;
}

}  // namespace widthspan
