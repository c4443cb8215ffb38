#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "widthspan/configuration.hpp"
#include "widthspan/graph.hpp"
#include "widthspan/tree_decomposition.hpp"

namespace widthspan {

struct DpEntry {
    ConfigKey key;
    std::int64_t cost = 0;
    int pred_a = -1;  // entry index in the (first) child table
    int pred_b = -1;  // entry index in the second child table of a join
};

/// Configurations of one bag with their best cost; insert keeps the minimum.
class DpTable {
public:
    /// Returns true if the entry was new or improved.
    bool insert(const ConfigKey& key, std::int64_t cost, int pred_a = -1, int pred_b = -1);
    const DpEntry* find(const ConfigKey& key) const;
    int index_of(const ConfigKey& key) const;

    const std::vector<DpEntry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    void drop_index() { std::unordered_map<ConfigKey, int>().swap(index_); }

private:
    std::vector<DpEntry> entries_;
    std::unordered_map<ConfigKey, int> index_;
};

enum class IntroduceCase { attach_edge, replace_steiner, subdivide, hang_on_steiner, hang_on_bag, split_edge };

std::string introduce_case_name(IntroduceCase c);

struct IntroduceCandidate {
    IntroduceCase kind;
    Configuration config;
};

/*
 * Every way the newly introduced vertex v can sit in the parent configuration,
 * given child configuration `child`:
 *   attach_edge      v is a leaf joined to a bag vertex by a graph edge
 *   replace_steiner  v is an above Steiner vertex
 *   subdivide        v lies inside an above edge path
 *   hang_on_steiner  v hangs off an above Steiner vertex through a path
 *   hang_on_bag      v hangs off a bag vertex through a path of length >= 2
 *   split_edge       v hangs off a new above Steiner vertex inside an above edge
 * Guessed path lengths run from 1 to `max_cost`. With `above_capacity` >= 0,
 * candidates promising more unintroduced vertices than that are dropped.
 */
std::vector<IntroduceCandidate> introduce_candidates(const Configuration& child, Vertex v, const Graph& g,
                                                     int max_cost, std::int64_t above_capacity);

/// Stretch charged when v enters: sum over v's neighbours u in the old bag of
/// the weighted distance between v and u in `parent`.
std::int64_t introduce_charge(const Configuration& parent, Vertex v, const Graph& g);

/// Sum over graph edges inside the bag of their weighted distance.
std::int64_t bag_edge_stretch(const Configuration& c, const Graph& g);

struct DpOptions {
    bool prune = true;          // drop entries promising more vertices than remain
    int node_cap = -1;          // max configuration size; -1 means 2k + 2
    bool retain_index = false;  // keep key lookup for every table after the run
};

DpTable leaf_table(Vertex v);
DpTable introduce_step(const DpTable& child, Vertex v, const Graph& g, std::int64_t above_capacity, bool prune,
                       int node_cap);
DpTable forget_step(const DpTable& child, Vertex v);
DpTable join_step(const DpTable& left, const DpTable& right, const Graph& g, std::int64_t above_capacity, bool prune);

struct DpResult {
    std::int64_t total_stretch = 0;
    std::vector<EdgeId> tree_edges;  // ascending
    std::vector<DpTable> tables;     // one per nice node
    std::size_t max_table_size = 0;
    std::size_t total_entries = 0;
};

/*
 * Minimum total stretch spanning tree by dynamic programming over `ntd`.
 * The witness tree is reassembled from the direct edges of the configurations
 * on the optimal back-pointer chain and checked against an independent
 * stretch computation. Throws InternalError if any step comes out infeasible.
 */
DpResult dp_min_stretch(const Graph& g, const NiceTreeDecomposition& ntd, const DpOptions& options = {});

}  // namespace widthspan

namespace widthspan {

struct ConformityReport {
    int bags = 0;
    int missing = 0;     // conformed configuration absent from the table
    int violations = 0;  // table cost above the tree's own stretch on G[D(B)]
    int max_nodes = 0;   // largest conformed configuration
};

/*
 * Instrumentation with a known spanning tree: at every nice node, conforms
 * `tree` to the bag and checks that the table (kept with retain_index) holds
 * that configuration at a cost no larger than the tree's stretch summed over
 * the edges among processed vertices.
 */
ConformityReport conformity_check(const Graph& g, const NiceTreeDecomposition& ntd, const DpResult& result,
                                  std::span<const EdgeId> tree);

}  // namespace widthspan
