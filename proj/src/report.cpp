#include "widthspan/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace widthspan {

std::string fnv1a_hex(std::string_view data) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char ch : data) {
        hash ^= ch;
        hash *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

Json stats_json(const Graph& g, const LinearArrangement& a) {
    require_matching(g, a);
    const auto w = widths(g, a);
    const ArrangementTree tree(g, a);
    std::size_t max_split = 0;
    for (const auto& node : tree.nodes()) {
        max_split = std::max(max_split, node.split_edges.size());
    }
    Json out;
    out["n"] = g.num_vertices();
    out["m"] = g.num_edges();
    out["bandwidth"] = w.bandwidth;
    out["cutwidth"] = w.cutwidth;
    out["total_spread"] = total_spread(g, a);
    out["max_split_set"] = max_split;
    return out;
}

Json stretch_report_json(const Graph& g, const StretchReport& report) {
    Json out;
    out["n"] = report.n;
    out["m"] = report.m;
    Json tree = Json::array();
    for (EdgeId e : report.tree_edges) {
        tree.push_back({g.edge(e).u, g.edge(e).v});
    }
    out["tree_edges"] = std::move(tree);
    out["per_edge_stretch"] = report.per_edge_stretch;
    out["total_stretch"] = report.total_stretch;
    out["avg_stretch"] = rational_json(report.avg_stretch());
    out["fcb_weight"] = report.fcb_weight;
    out["fcb_identity_holds"] = report.fcb_identity_holds();
    return out;
}

Json distribution_json(const Graph& g, const DistributionReport& report, bool explicit_mode) {
    Json out;
    out["mode"] = explicit_mode ? "explicit" : "sample";
    out["n"] = g.num_vertices();
    out["m"] = g.num_edges();
    out["n_prime"] = report.n_prime;
    out["shift_count"] = report.shift_count;
    Json expected = Json::array();
    for (const auto& r : report.per_edge_expected) {
        expected.push_back(rational_json(r));
    }
    out["per_edge_expected_stretch"] = std::move(expected);
    out["max_expected_stretch"] = rational_json(report.max_expected());
    Json shifts = Json::array();
    for (std::size_t k = 0; k < report.shifts.size(); ++k) {
        shifts.push_back({{"shift", report.shifts[k]},
                          {"total_stretch", report.shift_totals[k]},
                          {"avg_stretch", rational_json(report.shift_avg(k, g.num_edges()))}});
    }
    out["shifts"] = std::move(shifts);
    out["best_shift"] = report.best_shift;
    return out;
}

Json oracle_json(const OracleResult& result, bool histogram) {
    Json out;
    out["spanning_tree_count"] = result.spanning_tree_count;
    out["matrix_tree_count"] = result.matrix_tree_count.str();
    out["min_total_stretch"] = result.min_total_stretch;
    out["argmin_trees"] = result.argmin_trees;
    if (histogram) {
        Json hist = Json::array();
        for (const auto& [total, count] : result.histogram) {
            hist.push_back({{"total_stretch", total}, {"trees", count}});
        }
        out["histogram"] = std::move(hist);
    }
    return out;
}

Json dp_json(const Graph& g, const NiceTreeDecomposition& ntd, const DpResult& result) {
    Json out;
    out["n"] = g.num_vertices();
    out["m"] = g.num_edges();
    out["width"] = ntd.width();
    out["nice_nodes"] = ntd.nodes.size();
    out["total_stretch"] = result.total_stretch;
    out["avg_stretch"] = rational_json(g.num_edges() == 0 ? Rational(0) : Rational(result.total_stretch, g.num_edges()));
    Json tree = Json::array();
    for (EdgeId e : result.tree_edges) {
        tree.push_back({g.edge(e).u, g.edge(e).v});
    }
    out["tree_edges"] = std::move(tree);
    out["max_table_size"] = result.max_table_size;
    out["total_entries"] = result.total_entries;
    return out;
}

std::string distribution_csv(const Graph& g, const LinearArrangement& a, const DistributionReport& report) {
    std::ostringstream out;
    out << "edge_id,u,v,spread,expected_stretch\n";
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        out << e << ',' << g.edge(e).u << ',' << g.edge(e).v << ',' << spread(g, a, e) << ','
            << report.per_edge_expected[static_cast<std::size_t>(e)].to_string() << '\n';
    }
    return out.str();
}

std::string tree_edge_list(const Graph& g, const std::vector<EdgeId>& tree_edges) {
    std::vector<Edge> edges;
    edges.reserve(tree_edges.size());
    for (EdgeId e : tree_edges) {
        edges.push_back(g.edge(e));
    }
    return serialize_graph(Graph(g.num_vertices(), std::move(edges)));
}

RunManifest::RunManifest(std::vector<std::string> argv)
    : argv_(std::move(argv)), start_(std::chrono::steady_clock::now()) {}

void RunManifest::add_input(const std::string& path) { inputs_.emplace_back(path, fnv1a_hex(read_text_file(path))); }

void RunManifest::add_output(const std::string& name, std::string_view content) {
    outputs_.emplace_back(name, fnv1a_hex(content));
}

Json RunManifest::to_json() const {
    Json out;
    out["command"] = argv_;
    Json inputs = Json::array();
    for (const auto& [path, digest] : inputs_) {
        inputs.push_back({{"path", path}, {"fnv1a64", digest}});
    }
    out["inputs"] = std::move(inputs);
    out["seed"] = has_seed_ ? Json(seed_) : Json(nullptr);
    out["version"] = version_string;
    Json outputs = Json::array();
    for (const auto& [name, digest] : outputs_) {
        outputs.push_back({{"name", name}, {"fnv1a64", digest}});
    }
    out["outputs"] = std::move(outputs);
    const auto elapsed = std::chrono::steady_clock::now() - start_;
    out["wall_clock_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    return out;
}

}  // namespace widthspan
