#include "widthspan/verify.hpp"

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <map>
#include <sstream>

#include "widthspan/corpus.hpp"
#include "widthspan/distribution.hpp"
#include "widthspan/error.hpp"
#include "widthspan/generators.hpp"
#include "widthspan/lowstretch.hpp"
#include "widthspan/oracle.hpp"
#include "widthspan/parallel.hpp"
#include "widthspan/tree_decomposition.hpp"
#include "widthspan/twdp.hpp"

namespace widthspan {

namespace {

// Pass count for one property over a corpus; remembers the first failure.
class Tally {
public:
    void add(bool ok, const std::string& who) {
        ++total_;
        if (ok) {
            ++passed_;
        } else if (first_failure_.empty()) {
            first_failure_ = who;
        }
    }

    CheckRow row(const std::string& suite, const std::string& name) const {
        std::string detail = std::to_string(passed_) + "/" + std::to_string(total_);
        if (!first_failure_.empty()) {
            detail += ", first failure: " + first_failure_;
        }
        return CheckRow{suite, name, passed_ == total_, detail, false};
    }

private:
    int passed_ = 0;
    int total_ = 0;
    std::string first_failure_;
};

CheckRow info(const std::string& suite, const std::string& name, const std::string& detail) {
    return CheckRow{suite, name, true, detail, true};
}

std::string fixed(double x, int digits = 4) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(digits) << x;
    return out.str();
}

struct BandwidthFacts {
    bool scan_matches = false;
    bool fcb_identity = false;
    bool average_bound = false;
    bool fcb_bound = false;
    bool split_safe = false;
    int split_tight_excess = 0;
    bool degree_bound = false;
    bool split_unique = false;
    bool padded_split_bound = false;
    bool padded_fcb_identity = false;
    bool long_components = false;
    bool long_root = false;
    bool monotone_large = false;
    int monotone_literal = 0;
    bool charge_bound = false;
    bool charge_literal_bound = false;
    bool cycle_bounds = false;
};

BandwidthFacts bandwidth_facts(const CorpusGraph& item) {
    const auto& g = item.graph;
    const auto& a = item.arrangement;
    const int n = g.num_vertices();
    const std::int64_t m = g.num_edges();
    const std::int64_t b = widths(g, a).bandwidth;
    BandwidthFacts f;

    const auto report = build_tree(g, a);
    f.scan_matches = greedy_node_scan_tree(g, a) == report.tree_edges;
    f.fcb_identity = report.fcb_identity_holds();
    f.average_bound = report.total_stretch <= (4 * b * b * b + 2) * m;
    f.fcb_bound = report.fcb_weight <= 4 * b * b * b * n;

    const ArrangementTree tree(g, a);
    std::size_t max_split = 0;
    std::vector<int> seen(static_cast<std::size_t>(m), 0);
    for (const auto& node : tree.nodes()) {
        max_split = std::max(max_split, node.split_edges.size());
        if (static_cast<std::int64_t>(node.split_edges.size()) > (b - 1) * (b - 2) / 2) {
            ++f.split_tight_excess;
        }
        for (EdgeId e : node.split_edges) {
            ++seen[static_cast<std::size_t>(e)];
        }
    }
    f.split_safe = static_cast<std::int64_t>(max_split) <= b * (b + 1) / 2;
    f.split_unique = std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
    for (EdgeId e = 0; e < g.num_edges() && f.split_unique; ++e) {
        const int i = a.position_of(g.edge(e).u);
        const int j = a.position_of(g.edge(e).v);
        const auto& node = tree.node(tree.edge_split_node(e));
        auto holds = [&](const ArrangementNode& x) { return x.lo <= std::min(i, j) && std::max(i, j) <= x.hi; };
        f.split_unique = holds(node) && !node.is_leaf() && !holds(tree.node(node.left)) && !holds(tree.node(node.right));
    }
    f.degree_bound = true;
    for (Vertex v = 1; v <= n; ++v) {
        f.degree_bound = f.degree_bound && g.degree(v) <= 2 * b;
    }

    f.padded_split_bound = true;
    f.padded_fcb_identity = true;
    for (int shift : {0, PaddedArrangement::shift_count(n) / 2, PaddedArrangement::shift_count(n) - 1}) {
        const PaddedArrangement padded(a, shift);
        const auto padded_report = build_tree(g, padded);
        const auto rows = split_bound_check(g, padded, padded_report);
        f.padded_split_bound = f.padded_split_bound &&
                               std::all_of(rows.begin(), rows.end(), [](const SplitBoundRow& r) { return r.bound_ok; });
        f.padded_fcb_identity = f.padded_fcb_identity && padded_report.fcb_identity_holds();
    }

    const auto charges = charge_diagnostics(g, a);
    f.long_components = charges.long_component_bound_ok();
    f.long_root = charges.nodes.front().long_components == 1;
    f.monotone_large = charges.monotonicity_violations_large_children == 0;
    f.monotone_literal = charges.monotonicity_violations;
    f.charge_bound = charges.charge_bound_ok(n);
    f.charge_literal_bound = charges.total_charge_literal <= b * n;
    f.cycle_bounds = fundamental_cycle_bounds(g, a, report).ok();
    return f;
}

}  // namespace

std::vector<CheckRow> verify_bandwidth(int jobs) {
    const auto corpus = bandwidth_corpus();
    std::vector<BandwidthFacts> facts(corpus.size());
    parallel_for(static_cast<int>(corpus.size()), resolve_jobs(jobs),
                 [&](int i) { facts[static_cast<std::size_t>(i)] = bandwidth_facts(corpus[static_cast<std::size_t>(i)]); });

    std::map<std::string, Tally> tallies;
    const std::vector<std::string> order = {
        "kruskal equals node-by-node scan",
        "fcb identity (raw arrangement)",
        "avg stretch <= 4b^3 + 2",
        "fcb <= 4b^3 n",
        "|S_v| <= b(b+1)/2",
        "deg(v) <= 2b",
        "each edge split by exactly one node",
        "stretch <= 2p - 1 (padded, 3 shifts)",
        "fcb identity (padded, 3 shifts)",
        "long components <= b",
        "one long component at the root",
        "long components monotone (children >= b leaves)",
        "sum of charges <= bn",
        "fundamental cycles: 2s/b <= |C| <= s + 1",
    };
    int tight_split = 0;
    int literal_monotone = 0;
    int literal_charge_failures = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& f = facts[i];
        const auto& who = corpus[i].name;
        const bool values[] = {f.scan_matches,   f.fcb_identity,       f.average_bound,       f.fcb_bound,
                               f.split_safe,     f.degree_bound,       f.split_unique,        f.padded_split_bound,
                               f.padded_fcb_identity, f.long_components, f.long_root,        f.monotone_large,
                               f.charge_bound,   f.cycle_bounds};
        for (std::size_t k = 0; k < order.size(); ++k) {
            tallies[order[k]].add(values[k], who);
        }
        tight_split += f.split_tight_excess > 0 ? 1 : 0;
        literal_monotone += f.monotone_literal;
        literal_charge_failures += f.charge_literal_bound ? 0 : 1;
    }
    std::vector<CheckRow> rows;
    for (const auto& name : order) {
        rows.push_back(tallies[name].row("bandwidth", name));
    }
    const auto total = std::to_string(corpus.size());
    rows.push_back(info("bandwidth", "graphs exceeding |S_v| <= (b-1)(b-2)/2",
                        std::to_string(tight_split) + "/" + total));
    rows.push_back(info("bandwidth", "monotonicity violations over all parent/child pairs",
                        std::to_string(literal_monotone)));
    rows.push_back(info("bandwidth", "graphs with verbatim-case charges above bn",
                        std::to_string(literal_charge_failures) + "/" + total));
    return rows;
}

std::vector<CheckRow> verify_cutwidth(int jobs) {
    const std::vector<int> cutwidths = {2, 3, 4};
    const std::vector<int> sizes = {64, 128, 256, 512};
    const int seeds = 3;
    const auto corpus = cutwidth_corpus(cutwidths, sizes, seeds);
    struct Facts {
        bool spread_bound = false;
        bool fcb_identity = false;
        bool best_is_min = false;
        std::int64_t total = 0;
        std::int64_t m = 0;
        std::int64_t fcb = 0;
    };
    std::vector<Facts> facts(corpus.size());
    parallel_for(static_cast<int>(corpus.size()), resolve_jobs(jobs), [&](int i) {
        const auto& item = corpus[static_cast<std::size_t>(i)];
        const auto& g = item.graph;
        const auto& a = item.arrangement;
        const auto c = widths(g, a).cutwidth;
        auto& f = facts[static_cast<std::size_t>(i)];
        f.spread_bound = total_spread(g, a) <= static_cast<std::int64_t>(c) * g.num_vertices();
        const auto dist = explicit_distribution(g, a);
        const auto best = tree_for_shift(g, a, dist.best_shift);
        f.fcb_identity = best.report.fcb_identity_holds();
        f.best_is_min = std::all_of(dist.shift_totals.begin(), dist.shift_totals.end(),
                                    [&](std::int64_t t) { return best.report.total_stretch <= t; });
        f.total = best.report.total_stretch;
        f.m = g.num_edges();
        f.fcb = best.report.fcb_weight;
    });

    Tally spread;
    Tally identity;
    Tally minimal;
    // Mean of avg / c^2 over seeds for each (c, n).
    std::map<std::pair<int, int>, double> constant;
    std::map<std::pair<int, int>, double> fcb_constant;
    double worst = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& f = facts[i];
        spread.add(f.spread_bound, corpus[i].name);
        identity.add(f.fcb_identity, corpus[i].name);
        minimal.add(f.best_is_min, corpus[i].name);
        const int c = cutwidths[i / (sizes.size() * seeds)];
        const int n = sizes[(i / seeds) % sizes.size()];
        const double value = static_cast<double>(f.total) / static_cast<double>(f.m) / (c * c);
        constant[{c, n}] += value / seeds;
        fcb_constant[{c, n}] += static_cast<double>(f.fcb) / (static_cast<double>(c) * c * n) / seeds;
        worst = std::max(worst, value);
    }
    std::vector<CheckRow> rows;
    rows.push_back(spread.row("cutwidth", "sum of spreads <= c n"));
    rows.push_back(identity.row("cutwidth", "fcb identity (best shift)"));
    rows.push_back(minimal.row("cutwidth", "best shift minimises total stretch"));
    Tally stable;
    double max_ratio = 0;
    for (int c : cutwidths) {
        for (std::size_t k = 1; k < sizes.size(); ++k) {
            const double ratio = constant[{c, sizes[k]}] / constant[{c, sizes[k - 1]}];
            max_ratio = std::max(max_ratio, ratio);
            stable.add(ratio <= 1.2, "c=" + std::to_string(c) + " n=" + std::to_string(sizes[k]));
        }
    }
    auto stable_row = stable.row("cutwidth", "avg / c^2 stable under doubling (ratio <= 1.2)");
    stable_row.detail += ", max ratio " + fixed(max_ratio);
    rows.push_back(stable_row);
    rows.push_back(info("cutwidth", "measured constant C = max avg / c^2", fixed(worst)));
    double fcb_worst = 0;
    for (const auto& [key, value] : fcb_constant) {
        fcb_worst = std::max(fcb_worst, value);
    }
    rows.push_back(info("cutwidth", "measured max fcb / (c^2 n)", fixed(fcb_worst)));

    // A star is its own spanning tree whatever the arrangement.
    std::vector<Edge> star;
    for (Vertex v = 2; v <= 9; ++v) {
        star.push_back({1, v});
    }
    const Graph g(9, star);
    const auto a = LinearArrangement::identity(9);
    const auto best = cutwidth_tree_best_shift(g, a, jobs);
    const auto sampled = cutwidth_tree_sample(g, a, 7);
    rows.push_back(CheckRow{"cutwidth", "star K_{1,8}: stretch 1 in both modes",
                            best.report.avg_stretch() == Rational(1) && sampled.report.avg_stretch() == Rational(1),
                            "cutwidth " + std::to_string(widths(g, a).cutwidth), false});
    return rows;
}

std::vector<CheckRow> verify_distribution(int jobs) {
    std::vector<CorpusGraph> small;
    for (int n : {8, 16, 32}) {
        for (int b : {2, 3}) {
            GeneratorParams p;
            p.family = Family::random_bandwidth;
            p.n = n;
            p.bandwidth = b;
            p.probability = 0.6;
            p.seed = static_cast<std::uint64_t>(n * 10 + b);
            auto gg = generate(p);
            small.push_back({"random_bandwidth b=" + std::to_string(b) + " n=" + std::to_string(n), gg.graph,
                             gg.arrangement});
        }
    }
    for (Family f : {Family::cycle, Family::grid, Family::caterpillar}) {
        for (int n : {4, 12, 20}) {
            GeneratorParams p;
            p.family = f;
            p.n = n;
            p.seed = 3;
            auto gg = generate(p);
            small.push_back({family_name(f) + " n=" + std::to_string(n), gg.graph, gg.arrangement});
        }
    }
    struct Facts {
        bool oracle_equal = false;
        bool windows_agree = false;
        bool jobs_invariant = false;
        bool at_least_one = false;
    };
    std::vector<Facts> facts(small.size());
    parallel_for(static_cast<int>(small.size()), resolve_jobs(jobs), [&](int i) {
        const auto& item = small[static_cast<std::size_t>(i)];
        auto& f = facts[static_cast<std::size_t>(i)];
        const auto report = explicit_distribution(item.graph, item.arrangement);
        f.oracle_equal = report.per_edge_expected == expected_stretch_oracle(item.graph, item.arrangement);
        f.windows_agree = window_agreement(item.graph, item.arrangement).mismatches == 0;
        const auto threaded = explicit_distribution(item.graph, item.arrangement, 3);
        f.jobs_invariant = threaded.per_edge_expected == report.per_edge_expected &&
                           threaded.shift_totals == report.shift_totals && threaded.best_shift == report.best_shift;
        f.at_least_one = std::all_of(report.per_edge_expected.begin(), report.per_edge_expected.end(),
                                     [](const Rational& r) { return r >= Rational(1); });
    });
    Tally oracle;
    Tally windows;
    Tally threads;
    Tally floor;
    for (std::size_t i = 0; i < small.size(); ++i) {
        oracle.add(facts[i].oracle_equal, small[i].name);
        windows.add(facts[i].windows_agree, small[i].name);
        threads.add(facts[i].jobs_invariant, small[i].name);
        floor.add(facts[i].at_least_one, small[i].name);
    }
    std::vector<CheckRow> rows;
    rows.push_back(oracle.row("distribution", "explicit expectations equal the independent oracle"));
    rows.push_back(windows.row("distribution", "trees agree on identically placed windows"));
    rows.push_back(threads.row("distribution", "result independent of thread count"));
    rows.push_back(floor.row("distribution", "every expected stretch >= 1"));

    {
        GeneratorParams p;
        p.family = Family::cycle;
        p.n = 4;
        const auto c4 = generate(p);
        const auto report = explicit_distribution(c4.graph, c4.arrangement);
        bool ok = true;
        for (std::size_t k = 0; k < report.shifts.size(); ++k) {
            ok = ok && report.shift_totals[k] == 6;
        }
        rows.push_back(CheckRow{"distribution", "C_4: each shift drops one edge (total stretch 6)", ok,
                                std::to_string(report.shifts.size()) + " shifts", false});
    }
    {
        GeneratorParams p;
        p.family = Family::random_bandwidth;
        p.n = 300;
        p.bandwidth = 3;
        p.seed = 11;
        const auto gg = generate(p);
        const auto x = sampled_distribution(gg.graph, gg.arrangement, 20, 99, jobs);
        const auto y = sampled_distribution(gg.graph, gg.arrangement, 20, 99, 1);
        const auto s1 = sample_tree(gg.graph, gg.arrangement, 5);
        const auto s2 = sample_tree(gg.graph, gg.arrangement, 5);
        const bool ok = x.shifts == y.shifts && x.per_edge_expected == y.per_edge_expected && s1.shift == s2.shift &&
                        s1.report.tree_edges == s2.report.tree_edges;
        rows.push_back(CheckRow{"distribution", "fixed seed reproduces samples", ok, "20 draws, seed 99", false});
    }

    // Max-over-edges expectation should not grow with n.
    Tally growth;
    std::string measured;
    for (int b : {2, 3}) {
        Rational previous(0);
        for (int n : {64, 128, 256, 512}) {
            GeneratorParams p;
            p.family = Family::random_bandwidth;
            p.n = n;
            p.bandwidth = b;
            p.probability = 0.5;
            p.seed = static_cast<std::uint64_t>(b * 7919 + n);
            const auto gg = generate(p);
            const auto value = explicit_distribution(gg.graph, gg.arrangement, jobs).max_expected();
            measured += (measured.empty() ? "" : " ") + value.to_string();
            if (n > 64) {
                growth.add(value.to_double() <= 1.2 * previous.to_double(),
                           "b=" + std::to_string(b) + " n=" + std::to_string(n));
            }
            previous = value;
        }
    }
    auto growth_row = growth.row("distribution", "max expected stretch non-growing (ratio <= 1.2)");
    growth_row.detail += ", values " + measured;
    rows.push_back(growth_row);
    return rows;
}

std::vector<CheckRow> verify_dp(int jobs) {
    struct Instance {
        std::string name;
        Graph graph;
        TreeDecomposition td;
    };
    std::vector<Instance> instances;
    const auto classes = connected_graphs_up_to_isomorphism(6);
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto& g = classes[i];
        instances.push_back({"class " + std::to_string(i) + " (n=" + std::to_string(g.num_vertices()) + ")", g,
                             elimination_decomposition(g, exact_elimination_order(g))});
    }
    for (const auto& item : named_instances()) {
        instances.push_back({item.name, item.graph, path_decomposition(item.graph, item.arrangement)});
    }

    struct Facts {
        bool equal = false;
        bool witness = false;
        bool count = false;
        bool unpruned = true;
        bool unpruned_checked = false;
        bool width_kept = false;
        bool conformity_size = false;
        bool lower_bound = false;
        bool keys_stable = false;
        std::string error;
    };
    std::vector<Facts> facts(instances.size());
    parallel_for(static_cast<int>(instances.size()), resolve_jobs(jobs), [&](int i) {
        const auto& inst = instances[static_cast<std::size_t>(i)];
        auto& f = facts[static_cast<std::size_t>(i)];
        try {
            const auto& g = inst.graph;
            const auto nice = make_nice(g, inst.td);
            f.width_kept = nice.width() == inst.td.width();
            const auto oracle = enumerate_min_stretch(g);
            f.count = oracle.matrix_tree_count == oracle.spanning_tree_count;
            DpOptions options;
            options.retain_index = true;
            const auto dp = dp_min_stretch(g, nice, options);
            f.equal = dp.total_stretch == oracle.min_total_stretch;
            f.witness = stretch_of(g, dp.tree_edges).total_stretch == dp.total_stretch;
            if (g.num_vertices() <= 5 || g.num_edges() <= 7) {
                DpOptions loose;
                loose.prune = false;
                f.unpruned = dp_min_stretch(g, nice, loose).total_stretch == dp.total_stretch;
                f.unpruned_checked = true;
            }
            const auto conformity = conformity_check(g, nice, dp, oracle.argmin_trees.front());
            f.conformity_size = conformity.max_nodes <= 2 * nice.width() + 2;
            f.lower_bound = conformity.missing == 0 && conformity.violations == 0;
            // Keys survive decode and re-encode, and ignore storage order.
            f.keys_stable = true;
            for (const auto& table : dp.tables) {
                for (const auto& entry : table.entries()) {
                    auto config = Configuration::decode(entry.key);
                    const int last = static_cast<int>(config.nodes.size()) - 1;
                    std::reverse(config.nodes.begin(), config.nodes.end());
                    std::reverse(config.links.begin(), config.links.end());
                    for (auto& link : config.links) {
                        link = Configuration::Link{last - link.b, last - link.a, link.cost, link.side};
                    }
                    f.keys_stable = f.keys_stable && config.key() == entry.key;
                }
            }
        } catch (const std::exception& err) {
            f.error = err.what();
        }
    });

    Tally equal;
    Tally witness;
    Tally count;
    Tally unpruned;
    Tally width;
    Tally size;
    Tally lower;
    Tally keys;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        const auto& f = facts[i];
        const auto who = instances[i].name + (f.error.empty() ? "" : " (" + f.error + ")");
        const bool fine = f.error.empty();
        equal.add(fine && f.equal, who);
        witness.add(fine && f.witness, who);
        count.add(fine && f.count, who);
        if (f.unpruned_checked || !fine) {
            unpruned.add(fine && f.unpruned, who);
        }
        width.add(fine && f.width_kept, who);
        size.add(fine && f.conformity_size, who);
        lower.add(fine && f.lower_bound, who);
        keys.add(fine && f.keys_stable, who);
    }
    return {
        equal.row("dp", "dp optimum equals brute-force minimum"),
        witness.row("dp", "witness tree stretch equals dp optimum"),
        count.row("dp", "enumerated trees equal matrix-tree count"),
        unpruned.row("dp", "pruned and unpruned dp agree"),
        width.row("dp", "nice decomposition keeps the width"),
        size.row("dp", "conformed configurations have <= 2k + 2 vertices"),
        lower.row("dp", "optimal tree's configurations stored at or below its cost"),
        keys.row("dp", "canonical keys stable under reordering"),
    };
}

std::vector<CheckRow> run_suite(const std::string& suite, int jobs) {
    if (suite == "bandwidth") {
        return verify_bandwidth(jobs);
    }
    if (suite == "cutwidth") {
        return verify_cutwidth(jobs);
    }
    if (suite == "distribution") {
        return verify_distribution(jobs);
    }
    if (suite == "dp") {
        return verify_dp(jobs);
    }
    if (suite == "all") {
        std::vector<CheckRow> rows;
        for (const char* name : {"bandwidth", "cutwidth", "distribution", "dp"}) {
            auto part = run_suite(name, jobs);
            rows.insert(rows.end(), part.begin(), part.end());
        }
        return rows;
    }
    throw ValidationError("unknown suite '" + suite + "'");
}

std::string format_rows(const std::vector<CheckRow>& rows) {
    std::size_t width = 0;
    for (const auto& row : rows) {
        width = std::max(width, row.suite.size() + row.name.size() + 2);
    }
    std::ostringstream out;
    for (const auto& row : rows) {
        const char* status = row.informational ? "INFO" : (row.passed ? "PASS" : "FAIL");
        out << status << "  " << std::left << std::setw(static_cast<int>(width)) << (row.suite + ": " + row.name)
            << "  " << row.detail << '\n';
    }
    return out.str();
}

bool all_passed(const std::vector<CheckRow>& rows) {
    return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.informational || r.passed; });
}

}  // namespace widthspan
