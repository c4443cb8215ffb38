// Command-line front end: one subcommand per library operation plus the
// verification suites.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "widthspan/arrangement.hpp"
#include "widthspan/distribution.hpp"
#include "widthspan/error.hpp"
#include "widthspan/generators.hpp"
#include "widthspan/graph.hpp"
#include "widthspan/lowstretch.hpp"
#include "widthspan/oracle.hpp"
#include "widthspan/parallel.hpp"
#include "widthspan/report.hpp"
#include "widthspan/tree_decomposition.hpp"
#include "widthspan/twdp.hpp"
#include "widthspan/verify.hpp"

namespace ws = widthspan;

namespace {

constexpr int exit_usage = 2;
constexpr int exit_invalid = 1;
constexpr int exit_internal = 3;

struct Context {
    ws::RunManifest manifest;
    std::string manifest_path;
    int jobs = 0;

    // Writes to `path`, or stdout when empty, and records the digest.
    void emit(const std::string& content, const std::string& path, const std::string& name = "stdout") {
        if (path.empty()) {
            std::cout << content;
            manifest.add_output(name, content);
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw std::runtime_error("cannot write " + path);
        }
        out << content;
        manifest.add_output(path, content);
    }

    ws::Graph graph(const std::string& path) {
        manifest.add_input(path);
        return ws::load_graph_file(path);
    }

    ws::LinearArrangement arrangement(const std::string& path, const ws::Graph& g) {
        manifest.add_input(path);
        return ws::load_arrangement_file(path, g.num_vertices());
    }

    void finish() const {
        const auto text = manifest.to_json().dump(2) + "\n";
        if (manifest_path.empty()) {
            std::cerr << text;
        } else {
            std::ofstream(manifest_path) << text;
        }
    }
};

std::string dump(const ws::Json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Low-stretch spanning trees from linear arrangements and tree decompositions"};
    app.require_subcommand(1);
    std::vector<std::string> args(argv, argv + argc);
    Context ctx{ws::RunManifest(args), "", 0};
    app.add_option("--jobs", ctx.jobs, "Worker threads (default: WIDTHSPAN_JOBS or 1)")->check(CLI::PositiveNumber);
    app.add_option("--manifest", ctx.manifest_path, "Write the run manifest here instead of stderr");

    std::string graph_path;
    std::string arrangement_path;
    std::string out_path;

    auto* stats = app.add_subcommand("stats", "Widths and arrangement-tree statistics");
    stats->add_option("--graph", graph_path)->required();
    stats->add_option("--arrangement", arrangement_path)->required();

    std::string report_path;
    auto* build = app.add_subcommand("build-tree", "Spanning tree from a linear arrangement");
    build->add_option("--graph", graph_path)->required();
    build->add_option("--arrangement", arrangement_path)->required();
    build->add_option("--report", report_path, "Write the JSON report here; stdout gets the tree edge list");

    bool explicit_mode = false;
    int samples = 0;
    std::uint64_t seed = 0;
    std::string csv_path;
    auto* dist = app.add_subcommand("distribution", "Stretch over shifted padded arrangements");
    dist->add_option("--graph", graph_path)->required();
    dist->add_option("--arrangement", arrangement_path)->required();
    auto* explicit_flag = dist->add_flag("--explicit", explicit_mode, "Every shift once (exact expectations)");
    auto* sample_opt = dist->add_option("--sample", samples, "Number of random shifts")->check(CLI::PositiveNumber);
    dist->add_option("--seed", seed);
    dist->add_option("--out", out_path);
    dist->add_option("--csv", csv_path, "Per-edge CSV: edge_id,u,v,spread,expected_stretch");
    explicit_flag->excludes(sample_opt);

    bool best_shift = false;
    std::optional<std::uint64_t> cut_seed;
    auto* cut = app.add_subcommand("cutwidth-tree", "Tree from one random shift or the best shift");
    cut->add_option("--graph", graph_path)->required();
    cut->add_option("--arrangement", arrangement_path)->required();
    auto* best_flag = cut->add_flag("--best-shift", best_shift);
    auto* seed_opt = cut->add_option("--seed", cut_seed);
    cut->add_option("--out", out_path);
    best_flag->excludes(seed_opt);

    std::string td_path;
    bool check_oracle = false;
    bool no_prune = false;
    int max_width = 3;
    int max_n = 24;
    auto* dp = app.add_subcommand("dp-min-stretch", "Exact minimum-stretch tree over a tree decomposition");
    dp->add_option("--graph", graph_path)->required();
    dp->add_option("--td", td_path, "PACE .td file")->required();
    dp->add_flag("--check-oracle", check_oracle, "Compare with exhaustive enumeration");
    dp->add_flag("--no-prune", no_prune, "Disable pruning of unrealisable guesses");
    dp->add_option("--max-width", max_width, "Refuse wider decompositions")->check(CLI::NonNegativeNumber);
    dp->add_option("--max-n", max_n, "Refuse larger graphs")->check(CLI::PositiveNumber);
    dp->add_option("--out", out_path);

    std::uint64_t cap = 1'000'000;
    bool histogram = false;
    auto* oracle = app.add_subcommand("oracle", "Enumerate every spanning tree");
    oracle->add_option("--graph", graph_path)->required();
    oracle->add_option("--cap", cap, "Refuse graphs with more spanning trees");
    oracle->add_flag("--histogram", histogram);
    oracle->add_option("--out", out_path);

    std::string family;
    ws::GeneratorParams params;
    auto* gen = app.add_subcommand("gen", "Generate a graph with a witness arrangement");
    gen->add_option("--family", family, "path, cycle, grid, complete, caterpillar, random_bandwidth, random_cutwidth")
        ->required();
    gen->add_option("--n", params.n)->required();
    gen->add_option("--seed", params.seed);
    gen->add_option("--b", params.bandwidth, "random_bandwidth: bandwidth");
    gen->add_option("--p", params.probability, "random_bandwidth: edge probability");
    gen->add_option("--c", params.cutwidth, "random_cutwidth: cutwidth bound");
    gen->add_option("--width", params.grid_width, "grid: columns");
    gen->add_option("--out", out_path, "Write PREFIX.graph, PREFIX.arr and PREFIX.td");

    std::string suite = "all";
    auto* verify = app.add_subcommand("verify", "Run invariant suites");
    verify->add_option("--suite", suite)->check(CLI::IsMember({"bandwidth", "cutwidth", "distribution", "dp", "all"}));

    // Global flags may follow the subcommand.
    for (auto* sub : app.get_subcommands({})) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try {
        const int jobs = ws::resolve_jobs(ctx.jobs);
        int status = 0;
        if (*stats) {
            const auto g = ctx.graph(graph_path);
            const auto a = ctx.arrangement(arrangement_path, g);
            ctx.emit(dump(ws::stats_json(g, a)), "");
        } else if (*build) {
            const auto g = ctx.graph(graph_path);
            const auto a = ctx.arrangement(arrangement_path, g);
            const auto report = ws::build_tree(g, a);
            const auto json = dump(ws::stretch_report_json(g, report));
            if (report_path.empty()) {
                ctx.emit(json, "");
            } else {
                ctx.emit(json, report_path);
                ctx.emit(ws::tree_edge_list(g, report.tree_edges), "");
            }
        } else if (*dist) {
            if (!explicit_mode && samples == 0) {
                std::cerr << "distribution: give --explicit or --sample N\n";
                return exit_usage;
            }
            const auto g = ctx.graph(graph_path);
            const auto a = ctx.arrangement(arrangement_path, g);
            if (!explicit_mode) {
                ctx.manifest.set_seed(seed);
            }
            const auto report = explicit_mode ? ws::explicit_distribution(g, a, jobs)
                                              : ws::sampled_distribution(g, a, samples, seed, jobs);
            ctx.emit(dump(ws::distribution_json(g, report, explicit_mode)), out_path);
            if (!csv_path.empty()) {
                ctx.emit(ws::distribution_csv(g, a, report), csv_path);
            }
        } else if (*cut) {
            if (!best_shift && !cut_seed) {
                std::cerr << "cutwidth-tree: give --best-shift or --seed S\n";
                return exit_usage;
            }
            const auto g = ctx.graph(graph_path);
            const auto a = ctx.arrangement(arrangement_path, g);
            if (cut_seed) {
                ctx.manifest.set_seed(*cut_seed);
            }
            const auto tree = best_shift ? ws::cutwidth_tree_best_shift(g, a, jobs) : ws::cutwidth_tree_sample(g, a, *cut_seed);
            ws::Json json;
            json["mode"] = best_shift ? "best_shift" : "sample";
            json["cutwidth"] = ws::widths(g, a).cutwidth;
            json["shift"] = tree.shift;
            json["report"] = ws::stretch_report_json(g, tree.report);
            ctx.emit(dump(json), out_path);
        } else if (*dp) {
            const auto g = ctx.graph(graph_path);
            ctx.manifest.add_input(td_path);
            const auto td = ws::load_td_file(td_path);
            ws::validate_decomposition(g, td);
            if (td.width() > max_width || g.num_vertices() > max_n) {
                std::cerr << "dp-min-stretch: width " << td.width() << " and n = " << g.num_vertices()
                          << " exceed the limits (width <= " << max_width << ", n <= " << max_n
                          << "); tables grow like n^(k+1). Raise --max-width / --max-n to proceed.\n";
                return exit_invalid;
            }
            const auto nice = ws::make_nice(g, td);
            ws::DpOptions options;
            options.prune = !no_prune;
            const auto result = ws::dp_min_stretch(g, nice, options);
            if (check_oracle) {
                const auto truth = ws::enumerate_min_stretch(g).min_total_stretch;
                const bool same = truth == result.total_stretch;
                ctx.emit(std::to_string(result.total_stretch) + (same ? " = " : " != ") + std::to_string(truth) + "\n", "");
                if (!out_path.empty()) {
                    ctx.emit(dump(ws::dp_json(g, nice, result)), out_path);
                }
                status = same ? 0 : exit_invalid;
            } else {
                ctx.emit(dump(ws::dp_json(g, nice, result)), out_path);
            }
        } else if (*oracle) {
            const auto g = ctx.graph(graph_path);
            ctx.emit(dump(ws::oracle_json(ws::enumerate_min_stretch(g, cap, histogram), histogram)), out_path);
        } else if (*gen) {
            const auto parsed = ws::parse_family(family);
            if (!parsed) {
                std::cerr << "gen: unknown family '" << family << "'\n";
                return exit_usage;
            }
            params.family = *parsed;
            ctx.manifest.set_seed(params.seed);
            const auto generated = ws::generate(params);
            const auto& g = generated.graph;
            if (out_path.empty()) {
                ctx.emit(ws::serialize_graph(g), "");
            } else {
                auto td = ws::path_decomposition(g, generated.arrangement);
                auto alt = ws::elimination_decomposition(g, ws::min_degree_order(g));
                if (alt.width() < td.width()) {
                    td = std::move(alt);
                }
                ctx.emit(ws::serialize_graph(g), out_path + ".graph");
                ctx.emit(ws::serialize_arrangement(generated.arrangement), out_path + ".arr");
                ctx.emit(ws::serialize_td(td), out_path + ".td");
            }
        } else if (*verify) {
            const auto rows = ws::run_suite(suite, jobs);
            ctx.emit(ws::format_rows(rows), "");
            status = ws::all_passed(rows) ? 0 : exit_invalid;
        }
        ctx.finish();
        return status;
    } catch (const ws::CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_invalid;
    } catch (const ws::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_invalid;
    } catch (const ws::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_invalid;
    } catch (const ws::InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_internal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_invalid;
    }
}
