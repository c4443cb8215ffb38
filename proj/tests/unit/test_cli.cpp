#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "widthspan/distribution.hpp"
#include "widthspan/error.hpp"
#include "widthspan/lowstretch.hpp"
#include "widthspan/oracle.hpp"
#include "widthspan/report.hpp"
#include "widthspan/verify.hpp"

using namespace widthspan;
namespace fs = std::filesystem;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

// Runs the CLI with stderr discarded.
Run cli(const std::string& args) {
    const std::string command = std::string(WIDTHSPAN_CLI) + " " + args + " 2>/dev/null";
    Run run;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buffer[4096];
    std::size_t got = 0;
    while ((got = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) {
        run.out.append(buffer, got);
    }
    const int raw = pclose(pipe);
    run.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return run;
}

fs::path scratch_dir() {
    auto dir = fs::temp_directory_path() / ("widthspan_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir;
}

void write(const fs::path& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("fnv1a digests") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
    CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("reports keep exact values as strings") {
    const auto g = oracle::cycle(4);
    const auto a = LinearArrangement::from_order({1, 2, 4, 3});
    const auto j = stretch_report_json(g, build_tree(g, a));
    CHECK(j["avg_stretch"] == "3/2");
    CHECK(j["total_stretch"] == 6);
    CHECK(j["fcb_weight"] == 4);
    CHECK(j["fcb_identity_holds"] == true);

    const auto dist = distribution_json(g, explicit_distribution(g, a), true);
    CHECK(dist["mode"] == "explicit");
    for (const auto& x : dist["per_edge_expected_stretch"]) {
        CHECK(x.is_string());
    }
    const auto csv = distribution_csv(g, a, explicit_distribution(g, a));
    CHECK(csv.rfind("edge_id,u,v,spread,expected_stretch\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);

    const auto o = oracle_json(enumerate_min_stretch(oracle::complete(4), 100, true), true);
    CHECK(o["matrix_tree_count"] == "16");
    CHECK(o["min_total_stretch"] == 9);
    std::uint64_t trees = 0;
    for (const auto& row : o["histogram"]) {
        trees += row["trees"].get<std::uint64_t>();
    }
    CHECK(trees == 16);

    CHECK(tree_edge_list(g, {0, 1, 2}) == "p 4 3\ne 1 2\ne 2 3\ne 3 4\n");
}

TEST_CASE("manifest") {
    const auto dir = scratch_dir();
    write(dir / "in.txt", "hello");
    RunManifest manifest({"widthspan", "stats"});
    manifest.add_input((dir / "in.txt").string());
    manifest.add_output("stdout", "result");
    manifest.set_seed(42);
    const auto j = manifest.to_json();
    CHECK(j["command"] == Json::array({"widthspan", "stats"}));
    CHECK(j["inputs"][0]["fnv1a64"] == fnv1a_hex("hello"));
    CHECK(j["outputs"][0]["fnv1a64"] == fnv1a_hex("result"));
    CHECK(j["seed"] == 42);
    CHECK(j["version"] == version_string);
    CHECK(j.contains("wall_clock_ms"));
    fs::remove_all(dir);
}

TEST_CASE("suite table") {
    std::vector<CheckRow> rows{{"s", "first", true, "1/1", false}, {"s", "second", false, "0/1", false},
                               {"s", "note", false, "7", true}};
    const auto text = format_rows(rows);
    CHECK(text.find("PASS  s: first") != std::string::npos);
    CHECK(text.find("FAIL  s: second") != std::string::npos);
    CHECK(text.find("INFO  s: note") != std::string::npos);
    CHECK_FALSE(all_passed(rows));
    rows.erase(rows.begin() + 1);
    CHECK(all_passed(rows));
    CHECK_THROWS_AS(run_suite("nonsense"), ValidationError);
}

TEST_CASE("command line") {
    const auto dir = scratch_dir();
    const auto prefix = (dir / "c4").string();

    SUBCASE("gen then build-tree") {
        REQUIRE(cli("gen --family cycle --n 4 --out " + prefix).status == 0);
        CHECK(fs::exists(prefix + ".graph"));
        CHECK(fs::exists(prefix + ".arr"));
        CHECK(fs::exists(prefix + ".td"));
        const auto run = cli("build-tree --graph " + prefix + ".graph --arrangement " + prefix + ".arr --report " +
                             prefix + ".json");
        CHECK(run.status == 0);
        std::ifstream in(prefix + ".json");
        const auto j = Json::parse(in);
        CHECK(j["avg_stretch"] == "3/2");
        // stdout carries the tree as an edge list
        CHECK(load_graph(run.out).num_edges() == 3);
    }

    SUBCASE("dp against the oracle on K_4") {
        write(dir / "k4.graph", "p 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n");
        write(dir / "k4.td", "s td 1 4 4\nb 1 1 2 3 4\n");
        const auto run = cli("dp-min-stretch --graph " + (dir / "k4.graph").string() + " --td " +
                             (dir / "k4.td").string() + " --check-oracle");
        CHECK(run.status == 0);
        CHECK(run.out.find("9 = 9") != std::string::npos);
    }

    SUBCASE("exit codes") {
        CHECK(cli("").status == 2);
        CHECK(cli("frobnicate").status == 2);
        CHECK(cli("stats --graph").status == 2);
        write(dir / "dup.graph", "p 2 2\ne 1 2\ne 1 2\n");
        CHECK(cli("oracle --graph " + (dir / "dup.graph").string()).status == 1);
        CHECK(cli("oracle --graph " + (dir / "missing.graph").string()).status == 1);
        write(dir / "k4.graph", "p 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n");
        CHECK(cli("oracle --graph " + (dir / "k4.graph").string() + " --cap 10").status == 1);
        CHECK(cli("verify --suite nope").status != 0);
    }

    SUBCASE("global flags after the subcommand") {
        REQUIRE(cli("gen --family path --n 5 --out " + prefix).status == 0);
        const auto manifest = (dir / "m.json").string();
        const auto run = cli("stats --graph " + prefix + ".graph --arrangement " + prefix + ".arr --jobs 2 --manifest " +
                             manifest);
        CHECK(run.status == 0);
        std::ifstream in(manifest);
        const auto j = Json::parse(in);
        CHECK(j["inputs"].size() == 2);
        CHECK(j["outputs"][0]["fnv1a64"] == fnv1a_hex(run.out));
    }

    SUBCASE("seeded runs are byte-identical") {
        REQUIRE(cli("gen --family random_bandwidth --n 40 --b 3 --p 0.5 --seed 9 --out " + prefix).status == 0);
        const std::string args = "distribution --graph " + prefix + ".graph --arrangement " + prefix +
                                 ".arr --sample 5 --seed 3";
        const auto first = cli(args);
        CHECK(first.status == 0);
        CHECK(cli(args + " --jobs 3").out == first.out);
        CHECK(cli(args).out == first.out);
    }
    fs::remove_all(dir);
}
