#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "widthspan/arrangement.hpp"
#include "widthspan/distribution.hpp"
#include "widthspan/graph.hpp"
#include "widthspan/lowstretch.hpp"
#include "widthspan/oracle.hpp"
#include "widthspan/twdp.hpp"

namespace widthspan {

using Json = nlohmann::ordered_json;

inline constexpr const char* version_string = "0.1.0";

/// 64-bit FNV-1a, printed as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

/// Exact values are strings ("3/2", "7"); floats never appear in reports.
inline Json rational_json(const Rational& r) { return r.to_string(); }

Json stats_json(const Graph& g, const LinearArrangement& a);
Json stretch_report_json(const Graph& g, const StretchReport& report);
Json distribution_json(const Graph& g, const DistributionReport& report, bool explicit_mode);
Json oracle_json(const OracleResult& result, bool histogram);
Json dp_json(const Graph& g, const NiceTreeDecomposition& ntd, const DpResult& result);

/// CSV with header edge_id,u,v,spread,expected_stretch.
std::string distribution_csv(const Graph& g, const LinearArrangement& a, const DistributionReport& report);

/// Tree edges as an edge-list file (same format as graph input).
std::string tree_edge_list(const Graph& g, const std::vector<EdgeId>& tree_edges);

/*
 * Provenance of one CLI run: the command line, digests of every input and
 * output, seed and library version, and elapsed time. Everything except
 * wall_clock_ms is a function of the inputs.
 */
class RunManifest {
public:
    explicit RunManifest(std::vector<std::string> argv);

    void add_input(const std::string& path);
    void add_output(const std::string& name, std::string_view content);
    void set_seed(std::uint64_t seed) { seed_ = seed; has_seed_ = true; }

    Json to_json() const;

private:
    std::vector<std::string> argv_;
    std::vector<std::pair<std::string, std::string>> inputs_;
    std::vector<std::pair<std::string, std::string>> outputs_;
    std::uint64_t seed_ = 0;
    bool has_seed_ = false;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace widthspan
