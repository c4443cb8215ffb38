#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "widthspan/arrangement.hpp"
#include "widthspan/graph.hpp"

namespace widthspan {

enum class Family { path, cycle, grid, complete, caterpillar, random_bandwidth, random_cutwidth };

std::optional<Family> parse_family(std::string_view name);
std::string family_name(Family family);

struct GeneratorParams {
    Family family = Family::path;
    int n = 2;
    std::uint64_t seed = 0;
    int bandwidth = 2;         // random_bandwidth: b
    double probability = 0.5;  // random_bandwidth: p
    int cutwidth = 2;          // random_cutwidth: c
    int grid_width = 0;        // grid: columns; 0 picks floor(sqrt(n))
};

struct GeneratedGraph {
    Graph graph;
    LinearArrangement arrangement;  // witness arrangement
};

/*
 * Deterministic test-corpus generators. Each returns a connected simple graph
 * plus a witness arrangement:
 *
 *   path, complete            identity order (bandwidth 1 and n - 1)
 *   cycle                     order 1, 2, n, 3, n-1, ...  (bandwidth 2)
 *   grid                      row-major order (bandwidth = width)
 *   caterpillar               spine vertex followed by its 0..2 legs
 *   random_bandwidth(b, p)    identity order; each pair at distance 2..b kept
 *                             with probability p, distance-1 pairs always kept
 *   random_cutwidth(c)        identity order; path plus random longer edges
 *                             admitted while every gap carries < c edges
 */
GeneratedGraph generate(const GeneratorParams& params);

}  // namespace widthspan
