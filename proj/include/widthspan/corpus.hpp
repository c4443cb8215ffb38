#pragma once

#include <string>
#include <vector>

#include "widthspan/arrangement.hpp"
#include "widthspan/graph.hpp"

namespace widthspan {

struct CorpusGraph {
    std::string name;
    Graph graph;
    LinearArrangement arrangement;  // witness arrangement
};

/// random_bandwidth(b, p) for b in 1..6, n in {16, 32, ..., 2048},
/// p in {0.3, 0.7}, plus paths, cycles, grids and caterpillars.
std::vector<CorpusGraph> bandwidth_corpus();

/// random_cutwidth(c) for the given c values and sizes, `seeds` seeds each.
std::vector<CorpusGraph> cutwidth_corpus(const std::vector<int>& cutwidths, const std::vector<int>& sizes, int seeds);

/// One representative per isomorphism class of connected graphs on 1..max_n
/// vertices (max_n <= 7), in order of vertex count then canonical code.
std::vector<Graph> connected_graphs_up_to_isomorphism(int max_n);

/// P_n and C_n for n <= 10, K_4 and the 2x3 grid, with witness arrangements.
std::vector<CorpusGraph> named_instances();

}  // namespace widthspan
