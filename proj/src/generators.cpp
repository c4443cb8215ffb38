#include "widthspan/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "widthspan/error.hpp"

namespace widthspan {

std::optional<Family> parse_family(std::string_view name) {
    if (name == "path") return Family::path;
    if (name == "cycle") return Family::cycle;
    if (name == "grid") return Family::grid;
    if (name == "complete") return Family::complete;
    if (name == "caterpillar") return Family::caterpillar;
    if (name == "random_bandwidth" || name == "random-bandwidth") return Family::random_bandwidth;
    if (name == "random_cutwidth" || name == "random-cutwidth") return Family::random_cutwidth;
    return std::nullopt;
}

std::string family_name(Family family) {
    switch (family) {
        case Family::path: return "path";
        case Family::cycle: return "cycle";
        case Family::grid: return "grid";
        case Family::complete: return "complete";
        case Family::caterpillar: return "caterpillar";
        case Family::random_bandwidth: return "random_bandwidth";
        case Family::random_cutwidth: return "random_cutwidth";
    }
    return "unknown";
}

namespace {

GeneratedGraph make_path(int n) {
    std::vector<Edge> edges;
    for (Vertex v = 1; v < n; ++v) {
        edges.push_back({v, v + 1});
    }
    return {Graph(n, std::move(edges)), LinearArrangement::identity(n)};
}

GeneratedGraph make_cycle(int n) {
    if (n < 3) {
        throw ValidationError("cycle needs n >= 3");
    }
    std::vector<Edge> edges;
    for (Vertex v = 1; v < n; ++v) {
        edges.push_back({v, v + 1});
    }
    edges.push_back({1, n});
    std::vector<Vertex> order{1};
    int lo = 2;
    int hi = n;
    bool take_low = true;
    while (lo <= hi) {
        order.push_back(take_low ? lo++ : hi--);
        take_low = !take_low;
    }
    return {Graph(n, std::move(edges)), LinearArrangement::from_order(std::move(order))};
}

GeneratedGraph make_grid(int n, int width) {
    if (width <= 0) {
        width = std::max(1, static_cast<int>(std::floor(std::sqrt(static_cast<double>(n)))));
    }
    std::vector<Edge> edges;
    for (Vertex v = 1; v <= n; ++v) {
        const int col = (v - 1) % width;
        if (col + 1 < width && v + 1 <= n) {
            edges.push_back({v, v + 1});
        }
        if (v + width <= n) {
            edges.push_back({v, v + width});
        }
    }
    return {Graph(n, std::move(edges)), LinearArrangement::identity(n)};
}

GeneratedGraph make_complete(int n) {
    std::vector<Edge> edges;
    for (Vertex u = 1; u <= n; ++u) {
        for (Vertex v = u + 1; v <= n; ++v) {
            edges.push_back({u, v});
        }
    }
    return {Graph(n, std::move(edges)), LinearArrangement::identity(n)};
}

GeneratedGraph make_caterpillar(int n, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> legs(0, 2);
    std::vector<Edge> edges;
    Vertex previous_spine = 0;
    Vertex next = 1;
    while (next <= n) {
        const Vertex spine = next++;
        if (previous_spine != 0) {
            edges.push_back({previous_spine, spine});
        }
        previous_spine = spine;
        const int count = legs(rng);
        for (int k = 0; k < count && next <= n; ++k) {
            edges.push_back({spine, next++});
        }
    }
    return {Graph(n, std::move(edges)), LinearArrangement::identity(n)};
}

GeneratedGraph make_random_bandwidth(int n, int b, double p, std::mt19937_64& rng) {
    if (b < 1) {
        throw ValidationError("random_bandwidth needs b >= 1");
    }
    if (!(p > 0.0 && p <= 1.0)) {
        throw ValidationError("random_bandwidth needs 0 < p <= 1");
    }
    std::bernoulli_distribution keep(p);
    std::vector<Edge> edges;
    for (Vertex u = 1; u <= n; ++u) {
        for (int d = 1; d <= b && u + d <= n; ++d) {
            // Drawn for every candidate so the stream does not depend on d == 1.
            const bool kept = keep(rng);
            if (d == 1 || kept) {
                edges.push_back({u, u + d});
            }
        }
    }
    return {Graph(n, std::move(edges)), LinearArrangement::identity(n)};
}

GeneratedGraph make_random_cutwidth(int n, int c, std::mt19937_64& rng) {
    if (c < 1) {
        throw ValidationError("random_cutwidth needs c >= 1");
    }
    std::vector<Edge> edges;
    std::set<std::pair<Vertex, Vertex>> present;
    std::vector<int> load(static_cast<std::size_t>(n) + 1, 0);  // load[i]: edges over gap i | i+1
    for (Vertex v = 1; v < n; ++v) {
        edges.push_back({v, v + 1});
        present.emplace(v, v + 1);
        ++load[static_cast<std::size_t>(v)];
    }
    if (n >= 3 && c >= 2) {
        const int max_exponent = std::max(1, static_cast<int>(std::ceil(std::log2(static_cast<double>(n)))));
        std::uniform_int_distribution<int> start(1, n - 2);
        std::uniform_int_distribution<int> exponent(1, max_exponent);
        const int attempts = 3 * n;
        for (int t = 0; t < attempts; ++t) {
            const Vertex u = start(rng);
            const int reach = 1 << exponent(rng);
            std::uniform_int_distribution<int> length(2, std::max(2, reach));
            const Vertex v = std::min(n, u + length(rng));
            if (v - u < 2 || present.contains({u, v})) {
                continue;
            }
            bool fits = true;
            for (int gap = u; gap < v && fits; ++gap) {
                fits = load[static_cast<std::size_t>(gap)] < c;
            }
            if (!fits) {
                continue;
            }
            for (int gap = u; gap < v; ++gap) {
                ++load[static_cast<std::size_t>(gap)];
            }
            present.emplace(u, v);
            edges.push_back({u, v});
        }
    }
    return {Graph(n, std::move(edges)), LinearArrangement::identity(n)};
}

}  // namespace

GeneratedGraph generate(const GeneratorParams& params) {
    if (params.n < 2) {
        throw ValidationError("generator needs n >= 2");
    }
    std::mt19937_64 rng(params.seed);
    switch (params.family) {
        case Family::path: return make_path(params.n);
        case Family::cycle: return make_cycle(params.n);
        case Family::grid: return make_grid(params.n, params.grid_width);
        case Family::complete: return make_complete(params.n);
        case Family::caterpillar: return make_caterpillar(params.n, rng);
        case Family::random_bandwidth:
            return make_random_bandwidth(params.n, params.bandwidth, params.probability, rng);
        case Family::random_cutwidth: return make_random_cutwidth(params.n, params.cutwidth, rng);
    }
    throw ValidationError("unknown family");
}

}  // namespace widthspan
