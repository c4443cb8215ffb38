#include "widthspan/corpus.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>

#include "widthspan/error.hpp"
#include "widthspan/generators.hpp"

namespace widthspan {

namespace {

CorpusGraph from_params(const GeneratorParams& p, std::string name) {
    auto generated = generate(p);
    return CorpusGraph{std::move(name), std::move(generated.graph), std::move(generated.arrangement)};
}

}  // namespace

std::vector<CorpusGraph> bandwidth_corpus() {
    std::vector<CorpusGraph> corpus;
    for (int b = 1; b <= 6; ++b) {
        for (int n = 16; n <= 2048; n *= 2) {
            for (double p : {0.3, 0.7}) {
                GeneratorParams params;
                params.family = Family::random_bandwidth;
                params.n = n;
                params.bandwidth = b;
                params.probability = p;
                params.seed = static_cast<std::uint64_t>(1000 * b + n) + (p < 0.5 ? 0 : 7);
                corpus.push_back(from_params(params, "random_bandwidth b=" + std::to_string(b) + " n=" +
                                                         std::to_string(n) + " p=" + (p < 0.5 ? "0.3" : "0.7")));
            }
        }
    }
    for (int n : {16, 100, 512, 2000}) {
        for (Family f : {Family::path, Family::cycle, Family::caterpillar}) {
            GeneratorParams params;
            params.family = f;
            params.n = n;
            params.seed = static_cast<std::uint64_t>(n);
            corpus.push_back(from_params(params, family_name(f) + " n=" + std::to_string(n)));
        }
    }
    for (int width : {2, 3, 4, 5, 6}) {
        GeneratorParams params;
        params.family = Family::grid;
        params.n = width * 40;
        params.grid_width = width;
        corpus.push_back(from_params(params, "grid " + std::to_string(width) + "x40"));
    }
    return corpus;
}

std::vector<CorpusGraph> cutwidth_corpus(const std::vector<int>& cutwidths, const std::vector<int>& sizes, int seeds) {
    std::vector<CorpusGraph> corpus;
    for (int c : cutwidths) {
        for (int n : sizes) {
            for (int s = 1; s <= seeds; ++s) {
                GeneratorParams params;
                params.family = Family::random_cutwidth;
                params.n = n;
                params.cutwidth = c;
                params.seed = static_cast<std::uint64_t>(s);
                corpus.push_back(from_params(params, "random_cutwidth c=" + std::to_string(c) + " n=" +
                                                         std::to_string(n) + " seed=" + std::to_string(s)));
            }
        }
    }
    return corpus;
}

std::vector<Graph> connected_graphs_up_to_isomorphism(int max_n) {
    if (max_n > 7) {
        throw ValidationError("isomorphism-class enumeration is limited to 7 vertices");
    }
    std::vector<Graph> out;
    for (int n = 1; n <= max_n; ++n) {
        std::vector<std::pair<int, int>> pairs;
        std::vector<std::vector<int>> pair_index(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) {
                pair_index[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] =
                    pair_index[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = static_cast<int>(pairs.size());
                pairs.emplace_back(u, v);
            }
        }
        std::vector<std::vector<int>> perms;
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        do {
            perms.push_back(perm);
        } while (std::next_permutation(perm.begin(), perm.end()));

        std::set<std::uint32_t> canonical;
        const std::uint32_t limit = 1u << pairs.size();
        for (std::uint32_t mask = 0; mask < limit; ++mask) {
            // Connectivity first; it is much cheaper than canonicalisation.
            std::uint32_t reached = 1;
            for (bool grew = true; grew;) {
                grew = false;
                for (std::size_t k = 0; k < pairs.size(); ++k) {
                    if (!(mask >> k & 1u)) {
                        continue;
                    }
                    const auto [u, v] = pairs[k];
                    const bool hu = reached >> u & 1u;
                    const bool hv = reached >> v & 1u;
                    if (hu != hv) {
                        reached |= (1u << u) | (1u << v);
                        grew = true;
                    }
                }
            }
            if (reached != (1u << n) - 1) {
                continue;
            }
            std::uint32_t best = mask;
            for (const auto& p : perms) {
                std::uint32_t image = 0;
                for (std::size_t k = 0; k < pairs.size(); ++k) {
                    if (mask >> k & 1u) {
                        const auto [u, v] = pairs[k];
                        image |= 1u << pair_index[static_cast<std::size_t>(p[static_cast<std::size_t>(u)])]
                                                  [static_cast<std::size_t>(p[static_cast<std::size_t>(v)])];
                    }
                }
                best = std::min(best, image);
            }
            canonical.insert(best);
        }
        for (std::uint32_t code : canonical) {
            std::vector<Edge> edges;
            for (std::size_t k = 0; k < pairs.size(); ++k) {
                if (code >> k & 1u) {
                    edges.push_back(Edge{pairs[k].first + 1, pairs[k].second + 1});
                }
            }
            out.emplace_back(n, std::move(edges));
        }
    }
    return out;
}

std::vector<CorpusGraph> named_instances() {
    std::vector<CorpusGraph> out;
    for (int n = 2; n <= 10; ++n) {
        GeneratorParams params;
        params.family = Family::path;
        params.n = n;
        out.push_back(from_params(params, "P_" + std::to_string(n)));
    }
    for (int n = 3; n <= 10; ++n) {
        GeneratorParams params;
        params.family = Family::cycle;
        params.n = n;
        out.push_back(from_params(params, "C_" + std::to_string(n)));
    }
    {
        GeneratorParams params;
        params.family = Family::complete;
        params.n = 4;
        out.push_back(from_params(params, "K_4"));
    }
    {
        GeneratorParams params;
        params.family = Family::grid;
        params.n = 6;
        params.grid_width = 3;
        out.push_back(from_params(params, "grid 2x3"));
    }
    return out;
}

}  // namespace widthspan
