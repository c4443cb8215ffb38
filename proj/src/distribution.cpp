#include "widthspan/distribution.hpp"

#include <algorithm>
#include <map>
#include <bit>
#include <random>

#include "widthspan/error.hpp"
#include "widthspan/parallel.hpp"

namespace widthspan {

ShiftedTree tree_for_shift(const Graph& g, const LinearArrangement& a, int shift) {
    return ShiftedTree{shift, build_tree(g, PaddedArrangement(a, shift))};
}

namespace {

int draw_shift(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<int> pick(0, PaddedArrangement::shift_count(n) - 1);
    return pick(rng);
}

DistributionReport evaluate_shifts(const Graph& g, const LinearArrangement& a, std::vector<int> shifts, int jobs) {
    require_connected(g);
    require_matching(g, a);
    const int n = g.num_vertices();
    const int m = g.num_edges();
    DistributionReport report;
    report.n_prime = PaddedArrangement::padded_size(n);
    report.shift_count = PaddedArrangement::shift_count(n);
    report.shifts = std::move(shifts);

    const auto count = static_cast<int>(report.shifts.size());
    std::vector<std::vector<std::int64_t>> stretches(static_cast<std::size_t>(count));
    report.shift_totals.assign(static_cast<std::size_t>(count), 0);
    parallel_for(count, resolve_jobs(jobs), [&](int k) {
        auto tree = tree_for_shift(g, a, report.shifts[static_cast<std::size_t>(k)]);
        report.shift_totals[static_cast<std::size_t>(k)] = tree.report.total_stretch;
        stretches[static_cast<std::size_t>(k)] = std::move(tree.report.per_edge_stretch);
    });

    std::vector<std::int64_t> sums(static_cast<std::size_t>(m), 0);
    for (const auto& row : stretches) {
        for (std::size_t e = 0; e < row.size(); ++e) {
            sums[e] += row[e];
        }
    }
    report.per_edge_expected.reserve(sums.size());
    for (auto s : sums) {
        report.per_edge_expected.emplace_back(s, std::max(count, 1));
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k < report.shift_totals.size(); ++k) {
        const auto total = report.shift_totals[k];
        const auto incumbent = report.shift_totals[best];
        if (total < incumbent || (total == incumbent && report.shifts[k] < report.shifts[best])) {
            best = k;
        }
    }
    report.best_shift = report.shifts.empty() ? 0 : report.shifts[best];
    return report;
}

}  // namespace

ShiftedTree sample_tree(const Graph& g, const LinearArrangement& a, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return tree_for_shift(g, a, draw_shift(rng, g.num_vertices()));
}

Rational DistributionReport::max_expected() const {
    Rational best(0);
    for (const auto& r : per_edge_expected) {
        best = std::max(best, r);
    }
    return best;
}

DistributionReport explicit_distribution(const Graph& g, const LinearArrangement& a, int jobs) {
    std::vector<int> shifts(static_cast<std::size_t>(PaddedArrangement::shift_count(g.num_vertices())));
    for (std::size_t i = 0; i < shifts.size(); ++i) {
        shifts[i] = static_cast<int>(i);
    }
    return evaluate_shifts(g, a, std::move(shifts), jobs);
}

DistributionReport sampled_distribution(const Graph& g, const LinearArrangement& a, int samples,
                                        std::uint64_t seed, int jobs) {
    if (samples <= 0) {
        throw ValidationError("sample count must be positive");
    }
    std::mt19937_64 rng(seed);
    std::vector<int> shifts(static_cast<std::size_t>(samples));
    for (auto& s : shifts) {
        s = draw_shift(rng, g.num_vertices());
    }
    return evaluate_shifts(g, a, std::move(shifts), jobs);
}

ShiftedTree cutwidth_tree_sample(const Graph& g, const LinearArrangement& a, std::uint64_t seed) {
    return sample_tree(g, a, seed);
}

ShiftedTree cutwidth_tree_best_shift(const Graph& g, const LinearArrangement& a, int jobs) {
    const auto report = explicit_distribution(g, a, jobs);
    return tree_for_shift(g, a, report.best_shift);
}

AgreementSummary window_agreement(const Graph& g, const LinearArrangement& a) {
    require_connected(g);
    const int n = g.num_vertices();
    const int n_prime = PaddedArrangement::padded_size(n);
    const int levels = std::countr_zero(static_cast<unsigned>(n_prime));

    // Key: (height, real position of the node's first slot, which may be < 1).
    std::map<std::pair<int, int>, std::vector<EdgeId>> first_seen;
    AgreementSummary summary;
    std::map<std::pair<int, int>, int> seen_count;
    for (int shift = 0; shift < PaddedArrangement::shift_count(n); ++shift) {
        const PaddedArrangement padded(a, shift);
        const auto tree = build_tree(g, padded);
        std::map<std::pair<int, int>, std::vector<EdgeId>> windows;
        for (int h = 0; h <= levels; ++h) {
            const int width = 1 << h;
            for (int start = 0; start < n_prime; start += width) {
                const int real_lo = start + 1 - shift;
                const int real_hi = real_lo + width - 1;
                if (real_hi >= 1 && real_lo <= n) {
                    windows[{h, real_lo}];
                }
            }
        }
        for (EdgeId e : tree.tree_edges) {
            const auto& ed = g.edge(e);
            const int i = padded.padded_position(ed.u) - 1;
            const int j = padded.padded_position(ed.v) - 1;
            for (int h = 0; h <= levels; ++h) {
                if ((i >> h) == (j >> h)) {
                    windows[{h, ((i >> h) << h) + 1 - shift}].push_back(e);
                }
            }
        }
        for (auto& [key, edges] : windows) {
            auto [it, inserted] = first_seen.try_emplace(key, edges);
            if (!inserted) {
                if (seen_count[key]++ == 0) {
                    ++summary.windows;
                }
                ++summary.comparisons;
                if (it->second != edges) {
                    ++summary.mismatches;
                }
            }
        }
    }
    return summary;
}

}  // namespace widthspan
