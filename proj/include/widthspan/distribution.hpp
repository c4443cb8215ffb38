#pragma once

#include <cstdint>
#include <vector>

#include "widthspan/arrangement.hpp"
#include "widthspan/graph.hpp"
#include "widthspan/lowstretch.hpp"
#include "widthspan/rational.hpp"

namespace widthspan {

struct ShiftedTree {
    int shift = 0;
    StretchReport report;
};

/// Tree T_i for one shift of the padded arrangement.
ShiftedTree tree_for_shift(const Graph& g, const LinearArrangement& a, int shift);

/// Draws a shift uniformly from 0 .. shift_count(n) - 1 with mt19937_64(seed).
ShiftedTree sample_tree(const Graph& g, const LinearArrangement& a, std::uint64_t seed);

/*
 * Stretch statistics over a multiset of shifts. In explicit mode the shifts
 * are every admissible shift once, so per_edge_expected is the exact
 * expectation under the uniform distribution.
 */
struct DistributionReport {
    int n_prime = 0;
    int shift_count = 0;                     // admissible shifts
    std::vector<int> shifts;                 // shifts evaluated, in order
    std::vector<std::int64_t> shift_totals;  // total stretch, aligned with `shifts`
    std::vector<Rational> per_edge_expected;
    int best_shift = 0;  // smallest shift attaining the minimum total

    Rational shift_avg(std::size_t k, int m) const {
        return m == 0 ? Rational(0) : Rational(shift_totals[k], m);
    }
    Rational max_expected() const;
};

DistributionReport explicit_distribution(const Graph& g, const LinearArrangement& a, int jobs = 1);

/// `samples` shifts drawn in sequence from mt19937_64(seed).
DistributionReport sampled_distribution(const Graph& g, const LinearArrangement& a, int samples,
                                        std::uint64_t seed, int jobs = 1);

/// One random shift (sample mode) or the minimum-average shift over all shifts.
ShiftedTree cutwidth_tree_sample(const Graph& g, const LinearArrangement& a, std::uint64_t seed);
ShiftedTree cutwidth_tree_best_shift(const Graph& g, const LinearArrangement& a, int jobs = 1);

struct AgreementSummary {
    int windows = 0;      // (height, node start) keys seen by at least two shifts
    int comparisons = 0;  // pairwise checks against the first shift that saw the key
    int mismatches = 0;
};

/*
 * For every pair of shifts and every perfect-tree node of the same height
 * whose window starts at the same real position (so it covers the same real
 * vertices with the same internal alignment), the two trees restricted to that
 * window must coincide. Quadratic in n; meant for small instances.
 */
AgreementSummary window_agreement(const Graph& g, const LinearArrangement& a);

}  // namespace widthspan
