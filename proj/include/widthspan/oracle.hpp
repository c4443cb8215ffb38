#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "widthspan/arrangement.hpp"
#include "widthspan/error.hpp"
#include "widthspan/graph.hpp"
#include "widthspan/rational.hpp"

namespace widthspan {

using BigInt = boost::multiprecision::cpp_int;

/// Kirchhoff count: determinant of the Laplacian with vertex 1's row and
/// column removed, by fraction-free Bareiss elimination.
BigInt spanning_tree_count(const Graph& g);

/// Thrown when a graph has more spanning trees than the enumeration cap.
class CapExceeded : public ValidationError {
public:
    CapExceeded(const BigInt& count, std::uint64_t cap)
        : ValidationError("graph has " + count.str() + " spanning trees, cap is " + std::to_string(cap)),
          count_(count) {}

    const BigInt& count() const noexcept { return count_; }

private:
    BigInt count_;
};

struct OracleResult {
    std::uint64_t spanning_tree_count = 0;  // enumerated
    BigInt matrix_tree_count;              // computed independently
    std::int64_t min_total_stretch = 0;
    std::vector<std::vector<EdgeId>> argmin_trees;     // ascending IDs, lexicographic order
    std::map<std::int64_t, std::uint64_t> histogram;  // total stretch -> trees; filled on request
};

/// Enumerates every spanning tree by include/exclude recursion over edge IDs.
/// Throws CapExceeded (before enumerating) when the count exceeds `cap`.
OracleResult enumerate_min_stretch(const Graph& g, std::uint64_t cap = 1'000'000, bool histogram = false);

/// Exact per-edge expected stretch over all shifts, recomputed without the
/// arrangement tree, the LCA structure or the library's Kruskal.
std::vector<Rational> expected_stretch_oracle(const Graph& g, const LinearArrangement& a);

}  // namespace widthspan
