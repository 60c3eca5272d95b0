#pragma once

#include <optional>
#include <vector>

#include "wmap/common.hpp"
#include "wmap/tag_runs.hpp"

namespace wmap {

/*
 * The maximal threshold intervals of L: for every position p with L[p] >= 1,
 * the widest interval around p containing no value below L[p]. Any two such
 * intervals are equal, disjoint or nested, so they form a forest. Each node
 * knows the tag runs its L-range spans (boundary runs included) and how many
 * distinct tags that run range holds.
 *
 * F_k keeps the nodes holding exactly k distinct tags, with a per-position
 * lowest-containing-node table so a probe costs O(1). Listing then works by
 * probing F_1, F_2, ... and answering through the last probe whose node still
 * lies inside the query's threshold interval.
 */
class IntervalHierarchy {
public:
    struct Node {
        u32 lo = 0, hi = 0;      // L-range
        u64 min_val = 0;         // min of L inside, > L[lo-1] and > L[hi+1]
        u32 parent = kNoTag;
        u32 run_first = 0, run_last = 0;  // overlapped runs, partials included
        bool run_first_partial = false, run_last_partial = false;
        u32 distinct = 0;        // distinct tags in A[run_first..run_last]
    };

    IntervalHierarchy() = default;
    static IntervalHierarchy build(const TagRunIndex& runs);

    u32 num_nodes() const { return static_cast<u32>(nodes_.size()); }
    const Node& node(u32 id) const { return nodes_[id]; }
    const std::vector<Node>& nodes() const { return nodes_; }
    u32 num_forests() const { return K_; }

    // lowest node with exactly k distinct tags containing L position pos
    u32 lowest_in_forest(u32 k, u32 pos) const {
        return forest_lowest_[k - 1][pos];
    }

    struct ListResult {
        std::vector<std::pair<u32, u32>> items;  // (run of first occurrence, tag)
        u32 ops = 0;  // probes + navigation steps + listing visits + emissions
    };
    // distinct tags of P[i..j]'s occurrences, given its tag statistics
    // anchor (run q, up, down) and ell = j-i+1
    ListResult optimal_distinct(const TagRunIndex& runs, u32 q, u64 up, u64 down, u64 ell) const;

private:
    std::vector<Node> nodes_;  // ordered by (lo asc, hi desc): parents precede children
    u32 K_ = 1;
    std::vector<std::vector<u32>> forest_lowest_;  // [k-1][pos] -> node id or kNoTag
};

// distinct-tag counts for run ranges [first..last] over A, offline BIT sweep
std::vector<u32> offline_distinct_counts(const std::vector<u32>& A,
                                         const std::vector<std::pair<u32, u32>>& ranges);

} // namespace wmap
