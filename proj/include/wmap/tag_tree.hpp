#pragma once

#include <optional>
#include <vector>

#include "wmap/common.hpp"
#include "wmap/hierarchy.hpp"
#include "wmap/tag_runs.hpp"

namespace wmap {

struct TopkItem {
    u32 tag = 0;
    u64 weight = 0;     // occurrences inside fully contained runs
    bool exact = true;  // false when the tag also sticks into a boundary run
};

/*
 * Containment tree over the whole-run segments of the tag array: the interval
 * hierarchy restricted to the odd (intra-run) positions of L, completed with
 * one leaf per run and a special root. Per-tag virtual trees hang weighted
 * upward pointers on it; those become points (preorder, ancestor depth) of a
 * grid supporting k-heaviest queries, which answers top-k most frequent tag
 * queries. Nodes also store distinct-tag counts and boundary-tag booleans so
 * distinct counting is a lowest-common-ancestor lookup plus O(1) arithmetic.
 */
class TagTree {
public:
    struct Node {
        u32 seg_first = 0, seg_last = 0;  // contained-run segment
        u32 parent = kNoTag;
        u32 depth = 0;
        u32 pre = 0;                       // preorder
        u32 pre_max = 0;                   // max preorder in subtree
        u32 distinct = 0;                  // distinct tags in A[seg_first..seg_last]
        bool left_tag_new = false;         // A[seg_first-1] not in the segment
        bool right_tag_new = false;        // A[seg_last+1] not in the segment
    };

    struct Point {
        u32 x = 0;        // preorder of the pointer's source
        u32 y = 0;        // depth of the pointer's target
        u64 weight = 0;
        u32 weight_rank = 0;  // dense rank of weight, order-preserving
        u32 tag = 0;
    };

    TagTree() = default;
    static TagTree build(const TagRunIndex& runs, const IntervalHierarchy& hierarchy);

    u32 num_nodes() const { return static_cast<u32>(nodes_.size()); }
    const Node& node(u32 id) const { return nodes_[id]; }
    u32 root() const { return root_; }
    u32 leaf_of_run(u32 r) const { return leaf_of_run_[r]; }
    u32 lca(u32 a, u32 b) const;
    const std::vector<Point>& points() const { return points_; }

    // k heaviest points with x in [xlo..xhi] and y <= ymax; ties broken by
    // smaller tag, then smaller x
    std::vector<Point> heaviest_in_range(u32 xlo, u32 xhi, u32 ymax, u32 k) const;

    // candidates for the k most frequent tags of P[i..j], given its run
    // range; at most k+2 items, superset of every true top-k
    std::vector<TopkItem> topk_tags(const TagRunIndex& runs, const RunRange& range, u32 k) const;

    struct CountResult {
        u32 count = 0;
        u32 ops = 0;  // constant-bounded work after the range is known
    };
    CountResult count_distinct(const TagRunIndex& runs, const RunRange& range) const;

private:
    void build_points(const TagRunIndex& runs);
    void build_grid();

    std::vector<Node> nodes_;      // preorder: nodes_[i].pre == i
    u32 root_ = 0;
    std::vector<u32> leaf_of_run_;

    // Euler tour for O(1) LCA
    std::vector<u32> euler_, first_visit_;
    std::vector<std::vector<u32>> euler_min_;  // sparse table, argmin by depth

    std::vector<Point> points_;  // sorted by x
    std::vector<u64> weight_by_rank_;
    // merge tree over x: per level, points sorted by y; per level, sparse
    // argmax tables by (weight, tag asc, x asc)
    struct GridLevel {
        std::vector<u32> starts;             // segment starts per tree node
        std::vector<u32> point_ids;          // this level's points, y-sorted per segment
        std::vector<std::vector<u32>> best;  // sparse argmax over point_ids
    };
    std::vector<GridLevel> grid_;
    u32 grid_leaves_ = 1;

    bool point_better(u32 a, u32 b) const;
};

} // namespace wmap
