#pragma once

#include <optional>
#include <vector>

#include "wmap/common.hpp"

namespace wmap {

// Runs of the tag array overlapping the SA interval of some P[i..j]. Partial
// flags say whether the boundary runs stick out of the interval.
struct RunRange {
    u32 first = 0;
    u32 last = 0;
    bool first_partial = false;
    bool last_partial = false;

    u32 contained_first() const { return first + (first_partial ? 1 : 0); }
    // may wrap below contained_first when no run is fully contained
    i64 contained_last() const { return static_cast<i64>(last) - (last_partial ? 1 : 0); }
    bool has_contained() const { return static_cast<i64>(contained_first()) <= contained_last(); }
    bool operator==(const RunRange&) const = default;
};

/*
 * Run-condensed view of the tag array: A holds one tag per run, R the run
 * lengths, U/D the rank bounds, and L interleaves the intra-run LCPs W with
 * the inter-run LCPs B between 0-sentinels:
 *
 *   L[0..2t] = 0, W[0], B[0], W[1], B[1], ..., W[t-1], 0
 *
 * Threshold navigation over L replaces SA-interval computation: the runs
 * overlapping the interval of P[i..j] are bounded by the nearest L entries
 * below j-i+1 on either side of the run holding the pattern's rank.
 */
class TagRunIndex {
public:
    struct NavResult {
        i64 pos = kNone;  // L index found
        u32 steps = 0;    // tree nodes visited
    };
    struct Listing {
        std::vector<std::pair<u32, u32>> items;  // (run index of first occurrence, tag)
        u32 visits = 0;                          // probed nonempty subranges, <= 2k
    };

    TagRunIndex() = default;

    static TagRunIndex build(const std::vector<u32>& tag_array, const std::vector<u32>& sa,
                             const std::vector<u8>& text);
    static TagRunIndex from_arrays(std::vector<u32> tags, std::vector<u64> lens,
                                   std::vector<u64> sa_at_head, std::vector<u64> sa_at_tail,
                                   std::vector<u64> l_array);

    u32 num_runs() const { return t_; }
    u32 tag_of_run(u32 r) const { return A_[r]; }
    u64 run_len(u32 r) const { return R_[r]; }
    u64 run_first_rank(u32 r) const { return U_[r]; }
    u64 run_last_rank(u32 r) const { return U_[r] + R_[r] - 1; }
    u64 sa_at_run_first(u32 r) const { return sa_U_[r]; }
    u64 sa_at_run_last(u32 r) const { return sa_D_[r]; }
    u32 run_of_rank(u64 rank) const;
    u32 num_tags() const { return num_tags_; }

    const std::vector<u64>& l_array() const { return L_; }
    const std::vector<u32>& run_tags() const { return A_; }
    const std::vector<u64>& run_lens() const { return R_; }
    const std::vector<u64>& sa_head_samples() const { return sa_U_; }
    const std::vector<u64>& sa_tail_samples() const { return sa_D_; }

    // largest p <= hi with L[p] < threshold / smallest p >= lo with
    // L[p] < threshold; the 0-sentinels guarantee a hit for threshold >= 1
    NavResult pred_below(i64 hi, u64 threshold) const;
    NavResult succ_below(i64 lo, u64 threshold) const;

    // Lemma-7 style run location from tag statistics of P[i..j]: q is the run
    // holding the pattern's rank, up/down the LCPs against that run's
    // boundary suffixes, ell = j-i+1 <= the match length.
    struct LocatedRange {
        RunRange range;
        u32 nav_steps = 0;
    };
    LocatedRange run_range_for(u32 q, u64 up, u64 down, u64 ell) const;

    // distinct tags of A[s..e] (inclusive), each exactly once, O(k) visits
    Listing list_distinct(u32 s, u32 e) const;

private:
    void finish();
    void nav_search(u32 node, u32 node_lo, u32 node_hi, i64 qlo, i64 qhi, u64 threshold,
                    bool rightmost, i64& found, u32& steps) const;

    u32 t_ = 0;
    u32 num_tags_ = 0;
    std::vector<u32> A_;
    std::vector<u64> R_;
    std::vector<u64> U_;
    std::vector<u64> sa_U_, sa_D_;
    std::vector<u64> L_;

    // L min-tree
    u32 tree_leaves_ = 1;
    std::vector<u64> tree_min_;

    // Muthukrishnan machinery over A
    std::vector<i64> prev_occ_;
    std::vector<std::vector<u32>> argmin_table_;  // sparse table of argmin(prev_occ)
    u32 argmin(u32 lo, u32 hi) const;
};

} // namespace wmap
