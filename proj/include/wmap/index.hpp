#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wmap/f_frequent.hpp"
#include "wmap/hierarchy.hpp"
#include "wmap/slp.hpp"
#include "wmap/stats.hpp"
#include "wmap/suffix_core.hpp"
#include "wmap/tag_runs.hpp"
#include "wmap/tag_tree.hpp"
#include "wmap/tagged_text.hpp"

namespace wmap {

struct BuildOptions {
    u64 f = 1;                 // frequency threshold, fixed per index
    u64 fingerprint_base = 0;  // 0: draw one at random
};

/*
 * The assembled index: run-length BWT, grammar with fingerprint labels,
 * run-condensed tag structures, the interval hierarchy with its forests, the
 * tag tree with the weighted grid, and the triple array for the f-frequent
 * queries. Immutable once built; queries go through PatternSession.
 */
class WheelerMap {
public:
    static WheelerMap build(const TaggedText& tt, const BuildOptions& opts = {});

    const RLBWT& bwt() const { return bwt_; }
    const Slp& slp() const { return slp_; }
    const TagRunIndex& runs() const { return runs_; }
    const IntervalHierarchy& hierarchy() const { return hierarchy_; }
    const TagTree& tag_tree() const { return tag_tree_; }
    const TripleIndex& triple() const { return triple_; }
    const std::vector<std::string>& tag_dict() const { return tag_dict_; }

    u64 text_length() const { return bwt_.size(); }        // n+1
    u32 bwt_run_count() const { return bwt_.num_runs(); }  // r
    u32 tag_run_count() const { return runs_.num_runs(); } // t
    u32 grammar_size() const { return slp_.num_rules(); }  // g
    u64 frequency_threshold() const { return triple_.f(); }
    u64 fingerprint_base() const { return slp_.fingerprinter().base(); }

private:
    friend class IndexCodec;
    RLBWT bwt_;
    Slp slp_;
    TagRunIndex runs_;
    IntervalHierarchy hierarchy_;
    TagTree tag_tree_;
    TripleIndex triple_;
    std::vector<std::string> tag_dict_;
};

struct ListingAnswer {
    std::vector<u32> tags;  // ordered by first-occurrence run in the range
    u32 ops = 0;
};

struct CountAnswer {
    u32 count = 0;
    u32 locate_steps = 0;  // L navigation, O(log t)
    u32 combine_ops = 0;   // constant-bounded arithmetic after locating
};

/*
 * Per-pattern state: tag statistics from one right-to-left pass, after which
 * every substring query P[i..j] (0-based, inclusive) runs on the compressed
 * structures alone. One session per logical query flow.
 */
class PatternSession {
public:
    PatternSession(const WheelerMap& index, std::string pattern);

    const std::string& pattern() const { return pattern_; }
    size_t size() const { return pattern_.size(); }
    const std::vector<TsEntry>& tag_statistics() const { return ts_; }
    const TsEntry& ts(size_t i) const { return ts_[i]; }

    bool occurs(size_t i, size_t j) const;
    std::vector<Mem> mems() const;

    // distinct tags via L navigation plus run listing
    std::optional<ListingAnswer> distinct_tags(size_t i, size_t j) const;
    // distinct tags via the forest probes, same set, O(answer) work
    std::optional<ListingAnswer> optimal_distinct_tags(size_t i, size_t j) const;
    std::optional<CountAnswer> count_distinct_tags(size_t i, size_t j) const;
    // at most k+2 candidates containing every true top-k
    std::optional<std::vector<TopkItem>> topk_tags(size_t i, size_t j, u32 k) const;
    // tags with at least f occurrences of P[i..j]
    std::optional<std::vector<u32>> f_frequent_tags(size_t i, size_t j);

    const std::vector<u64>& f_matching_statistics();

    std::optional<RunRange> runs_overlapping(size_t i, size_t j) const;

private:
    void check_range(size_t i, size_t j) const;

    const WheelerMap& index_;
    std::string pattern_;
    std::vector<TsEntry> ts_;
    std::optional<std::vector<u64>> fms_;  // lazy, owned by this session's flow
};

} // namespace wmap
