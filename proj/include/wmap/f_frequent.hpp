#pragma once

#include <optional>
#include <vector>

#include "wmap/common.hpp"
#include "wmap/suffix_core.hpp"
#include "wmap/tag_runs.hpp"

namespace wmap {

/*
 * Queries for tags labeling at least f occurrences of P[i..j], with f fixed
 * when the index is built.
 *
 * Triple array: entries 2r and 2r+1 describe the start and end of tag run r.
 * An entry holds the run's tag, a pointer to the previous entry with the same
 * tag (so per-tag chains), and the length of the longest prefix of its
 * boundary suffix occurring in the text at least f times under that tag.
 * A tag qualifies for P[i..j] iff its first entry inside the query's Triple
 * interval has ptr before the interval and len >= j-i+1, which one 4-sided
 * dominance query reports without deduplication.
 */
class TripleIndex {
public:
    struct Entry {
        u32 tag = 0;
        i64 ptr = kNone;  // previous same-tag entry
        u64 len = 0;
    };

    TripleIndex() = default;

    // build-time scaffolding: full SA plus per-tag rank lists
    static TripleIndex build(u64 f, const std::vector<u8>& text, const std::vector<u32>& sa,
                             const std::vector<u32>& tag_array, const TagRunIndex& runs);
    static TripleIndex from_lens(u64 f, std::vector<u64> lens, const TagRunIndex& runs);

    u64 f() const { return f_; }
    const Entry& entry(u32 q) const { return entries_[q]; }
    u32 size() const { return static_cast<u32>(entries_.size()); }
    std::vector<u64> lens() const;

    // Triple interval for a run range: boundary entries lying inside the SA
    // interval; empty (lo > hi) when the interval sits strictly inside a run
    static std::pair<i64, i64> triple_interval(const RunRange& range);

    // tags whose entry dominates (x in [u..v], ptr < u, len >= ell)
    std::vector<u32> report(u32 u, u32 v, u64 ell) const;

private:
    void build_dominance();

    u64 f_ = 1;
    std::vector<Entry> entries_;

    // merge tree over entry index; per node, entries sorted by ptr with a
    // sparse argmax table over len
    struct Level {
        std::vector<u32> starts;
        std::vector<u32> ids;
        std::vector<std::vector<u32>> best;
    };
    std::vector<Level> levels_;
    u32 leaves_ = 1;
};

} // namespace wmap
