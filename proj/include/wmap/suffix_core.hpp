#pragma once

#include <array>
#include <optional>
#include <vector>

#include "wmap/common.hpp"

namespace wmap {

struct Interval {
    u32 lo = 0;  // inclusive rank bounds
    u32 hi = 0;
    u32 width() const { return hi - lo + 1; }
    bool operator==(const Interval&) const = default;
};

/*
 * Run-length BWT with LF-mapping, backward search, and per-character
 * predecessor/successor over run boundaries. BWT[q] = text[sa[q]-1], with the
 * terminator as the character preceding position 0, so the terminator occurs
 * exactly once in the BWT (at the rank of the full-text suffix).
 */
class RLBWT {
public:
    RLBWT() = default;

    static RLBWT build(const std::vector<u8>& text, const std::vector<u32>& sa);
    // Reassembles derived tables from the serialized fields.
    static RLBWT from_runs(std::vector<u8> run_chars, std::vector<u64> run_lens,
                           std::vector<u64> sa_head, std::vector<u64> sa_tail);

    u64 size() const { return size_; }           // n+1
    u32 num_runs() const { return static_cast<u32>(run_chars_.size()); }

    u8 char_at(u64 q) const { return run_chars_[run_of(q)]; }
    u64 lf(u64 q) const;

    // SA interval of pattern, or nullopt if it does not occur.
    std::optional<Interval> backward_search(const u8* pat, size_t len) const;

    // one backward-search step: interval of c.S from the interval of S
    std::optional<Interval> extend_left(const Interval& iv, u8 c) const;
    Interval full_interval() const { return Interval{0, static_cast<u32>(size_ - 1)}; }

    // Nearest occurrences of c strictly before/after position q, given
    // char_at(q) != c. The predecessor is a run tail and the successor a run
    // head, so both carry SA samples. kNone when absent.
    struct Neighbors {
        i64 pred = kNone;
        i64 succ = kNone;
    };
    Neighbors run_boundary_pred_succ(u64 q, u8 c) const;

    u32 run_of(u64 q) const;
    u64 run_start(u32 r) const { return run_starts_[r]; }
    u64 run_end(u32 r) const { return run_starts_[r] + run_lens_[r] - 1; }
    u64 sa_at_run_head(u32 r) const { return sa_head_[r]; }
    u64 sa_at_run_tail(u32 r) const { return sa_tail_[r]; }

    const std::vector<u8>& run_chars() const { return run_chars_; }
    const std::vector<u64>& run_lens() const { return run_lens_; }
    const std::vector<u64>& sa_head_samples() const { return sa_head_; }
    const std::vector<u64>& sa_tail_samples() const { return sa_tail_; }

private:
    void finish();
    // occurrences of c in BWT[0..q-1]
    u64 rank(u8 c, u64 q) const;

    u64 size_ = 0;
    std::vector<u8> run_chars_;
    std::vector<u64> run_lens_;
    std::vector<u64> run_starts_;
    std::vector<u64> sa_head_, sa_tail_;
    std::array<u64, 256> count_before_{};          // C array
    std::array<std::vector<u32>, 256> char_runs_;  // runs per character, in order
    std::array<std::vector<u64>, 256> char_run_cum_;  // occurrences before each such run
};

} // namespace wmap
