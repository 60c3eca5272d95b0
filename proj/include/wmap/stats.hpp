#pragma once

#include <optional>
#include <vector>

#include "wmap/common.hpp"
#include "wmap/slp.hpp"
#include "wmap/suffix_core.hpp"
#include "wmap/tag_runs.hpp"

namespace wmap {

// one entry per pattern position, plus the empty-suffix sentinel at index m
struct XmsEntry {
    u64 len = 0;   // longest prefix of P[i..] occurring in the text
    u64 pos = 0;   // text position of one such occurrence
    u64 rank = 0;  // SA rank of that occurrence
};

struct TsEntry {
    u64 len = 0;
    u64 pos = 0;
    u64 rank = 0;
    u32 run = 0;   // tag-array run containing rank
    u64 up = 0;    // LCP(P[i..], suffix at the run's first rank)
    u64 down = 0;  // LCP(P[i..], suffix at the run's last rank)
};

struct Mem {
    size_t start = 0;
    u64 len = 0;
};

// One right-to-left pass: match step via LF, mismatch step via the
// run-boundary neighbors and two LCP-oracle calls.
std::vector<XmsEntry> compute_xms(const RLBWT& bwt, const Slp& slp, const PatternHashes& ph,
                                  const u8* pat, size_t m);

std::vector<TsEntry> compute_tag_statistics(const RLBWT& bwt, const Slp& slp,
                                            const TagRunIndex& runs, const PatternHashes& ph,
                                            const u8* pat, size_t m);

// matches not contained in the previous position's match, lengths >= 1
std::vector<Mem> find_mems(const std::vector<XmsEntry>& xms);

// fms[i] = longest prefix of P[i..] occurring at least f times in the text
std::vector<u64> compute_fms(const RLBWT& bwt, const u8* pat, size_t m, u64 f);

} // namespace wmap
