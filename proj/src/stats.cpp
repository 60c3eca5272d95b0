#include "wmap/stats.hpp"

#include <cassert>

namespace wmap {

std::vector<XmsEntry> compute_xms(const RLBWT& bwt, const Slp& slp, const PatternHashes& ph,
                                  const u8* pat, size_t m) {
    const u64 n1 = bwt.size();
    std::vector<XmsEntry> xms(m + 1);
    xms[m] = XmsEntry{0, n1 - 1, 0};

    for (size_t i = m; i-- > 0;) {
        const XmsEntry& nxt = xms[i + 1];
        const u8 c = pat[i];
        if (bwt.char_at(nxt.rank) == c) {
            xms[i] = XmsEntry{nxt.len + 1, nxt.pos - 1, bwt.lf(nxt.rank)};
        } else {
            auto nb = bwt.run_boundary_pred_succ(nxt.rank, c);
            if (nb.pred == kNone && nb.succ == kNone) {
                // c does not occur in the text at all
                xms[i] = XmsEntry{0, n1 - 1, 0};
                continue;
            }
            // LCP of P[i+1..] against the neighbor suffixes, capped at the
            // previous match length so the queried pattern piece occurs in T
            const u64 cap = nxt.len;
            i64 ext_pred = -1, ext_succ = -1;
            u64 sa_pred = 0, sa_succ = 0;
            if (nb.pred != kNone) {
                sa_pred = bwt.sa_at_run_tail(bwt.run_of(nb.pred));
                ext_pred = cap == 0 ? 0
                                    : static_cast<i64>(
                                          slp.lcp_with_text_suffix(ph, i + 1, i + cap, sa_pred).lcp);
            }
            if (nb.succ != kNone) {
                sa_succ = bwt.sa_at_run_head(bwt.run_of(nb.succ));
                ext_succ = cap == 0 ? 0
                                    : static_cast<i64>(
                                          slp.lcp_with_text_suffix(ph, i + 1, i + cap, sa_succ).lcp);
            }
            if (ext_pred >= ext_succ) {
                xms[i] = XmsEntry{static_cast<u64>(ext_pred) + 1, sa_pred - 1,
                                  bwt.lf(static_cast<u64>(nb.pred))};
            } else {
                xms[i] = XmsEntry{static_cast<u64>(ext_succ) + 1, sa_succ - 1,
                                  bwt.lf(static_cast<u64>(nb.succ))};
            }
        }
        assert(xms[i].len <= nxt.len + 1);
        assert(xms[i].len <= m - i);
    }
    return xms;
}

std::vector<TsEntry> compute_tag_statistics(const RLBWT& bwt, const Slp& slp,
                                            const TagRunIndex& runs, const PatternHashes& ph,
                                            const u8* pat, size_t m) {
    std::vector<XmsEntry> xms = compute_xms(bwt, slp, ph, pat, m);
    std::vector<TsEntry> ts(m + 1);
    for (size_t i = 0; i <= m; ++i) {
        TsEntry& e = ts[i];
        e.len = xms[i].len;
        e.pos = xms[i].pos;
        e.rank = xms[i].rank;
        e.run = runs.run_of_rank(e.rank);
        if (e.len == 0) continue;  // nothing of P[i..] occurs, both LCPs are 0
        e.up = slp.lcp_with_text_suffix(ph, i, i + e.len - 1, runs.sa_at_run_first(e.run)).lcp;
        e.down = slp.lcp_with_text_suffix(ph, i, i + e.len - 1, runs.sa_at_run_last(e.run)).lcp;
    }
    return ts;
}

std::vector<Mem> find_mems(const std::vector<XmsEntry>& xms) {
    std::vector<Mem> mems;
    const size_t m = xms.size() - 1;
    for (size_t i = 0; i < m; ++i) {
        if (xms[i].len == 0) continue;
        if (i == 0 || xms[i - 1].len < xms[i].len + 1) mems.push_back({i, xms[i].len});
    }
    return mems;
}

std::vector<u64> compute_fms(const RLBWT& bwt, const u8* pat, size_t m, u64 f) {
    std::vector<u64> fms(m + 1, 0);
    // for every end j, extend leftwards while P[x..j] still has >= f
    // occurrences; widths only shrink as x moves left
    for (size_t j = 0; j < m; ++j) {
        std::optional<Interval> iv = bwt.full_interval();
        for (size_t x = j + 1; x-- > 0;) {
            iv = bwt.extend_left(*iv, pat[x]);
            if (!iv || iv->width() < f) break;
            fms[x] = std::max<u64>(fms[x], j - x + 1);
        }
    }
    return fms;
}

} // namespace wmap
