#include "wmap/f_frequent.hpp"

#include <algorithm>
#include <cassert>

namespace wmap {

namespace {

// sparse range-minimum table over the consecutive-suffix LCP array
struct LcpRmq {
    std::vector<std::vector<u64>> table;

    explicit LcpRmq(const std::vector<u64>& lcp) {
        table.emplace_back(lcp);
        for (u32 lvl = 1; (1u << lvl) <= lcp.size(); ++lvl) {
            u32 span = 1u << lvl;
            table.emplace_back(lcp.size() - span + 1);
            for (u32 i = 0; i + span <= lcp.size(); ++i)
                table[lvl][i] = std::min(table[lvl - 1][i], table[lvl - 1][i + span / 2]);
        }
    }
    // min over lcp[lo..hi]
    u64 min(u32 lo, u32 hi) const {
        u32 span = hi - lo + 1;
        u32 lvl = 31 - __builtin_clz(span);
        return std::min(table[lvl][lo], table[lvl][hi - (1u << lvl) + 1]);
    }
};

std::vector<u64> kasai_lcp(const std::vector<u8>& text, const std::vector<u32>& sa) {
    const size_t n = text.size();
    std::vector<u32> rank_of(n);
    for (size_t q = 0; q < n; ++q) rank_of[sa[q]] = static_cast<u32>(q);
    std::vector<u64> lcp(n, 0);
    size_t h = 0;
    for (size_t p = 0; p < n; ++p) {
        if (rank_of[p] == 0) {
            h = 0;
            continue;
        }
        size_t x = sa[rank_of[p] - 1];
        while (p + h < n && x + h < n && text[p + h] == text[x + h]) ++h;
        lcp[rank_of[p]] = h;
        if (h > 0) --h;
    }
    return lcp;
}

} // namespace

TripleIndex TripleIndex::build(u64 f, const std::vector<u8>& text, const std::vector<u32>& sa,
                               const std::vector<u32>& tag_array, const TagRunIndex& runs) {
    if (f < 1) throw data_error("frequency threshold must be at least 1");
    TripleIndex ti;
    ti.f_ = f;
    const u32 t = runs.num_runs();
    const u64 n1 = text.size();

    std::vector<u64> lcp = kasai_lcp(text, sa);
    LcpRmq rmq(lcp);
    std::vector<std::vector<u32>> tag_ranks(runs.num_tags());
    for (u32 q = 0; q < tag_array.size(); ++q) tag_ranks[tag_array[q]].push_back(q);

    // SA interval of the length-ell prefix of the suffix at rank p
    auto prefix_interval = [&](u32 p, u64 ell) -> std::pair<u32, u32> {
        u32 lo = p, hi = p;
        {
            u32 a = 0, b = p;  // leftmost a with min lcp(a+1..p) >= ell
            while (a < b) {
                u32 mid = a + (b - a) / 2;
                if (rmq.min(mid + 1, p) >= ell)
                    b = mid;
                else
                    a = mid + 1;
            }
            lo = a;
        }
        {
            u32 a = p, b = static_cast<u32>(n1) - 1;
            while (a < b) {
                u32 mid = a + (b - a + 1) / 2;
                if (rmq.min(p + 1, mid) >= ell)
                    a = mid;
                else
                    b = mid - 1;
            }
            hi = a;
        }
        return {lo, hi};
    };
    auto tagged_occurrences = [&](u32 tag, u32 lo, u32 hi) -> u64 {
        const auto& ranks = tag_ranks[tag];
        auto a = std::lower_bound(ranks.begin(), ranks.end(), lo);
        auto b = std::upper_bound(ranks.begin(), ranks.end(), hi);
        return static_cast<u64>(b - a);
    };

    ti.entries_.resize(2 * t);
    for (u32 q = 0; q < 2 * t; ++q) {
        u32 run = q / 2;
        u32 tag = runs.tag_of_run(run);
        u32 rank = static_cast<u32>(q % 2 == 0 ? runs.run_first_rank(run)
                                               : runs.run_last_rank(run));
        u64 suffix_len = n1 - sa[rank];
        // longest ell with >= f occurrences of the prefix under this tag;
        // occurrence counts only shrink as ell grows
        u64 lo = 0, hi = suffix_len;
        while (lo < hi) {
            u64 mid = lo + (hi - lo + 1) / 2;
            auto [a, b] = prefix_interval(rank, mid);
            if (tagged_occurrences(tag, a, b) >= f)
                lo = mid;
            else
                hi = mid - 1;
        }
        ti.entries_[q].tag = tag;
        ti.entries_[q].len = lo;
    }
    // per-tag chains
    {
        std::vector<i64> last(runs.num_tags(), kNone);
        for (u32 q = 0; q < ti.entries_.size(); ++q) {
            ti.entries_[q].ptr = last[ti.entries_[q].tag];
            last[ti.entries_[q].tag] = q;
        }
    }
    ti.build_dominance();
    return ti;
}

TripleIndex TripleIndex::from_lens(u64 f, std::vector<u64> lens, const TagRunIndex& runs) {
    TripleIndex ti;
    ti.f_ = f;
    ti.entries_.resize(lens.size());
    std::vector<i64> last(runs.num_tags(), kNone);
    for (u32 q = 0; q < lens.size(); ++q) {
        ti.entries_[q].tag = runs.tag_of_run(q / 2);
        ti.entries_[q].len = lens[q];
        ti.entries_[q].ptr = last[ti.entries_[q].tag];
        last[ti.entries_[q].tag] = q;
    }
    ti.build_dominance();
    return ti;
}

std::vector<u64> TripleIndex::lens() const {
    std::vector<u64> out(entries_.size());
    for (u32 q = 0; q < entries_.size(); ++q) out[q] = entries_[q].len;
    return out;
}

std::pair<i64, i64> TripleIndex::triple_interval(const RunRange& range) {
    i64 u = range.first_partial ? 2 * static_cast<i64>(range.first) + 1
                                : 2 * static_cast<i64>(range.first);
    i64 v = range.last_partial ? 2 * static_cast<i64>(range.last)
                               : 2 * static_cast<i64>(range.last) + 1;
    return {u, v};
}

void TripleIndex::build_dominance() {
    const u32 p = static_cast<u32>(entries_.size());
    leaves_ = 1;
    while (leaves_ < std::max<u32>(p, 1)) leaves_ *= 2;
    levels_.clear();

    auto better = [&](u32 a, u32 b) { return entries_[a].len > entries_[b].len; };

    std::vector<u32> cur(p);
    for (u32 i = 0; i < p; ++i) cur[i] = i;
    std::vector<u32> starts(leaves_ + 1);
    for (u32 s = 0; s <= leaves_; ++s) starts[s] = std::min(s, p);
    u32 seg_count = leaves_;
    while (true) {
        Level lvl;
        lvl.starts = starts;
        lvl.ids = cur;
        if (!cur.empty()) {
            lvl.best.emplace_back(cur.size());
            for (u32 i = 0; i < cur.size(); ++i) lvl.best[0][i] = i;
            for (u32 l = 1; (1u << l) <= cur.size(); ++l) {
                u32 span = 1u << l;
                lvl.best.emplace_back(cur.size() - span + 1);
                for (u32 i = 0; i + span <= cur.size(); ++i) {
                    u32 a = lvl.best[l - 1][i];
                    u32 b = lvl.best[l - 1][i + span / 2];
                    lvl.best[l][i] = better(cur[a], cur[b]) ? a : b;
                }
            }
        }
        levels_.push_back(std::move(lvl));
        if (seg_count == 1) break;
        std::vector<u32> nxt;
        nxt.reserve(cur.size());
        std::vector<u32> nxt_starts(seg_count / 2 + 1, 0);
        for (u32 s = 0; s < seg_count; s += 2) {
            u32 a = starts[s], ae = starts[s + 1];
            u32 b = starts[s + 1], be = starts[s + 2];
            nxt_starts[s / 2] = static_cast<u32>(nxt.size());
            while (a < ae || b < be) {
                bool take_a =
                    b >= be || (a < ae && entries_[cur[a]].ptr <= entries_[cur[b]].ptr);
                nxt.push_back(take_a ? cur[a++] : cur[b++]);
            }
        }
        nxt_starts[seg_count / 2] = static_cast<u32>(nxt.size());
        cur = std::move(nxt);
        starts = std::move(nxt_starts);
        seg_count /= 2;
    }
}

std::vector<u32> TripleIndex::report(u32 u, u32 v, u64 ell) const {
    std::vector<u32> out;
    if (entries_.empty() || u > v) return out;

    struct Frame {
        u32 level, seg, seg_lo, seg_hi;
    };
    std::vector<Frame> stack{{static_cast<u32>(levels_.size()) - 1, 0, 0, leaves_ - 1}};
    std::vector<std::pair<u32, std::pair<u32, u32>>> prefixes;  // (level, [lo..hi])
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.seg_hi < u || f.seg_lo > v) continue;
        const Level& lvl = levels_[f.level];
        if (u <= f.seg_lo && f.seg_hi <= v) {
            u32 a = lvl.starts[f.seg], b = lvl.starts[f.seg + 1];
            if (a >= b) continue;
            // ptr < u prefix of the y-sorted segment
            u32 lo = a, hi = b;
            while (lo < hi) {
                u32 mid = lo + (hi - lo) / 2;
                if (entries_[lvl.ids[mid]].ptr < static_cast<i64>(u))
                    lo = mid + 1;
                else
                    hi = mid;
            }
            if (lo > a) prefixes.emplace_back(f.level, std::make_pair(a, lo - 1));
            continue;
        }
        u32 mid = f.seg_lo + (f.seg_hi - f.seg_lo) / 2;
        stack.push_back({f.level - 1, 2 * f.seg, f.seg_lo, mid});
        stack.push_back({f.level - 1, 2 * f.seg + 1, mid + 1, f.seg_hi});
    }

    // emit everything with len >= ell by recursive argmax splitting
    for (auto [level, range] : prefixes) {
        const Level& lvl = levels_[level];
        std::vector<std::pair<u32, u32>> todo{range};
        while (!todo.empty()) {
            auto [lo, hi] = todo.back();
            todo.pop_back();
            if (lo > hi) continue;
            u32 span = hi - lo + 1;
            u32 l = 31 - __builtin_clz(span);
            u32 a = lvl.best[l][lo];
            u32 b = lvl.best[l][hi - (1u << l) + 1];
            u32 arg = entries_[lvl.ids[a]].len >= entries_[lvl.ids[b]].len ? a : b;
            if (entries_[lvl.ids[arg]].len < ell) continue;
            out.push_back(entries_[lvl.ids[arg]].tag);
            if (arg > lo) todo.emplace_back(lo, arg - 1);
            if (arg < hi) todo.emplace_back(arg + 1, hi);
        }
    }
    return out;
}

} // namespace wmap
