#include "wmap/tag_runs.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_map>

namespace wmap {

namespace {

// Kasai: lcp[q] = LCP of suffixes at ranks q-1 and q, lcp[0] = 0.
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

TagRunIndex TagRunIndex::build(const std::vector<u32>& tag_array, const std::vector<u32>& sa,
                               const std::vector<u8>& text) {
    TagRunIndex idx;
    const size_t n1 = tag_array.size();
    std::vector<u64> lcp = kasai_lcp(text, sa);

    std::vector<u64> W;
    for (size_t q = 0; q < n1; ++q) {
        if (idx.A_.empty() || idx.A_.back() != tag_array[q]) {
            idx.A_.push_back(tag_array[q]);
            idx.R_.push_back(1);
            idx.sa_U_.push_back(sa[q]);
            // a singleton run's intra-run LCP is the suffix matched with itself
            W.push_back(n1 - sa[q]);
        } else {
            ++idx.R_.back();
            W.back() = std::min(W.back(), lcp[q]);
        }
        idx.sa_D_.resize(idx.A_.size());
        idx.sa_D_.back() = sa[q];
    }
    idx.t_ = static_cast<u32>(idx.A_.size());

    idx.L_.assign(2 * idx.t_ + 1, 0);
    u64 rank = 0;
    for (u32 r = 0; r < idx.t_; ++r) {
        idx.L_[2 * r + 1] = W[r];
        rank += idx.R_[r];
        if (r + 1 < idx.t_) idx.L_[2 * r + 2] = lcp[rank];  // B[r], consecutive suffixes
    }
    idx.finish();
    return idx;
}

TagRunIndex TagRunIndex::from_arrays(std::vector<u32> tags, std::vector<u64> lens,
                                     std::vector<u64> sa_at_head, std::vector<u64> sa_at_tail,
                                     std::vector<u64> l_array) {
    TagRunIndex idx;
    idx.A_ = std::move(tags);
    idx.R_ = std::move(lens);
    idx.sa_U_ = std::move(sa_at_head);
    idx.sa_D_ = std::move(sa_at_tail);
    idx.L_ = std::move(l_array);
    idx.t_ = static_cast<u32>(idx.A_.size());
    idx.finish();
    return idx;
}

void TagRunIndex::finish() {
    U_.resize(t_);
    u64 pos = 0;
    u32 max_tag = 0;
    for (u32 r = 0; r < t_; ++r) {
        U_[r] = pos;
        pos += R_[r];
        max_tag = std::max(max_tag, A_[r]);
    }
    num_tags_ = t_ ? max_tag + 1 : 0;

    tree_leaves_ = 1;
    while (tree_leaves_ < L_.size()) tree_leaves_ *= 2;
    tree_min_.assign(2 * tree_leaves_, std::numeric_limits<u64>::max());
    for (size_t p = 0; p < L_.size(); ++p) tree_min_[tree_leaves_ + p] = L_[p];
    for (u32 v = tree_leaves_ - 1; v >= 1; --v)
        tree_min_[v] = std::min(tree_min_[2 * v], tree_min_[2 * v + 1]);

    prev_occ_.assign(t_, kNone);
    std::unordered_map<u32, u32> last_seen;
    for (u32 r = 0; r < t_; ++r) {
        auto it = last_seen.find(A_[r]);
        if (it != last_seen.end()) prev_occ_[r] = it->second;
        last_seen[A_[r]] = r;
    }

    // sparse table over prev_occ_, argmin with leftmost tie-break
    argmin_table_.clear();
    if (t_ > 0) {
        argmin_table_.emplace_back(t_);
        for (u32 r = 0; r < t_; ++r) argmin_table_[0][r] = r;
        for (u32 lvl = 1; (1u << lvl) <= t_; ++lvl) {
            u32 span = 1u << lvl;
            argmin_table_.emplace_back(t_ - span + 1);
            for (u32 r = 0; r + span <= t_; ++r) {
                u32 a = argmin_table_[lvl - 1][r];
                u32 b = argmin_table_[lvl - 1][r + span / 2];
                argmin_table_[lvl][r] = prev_occ_[b] < prev_occ_[a] ? b : a;
            }
        }
    }
}

u32 TagRunIndex::run_of_rank(u64 rank) const {
    auto it = std::upper_bound(U_.begin(), U_.end(), rank);
    return static_cast<u32>(it - U_.begin()) - 1;
}

u32 TagRunIndex::argmin(u32 lo, u32 hi) const {
    u32 span = hi - lo + 1;
    u32 lvl = 31 - __builtin_clz(span);
    u32 a = argmin_table_[lvl][lo];
    u32 b = argmin_table_[lvl][hi - (1u << lvl) + 1];
    return prev_occ_[b] < prev_occ_[a] ? b : a;
}

void TagRunIndex::nav_search(u32 node, u32 node_lo, u32 node_hi, i64 qlo, i64 qhi,
                             u64 threshold, bool rightmost, i64& found, u32& steps) const {
    if (found != kNone) return;
    if (qhi < node_lo || node_hi < qlo || node_lo >= L_.size()) return;
    ++steps;
    if (tree_min_[node] >= threshold) return;
    if (node_lo == node_hi) {
        found = node_lo;
        return;
    }
    u32 mid = node_lo + (node_hi - node_lo) / 2;
    if (rightmost) {
        nav_search(2 * node + 1, mid + 1, node_hi, qlo, qhi, threshold, rightmost, found, steps);
        nav_search(2 * node, node_lo, mid, qlo, qhi, threshold, rightmost, found, steps);
    } else {
        nav_search(2 * node, node_lo, mid, qlo, qhi, threshold, rightmost, found, steps);
        nav_search(2 * node + 1, mid + 1, node_hi, qlo, qhi, threshold, rightmost, found, steps);
    }
}

TagRunIndex::NavResult TagRunIndex::pred_below(i64 hi, u64 threshold) const {
    NavResult res;
    if (hi < 0) return res;
    nav_search(1, 0, tree_leaves_ - 1, 0, hi, threshold, true, res.pos, res.steps);
    return res;
}

TagRunIndex::NavResult TagRunIndex::succ_below(i64 lo, u64 threshold) const {
    NavResult res;
    if (lo >= static_cast<i64>(L_.size())) return res;
    nav_search(1, 0, tree_leaves_ - 1, lo, static_cast<i64>(L_.size()) - 1, threshold, false,
               res.pos, res.steps);
    return res;
}

TagRunIndex::LocatedRange TagRunIndex::run_range_for(u32 q, u64 up, u64 down, u64 ell) const {
    LocatedRange out;
    assert(ell >= 1);
    if (up < ell) {
        // the run's first suffix does not carry P[i..j], so the interval
        // starts strictly inside run q
        out.range.first = q;
        out.range.first_partial = true;
    } else {
        NavResult nav = pred_below(2 * static_cast<i64>(q), ell);
        out.nav_steps += nav.steps;
        assert(nav.pos != kNone);
        out.range.first = static_cast<u32>(nav.pos / 2);
        out.range.first_partial = (nav.pos % 2) != 0;
    }
    if (down < ell) {
        out.range.last = q;
        out.range.last_partial = true;
    } else {
        NavResult nav = succ_below(2 * static_cast<i64>(q) + 2, ell);
        out.nav_steps += nav.steps;
        assert(nav.pos != kNone);
        out.range.last = static_cast<u32>((nav.pos + 1) / 2) - 1;
        out.range.last_partial = (nav.pos % 2) != 0;
    }
    return out;
}

TagRunIndex::Listing TagRunIndex::list_distinct(u32 s, u32 e) const {
    Listing out;
    if (t_ == 0 || s > e || e >= t_) return out;
    // Muthukrishnan: report positions whose previous occurrence falls outside
    // [s..e]; recurse around the minimum of prev_occ
    std::vector<std::pair<u32, u32>> stack{{s, e}};
    while (!stack.empty()) {
        auto [lo, hi] = stack.back();
        stack.pop_back();
        if (lo > hi) continue;
        ++out.visits;
        u32 p = argmin(lo, hi);
        if (prev_occ_[p] >= static_cast<i64>(s)) continue;
        out.items.emplace_back(p, A_[p]);
        if (p > lo) stack.emplace_back(lo, p - 1);
        if (p < hi) stack.emplace_back(p + 1, hi);
    }
    return out;
}

} // namespace wmap
