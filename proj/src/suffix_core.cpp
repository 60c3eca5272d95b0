#include "wmap/suffix_core.hpp"

#include <algorithm>
#include <cassert>

namespace wmap {

RLBWT RLBWT::build(const std::vector<u8>& text, const std::vector<u32>& sa) {
    RLBWT b;
    const u64 n1 = text.size();
    b.size_ = n1;
    for (u64 q = 0; q < n1; ++q) {
        u8 c = sa[q] == 0 ? text[n1 - 1] : text[sa[q] - 1];
        if (b.run_chars_.empty() || b.run_chars_.back() != c) {
            b.run_chars_.push_back(c);
            b.run_lens_.push_back(1);
            b.sa_head_.push_back(sa[q]);
        } else {
            ++b.run_lens_.back();
        }
        b.sa_tail_.resize(b.run_chars_.size());
        b.sa_tail_.back() = sa[q];
    }
    b.finish();
    return b;
}

RLBWT RLBWT::from_runs(std::vector<u8> run_chars, std::vector<u64> run_lens,
                       std::vector<u64> sa_head, std::vector<u64> sa_tail) {
    RLBWT b;
    b.run_chars_ = std::move(run_chars);
    b.run_lens_ = std::move(run_lens);
    b.sa_head_ = std::move(sa_head);
    b.sa_tail_ = std::move(sa_tail);
    for (u64 len : b.run_lens_) b.size_ += len;
    b.finish();
    return b;
}

void RLBWT::finish() {
    run_starts_.resize(run_chars_.size());
    std::array<u64, 256> occ{};
    u64 pos = 0;
    for (u32 r = 0; r < run_chars_.size(); ++r) {
        run_starts_[r] = pos;
        u8 c = run_chars_[r];
        char_runs_[c].push_back(r);
        char_run_cum_[c].push_back(occ[c]);
        occ[c] += run_lens_[r];
        pos += run_lens_[r];
    }
    u64 acc = 0;
    for (int c = 0; c < 256; ++c) {
        count_before_[c] = acc;
        acc += occ[c];
    }
}

u32 RLBWT::run_of(u64 q) const {
    auto it = std::upper_bound(run_starts_.begin(), run_starts_.end(), q);
    return static_cast<u32>(it - run_starts_.begin()) - 1;
}

u64 RLBWT::rank(u8 c, u64 q) const {
    const auto& runs = char_runs_[c];
    if (runs.empty()) return 0;
    // last run of c starting before q
    auto it = std::partition_point(runs.begin(), runs.end(),
                                   [&](u32 r) { return run_starts_[r] < q; });
    if (it == runs.begin()) return 0;
    size_t idx = (it - runs.begin()) - 1;
    u32 r = runs[idx];
    u64 within = std::min<u64>(q - run_starts_[r], run_lens_[r]);
    return char_run_cum_[c][idx] + within;
}

u64 RLBWT::lf(u64 q) const {
    u8 c = char_at(q);
    return count_before_[c] + rank(c, q);
}

std::optional<Interval> RLBWT::extend_left(const Interval& iv, u8 c) const {
    u64 lo = count_before_[c] + rank(c, iv.lo);
    u64 hi = count_before_[c] + rank(c, static_cast<u64>(iv.hi) + 1);
    if (lo >= hi) return std::nullopt;
    return Interval{static_cast<u32>(lo), static_cast<u32>(hi - 1)};
}

std::optional<Interval> RLBWT::backward_search(const u8* pat, size_t len) const {
    if (len == 0) return std::nullopt;
    std::optional<Interval> iv = full_interval();
    for (size_t k = len; k-- > 0 && iv;) iv = extend_left(*iv, pat[k]);
    return iv;
}

RLBWT::Neighbors RLBWT::run_boundary_pred_succ(u64 q, u8 c) const {
    assert(char_at(q) != c);
    Neighbors out;
    const auto& runs = char_runs_[c];
    // q is not inside a c-run, so any c-run starting before q ends before q.
    auto it = std::partition_point(runs.begin(), runs.end(),
                                   [&](u32 r) { return run_starts_[r] < q; });
    if (it != runs.begin()) {
        u32 r = *(it - 1);
        out.pred = static_cast<i64>(run_end(r));
    }
    if (it != runs.end()) {
        out.succ = static_cast<i64>(run_starts_[*it]);
    }
    return out;
}

} // namespace wmap
