#include "wmap/index.hpp"

#include <algorithm>
#include <cassert>
#include <random>

namespace wmap {

WheelerMap WheelerMap::build(const TaggedText& tt, const BuildOptions& opts) {
    if (tt.text.empty() || tt.text.back() != kTerminator)
        throw data_error("text must end with the terminator");
    if (tt.tags.size() != tt.text.size()) throw data_error("tag/text length mismatch");

    u64 base = opts.fingerprint_base;
    if (base == 0) {
        std::random_device rd;
        std::mt19937_64 gen((static_cast<u64>(rd()) << 32) ^ rd());
        std::uniform_int_distribution<u64> dist(256, Fingerprinter::kPrime - 2);
        base = dist(gen);
    }

    WheelerMap wm;
    std::vector<u32> sa = build_suffix_array(tt.text);
    std::vector<u32> tag_array = build_tag_array(tt, sa);
    wm.bwt_ = RLBWT::build(tt.text, sa);
    wm.slp_ = Slp::build(tt.text, base);
    wm.runs_ = TagRunIndex::build(tag_array, sa, tt.text);
    wm.hierarchy_ = IntervalHierarchy::build(wm.runs_);
    wm.tag_tree_ = TagTree::build(wm.runs_, wm.hierarchy_);
    wm.triple_ = TripleIndex::build(opts.f, tt.text, sa, tag_array, wm.runs_);
    wm.tag_dict_ = tt.tag_dict;
    return wm;
}

PatternSession::PatternSession(const WheelerMap& index, std::string pattern)
    : index_(index), pattern_(std::move(pattern)) {
    for (char c : pattern_)
        if (is_reserved_byte(static_cast<u8>(c)))
            throw data_error("pattern contains a reserved byte");
    PatternHashes ph(index_.slp().fingerprinter(),
                     reinterpret_cast<const u8*>(pattern_.data()), pattern_.size());
    ts_ = compute_tag_statistics(index_.bwt(), index_.slp(), index_.runs(), ph,
                                 reinterpret_cast<const u8*>(pattern_.data()), pattern_.size());
}

void PatternSession::check_range(size_t i, size_t j) const {
    if (i > j || j >= pattern_.size()) throw data_error("substring range out of bounds");
}

bool PatternSession::occurs(size_t i, size_t j) const {
    check_range(i, j);
    return ts_[i].len >= j - i + 1;
}

std::vector<Mem> PatternSession::mems() const {
    std::vector<XmsEntry> xms(ts_.size());
    for (size_t i = 0; i < ts_.size(); ++i) xms[i] = {ts_[i].len, ts_[i].pos, ts_[i].rank};
    return find_mems(xms);
}

std::optional<RunRange> PatternSession::runs_overlapping(size_t i, size_t j) const {
    if (!occurs(i, j)) return std::nullopt;
    const TsEntry& e = ts_[i];
    return index_.runs().run_range_for(e.run, e.up, e.down, j - i + 1).range;
}

std::optional<ListingAnswer> PatternSession::distinct_tags(size_t i, size_t j) const {
    if (!occurs(i, j)) return std::nullopt;
    const TsEntry& e = ts_[i];
    auto located = index_.runs().run_range_for(e.run, e.up, e.down, j - i + 1);
    auto listing = index_.runs().list_distinct(located.range.first, located.range.last);
    std::sort(listing.items.begin(), listing.items.end());
    ListingAnswer ans;
    ans.ops = located.nav_steps + listing.visits + static_cast<u32>(listing.items.size());
    for (auto& [pos, tag] : listing.items) ans.tags.push_back(tag);
    return ans;
}

std::optional<ListingAnswer> PatternSession::optimal_distinct_tags(size_t i, size_t j) const {
    if (!occurs(i, j)) return std::nullopt;
    const TsEntry& e = ts_[i];
    auto res = index_.hierarchy().optimal_distinct(index_.runs(), e.run, e.up, e.down, j - i + 1);
    std::sort(res.items.begin(), res.items.end());
    ListingAnswer ans;
    ans.ops = res.ops;
    for (auto& [pos, tag] : res.items) ans.tags.push_back(tag);
    return ans;
}

std::optional<CountAnswer> PatternSession::count_distinct_tags(size_t i, size_t j) const {
    if (!occurs(i, j)) return std::nullopt;
    const TsEntry& e = ts_[i];
    auto located = index_.runs().run_range_for(e.run, e.up, e.down, j - i + 1);
    auto res = index_.tag_tree().count_distinct(index_.runs(), located.range);
    return CountAnswer{res.count, located.nav_steps, res.ops};
}

std::optional<std::vector<TopkItem>> PatternSession::topk_tags(size_t i, size_t j, u32 k) const {
    if (k < 1) throw data_error("k must be at least 1");
    if (!occurs(i, j)) return std::nullopt;
    const TsEntry& e = ts_[i];
    auto located = index_.runs().run_range_for(e.run, e.up, e.down, j - i + 1);
    return index_.tag_tree().topk_tags(index_.runs(), located.range, k);
}

const std::vector<u64>& PatternSession::f_matching_statistics() {
    if (!fms_) {
        fms_ = compute_fms(index_.bwt(), reinterpret_cast<const u8*>(pattern_.data()),
                           pattern_.size(), index_.frequency_threshold());
    }
    return *fms_;
}

std::optional<std::vector<u32>> PatternSession::f_frequent_tags(size_t i, size_t j) {
    if (!occurs(i, j)) return std::nullopt;
    const TsEntry& e = ts_[i];
    const u64 ell = j - i + 1;
    auto located = index_.runs().run_range_for(e.run, e.up, e.down, ell);
    const RunRange& range = located.range;

    if (range.first == range.last) {
        // all occurrences fall in one run: one candidate tag, qualifying iff
        // a long-enough prefix of P[i..] still occurs at least f times
        const std::vector<u64>& fms = f_matching_statistics();
        std::vector<u32> out;
        if (fms[i] >= ell) out.push_back(index_.runs().tag_of_run(range.first));
        return out;
    }
    auto [u, v] = TripleIndex::triple_interval(range);
    assert(u <= v);
    std::vector<u32> out =
        index_.triple().report(static_cast<u32>(u), static_cast<u32>(v), ell);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace wmap
