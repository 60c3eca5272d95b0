#include "wmap/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>
#include <numeric>

namespace wmap {

OracleIndex::OracleIndex(const TaggedText& tt) : tt_(tt) {
    const size_t n1 = tt_.text.size();
    if (n1 > 20000) throw data_error("oracle capped at 20000 positions");
    sa_.resize(n1);
    std::iota(sa_.begin(), sa_.end(), 0u);
    const std::vector<u8>& text = tt_.text;
    std::sort(sa_.begin(), sa_.end(), [&](u32 a, u32 b) {
        return std::lexicographical_compare(text.begin() + a, text.end(), text.begin() + b,
                                            text.end());
    });
    tag_array_.resize(n1);
    for (size_t q = 0; q < n1; ++q) tag_array_[q] = tt_.tags[sa_[q]];

    run_of_rank_.resize(n1);
    for (size_t q = 0; q < n1; ++q) {
        if (q > 0 && tag_array_[q] == tag_array_[q - 1]) {
            run_of_rank_[q] = run_of_rank_[q - 1];
        } else {
            run_of_rank_[q] = run_first_.empty() ? 0 : run_of_rank_[q - 1] + 1;
            run_first_.push_back(static_cast<u32>(q));
            run_last_.push_back(static_cast<u32>(q));
        }
        run_last_[run_of_rank_[q]] = static_cast<u32>(q);
    }
}

std::optional<Interval> OracleIndex::sa_interval(const u8* pat, size_t len) const {
    if (len == 0) return std::nullopt;
    const std::vector<u8>& text = tt_.text;
    auto starts_less = [&](u32 suffix, const u8* p, size_t plen) {
        // suffix < p as a prefix comparison
        size_t avail = text.size() - suffix;
        int c = std::memcmp(text.data() + suffix, p, std::min(avail, plen));
        if (c != 0) return c < 0;
        return avail < plen;
    };
    u32 lo = 0, hi = static_cast<u32>(sa_.size());
    {
        u32 a = lo, b = hi;
        while (a < b) {
            u32 mid = a + (b - a) / 2;
            if (starts_less(sa_[mid], pat, len))
                a = mid + 1;
            else
                b = mid;
        }
        lo = a;
    }
    // past-the-end: first suffix that neither precedes the pattern nor
    // carries it as a prefix
    u32 a = lo, b = hi;
    while (a < b) {
        u32 mid = a + (b - a) / 2;
        size_t avail = text.size() - sa_[mid];
        int c = std::memcmp(text.data() + sa_[mid], pat, std::min(avail, len));
        bool has_prefix = c == 0 && avail >= len;
        if (has_prefix || c < 0 || (c == 0 && avail < len))
            a = mid + 1;
        else
            b = mid;
    }
    if (lo >= a) return std::nullopt;
    // verify the boundary actually matches
    size_t avail = text.size() - sa_[lo];
    if (avail < len || std::memcmp(text.data() + sa_[lo], pat, len) != 0) return std::nullopt;
    return Interval{lo, a - 1};
}

std::optional<Interval> OracleIndex::sa_interval(const std::string& pat, size_t i,
                                                 size_t j) const {
    return sa_interval(reinterpret_cast<const u8*>(pat.data()) + i, j - i + 1);
}

const std::vector<std::pair<u32, u64>>& OracleIndex::freq_table(const Interval& iv) const {
    auto key = std::make_pair(iv.lo, iv.hi);
    auto it = freq_cache_.find(key);
    if (it != freq_cache_.end()) return it->second;
    std::map<u32, u64> counts;
    for (u32 q = iv.lo; q <= iv.hi; ++q) ++counts[tag_array_[q]];
    std::vector<std::pair<u32, u64>> table(counts.begin(), counts.end());
    std::sort(table.begin(), table.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    return freq_cache_.emplace(key, std::move(table)).first->second;
}

std::optional<std::vector<u32>> OracleIndex::distinct(const std::string& pat, size_t i,
                                                      size_t j) const {
    auto iv = sa_interval(pat, i, j);
    if (!iv) return std::nullopt;
    std::vector<u32> tags;
    for (const auto& [tag, cnt] : freq_table(*iv)) tags.push_back(tag);
    std::sort(tags.begin(), tags.end());
    return tags;
}

std::optional<u32> OracleIndex::count(const std::string& pat, size_t i, size_t j) const {
    auto iv = sa_interval(pat, i, j);
    if (!iv) return std::nullopt;
    return static_cast<u32>(freq_table(*iv).size());
}

std::optional<std::vector<std::pair<u32, u64>>> OracleIndex::frequencies(const std::string& pat,
                                                                         size_t i,
                                                                         size_t j) const {
    auto iv = sa_interval(pat, i, j);
    if (!iv) return std::nullopt;
    return freq_table(*iv);
}

std::optional<std::vector<u32>> OracleIndex::f_frequent(const std::string& pat, size_t i,
                                                        size_t j, u64 f) const {
    auto iv = sa_interval(pat, i, j);
    if (!iv) return std::nullopt;
    std::vector<u32> tags;
    for (const auto& [tag, cnt] : freq_table(*iv))
        if (cnt >= f) tags.push_back(tag);
    std::sort(tags.begin(), tags.end());
    return tags;
}

std::vector<u64> OracleIndex::matching_statistics(const std::string& pat) const {
    const size_t m = pat.size();
    const std::vector<u8>& text = tt_.text;
    std::vector<u64> ms(m + 1, 0);
    for (size_t i = 0; i < m; ++i) {
        u64 best = 0;
        for (size_t p = 0; p < text.size(); ++p) {
            u64 l = 0;
            while (i + l < m && p + l < text.size() &&
                   static_cast<u8>(pat[i + l]) == text[p + l])
                ++l;
            best = std::max(best, l);
        }
        ms[i] = best;
    }
    return ms;
}

std::vector<std::pair<size_t, u64>> OracleIndex::mems(const std::string& pat) const {
    std::vector<u64> ms = matching_statistics(pat);
    std::vector<std::pair<size_t, u64>> out;
    for (size_t i = 0; i < pat.size(); ++i) {
        if (ms[i] == 0) continue;
        if (i == 0 || ms[i - 1] < ms[i] + 1) out.emplace_back(i, ms[i]);
    }
    return out;
}

std::vector<u64> OracleIndex::f_matching_statistics(const std::string& pat, u64 f) const {
    const size_t m = pat.size();
    std::vector<u64> fms(m + 1, 0);
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = i; j < m; ++j) {
            auto iv = sa_interval(pat, i, j);
            if (!iv || iv->width() < f) break;
            fms[i] = j - i + 1;
        }
    }
    return fms;
}

u64 OracleIndex::lcp_suffix(const std::string& pat, size_t i, size_t j, u64 q) const {
    const std::vector<u8>& text = tt_.text;
    u64 l = 0;
    while (i + l <= j && q + l < text.size() &&
           static_cast<u8>(pat[i + l]) == text[q + l])
        ++l;
    return l;
}

RunRange OracleIndex::run_range(const Interval& iv) const {
    RunRange rr;
    rr.first = run_of_rank_[iv.lo];
    rr.last = run_of_rank_[iv.hi];
    rr.first_partial = run_first_[rr.first] < iv.lo;
    rr.last_partial = run_last_[rr.last] > iv.hi;
    return rr;
}

} // namespace wmap
