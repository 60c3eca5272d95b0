#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wmap/common.hpp"
#include "wmap/suffix_core.hpp"
#include "wmap/tag_runs.hpp"
#include "wmap/tagged_text.hpp"

namespace wmap {

/*
 * Ground truth by definition-level computation over the plain suffix array:
 * no compression, no shared code with the index query paths. Intervals come
 * from binary searches with direct suffix comparison, tag answers from
 * scanning the interval. Intended for texts up to a few tens of thousands of
 * positions; query results are memoized per interval.
 */
class OracleIndex {
public:
    explicit OracleIndex(const TaggedText& tt);

    const std::vector<u32>& sa() const { return sa_; }
    const std::vector<u32>& tag_array() const { return tag_array_; }
    const TaggedText& tagged_text() const { return tt_; }

    std::optional<Interval> sa_interval(const u8* pat, size_t len) const;
    std::optional<Interval> sa_interval(const std::string& pat, size_t i, size_t j) const;

    std::optional<std::vector<u32>> distinct(const std::string& pat, size_t i, size_t j) const;
    std::optional<u32> count(const std::string& pat, size_t i, size_t j) const;
    // full frequency table, sorted by (count desc, tag asc)
    std::optional<std::vector<std::pair<u32, u64>>> frequencies(const std::string& pat,
                                                                size_t i, size_t j) const;
    std::optional<std::vector<u32>> f_frequent(const std::string& pat, size_t i, size_t j,
                                               u64 f) const;

    // per-position longest match lengths against the text, O(mn)
    std::vector<u64> matching_statistics(const std::string& pat) const;
    std::vector<std::pair<size_t, u64>> mems(const std::string& pat) const;
    std::vector<u64> f_matching_statistics(const std::string& pat, u64 f) const;

    u64 lcp_suffix(const std::string& pat, size_t i, size_t j, u64 q) const;

    RunRange run_range(const Interval& iv) const;

private:
    const std::vector<std::pair<u32, u64>>& freq_table(const Interval& iv) const;

    TaggedText tt_;
    std::vector<u32> sa_;
    std::vector<u32> tag_array_;
    std::vector<u32> run_of_rank_;
    std::vector<u32> run_first_, run_last_;
    mutable std::map<std::pair<u32, u32>, std::vector<std::pair<u32, u64>>> freq_cache_;
};

} // namespace wmap
