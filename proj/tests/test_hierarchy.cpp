#include <doctest.h>

#include <map>
#include <set>

#include "helpers.hpp"
#include "wmap/index.hpp"
#include "wmap/oracle.hpp"

using namespace wmap;
using namespace wmap::testing;

namespace {

TagRunIndex build_runs(const TaggedText& tt) {
    std::vector<u32> sa = build_suffix_array(tt.text);
    std::vector<u32> tag_array = build_tag_array(tt, sa);
    return TagRunIndex::build(tag_array, sa, tt.text);
}

// every maximal interval of L holding no value below any threshold >= 1
std::set<std::pair<u32, u32>> brute_threshold_intervals(const std::vector<u64>& L) {
    std::set<std::pair<u32, u32>> out;
    std::set<u64> thresholds(L.begin(), L.end());
    for (u64 ell : thresholds) {
        if (ell == 0) continue;
        size_t p = 1;
        while (p + 1 < L.size()) {
            if (L[p] < ell) {
                ++p;
                continue;
            }
            size_t start = p;
            while (p + 1 < L.size() && L[p] >= ell) ++p;
            out.emplace(static_cast<u32>(start), static_cast<u32>(p - 1));
        }
    }
    return out;
}

} // namespace

TEST_CASE("hierarchy nodes are exactly the maximal threshold intervals") {
    std::mt19937_64 rng(61);
    for (int round = 0; round < 10; ++round) {
        TaggedText tt = random_instance(rng, 250, 5);
        TagRunIndex runs = build_runs(tt);
        IntervalHierarchy h = IntervalHierarchy::build(runs);
        std::set<std::pair<u32, u32>> got;
        for (const auto& nd : h.nodes()) got.emplace(nd.lo, nd.hi);
        CHECK(got == brute_threshold_intervals(runs.l_array()));
        // the recorded min is the interval's true minimum
        for (const auto& nd : h.nodes()) {
            u64 min_val = std::numeric_limits<u64>::max();
            for (u32 p = nd.lo; p <= nd.hi; ++p)
                min_val = std::min(min_val, runs.l_array()[p]);
            CHECK(nd.min_val == min_val);
        }
    }
}

TEST_CASE("monotone L values produce a path") {
    // strictly decreasing L: every threshold interval is a prefix extension
    // of the previous one, so the hierarchy is a single chain
    TagRunIndex runs = TagRunIndex::from_arrays(
        {0, 1, 2}, {1, 1, 1}, {0, 0, 0}, {0, 0, 0}, {0, 5, 4, 3, 2, 1, 0});
    IntervalHierarchy h = IntervalHierarchy::build(runs);
    REQUIRE(h.num_nodes() == 5);
    for (u32 id = 0; id < h.num_nodes(); ++id) {
        CHECK(h.node(id).lo == 1);
        CHECK(h.node(id).hi == 5 - id);
        CHECK(h.node(id).parent == (id == 0 ? kNoTag : id - 1));
    }
}

TEST_CASE("nodes never overlap partially") {
    std::mt19937_64 rng(62);
    TaggedText tt = random_instance(rng, 400, 8);
    TagRunIndex runs = build_runs(tt);
    IntervalHierarchy h = IntervalHierarchy::build(runs);
    // sorted (lo asc, hi desc): a stack sweep proves laminarity over every pair
    std::vector<std::pair<u32, u32>> st;
    for (const auto& nd : h.nodes()) {
        while (!st.empty() && st.back().second < nd.lo) st.pop_back();
        if (!st.empty()) {
            CHECK(st.back().first <= nd.lo);
            CHECK(nd.hi <= st.back().second);  // nested, not overlapping
        }
        st.emplace_back(nd.lo, nd.hi);
    }
}

TEST_CASE("per-node distinct counts and forest membership match brute force") {
    std::mt19937_64 rng(63);
    for (int round = 0; round < 8; ++round) {
        TaggedText tt = random_instance(rng, 200, 4 + rng() % 8);
        TagRunIndex runs = build_runs(tt);
        IntervalHierarchy h = IntervalHierarchy::build(runs);
        for (const auto& nd : h.nodes()) {
            std::set<u32> tags;
            for (u32 r = nd.run_first; r <= nd.run_last; ++r)
                tags.insert(runs.tag_of_run(r));
            CHECK(nd.distinct == tags.size());
        }
        // per-position lowest containing node with count k
        const auto& L = runs.l_array();
        for (u32 k = 1; k <= h.num_forests(); ++k) {
            for (u32 pos = 1; pos + 1 < L.size(); ++pos) {
                u32 got = h.lowest_in_forest(k, pos);
                u32 want = kNoTag;
                u32 best_size = kNoTag;
                for (u32 id = 0; id < h.num_nodes(); ++id) {
                    const auto& nd = h.node(id);
                    if (nd.distinct != k || nd.lo > pos || pos > nd.hi) continue;
                    if (nd.hi - nd.lo < best_size) {
                        best_size = nd.hi - nd.lo;
                        want = id;
                    }
                }
                CHECK(got == want);
            }
        }
    }
}

TEST_CASE("optimal listing agrees with the navigation path everywhere") {
    std::mt19937_64 rng(64);
    for (int round = 0; round < 15; ++round) {
        TaggedText tt = random_instance(rng, 150 + rng() % 400, 3 + rng() % 12);
        OracleIndex oracle(tt);
        BuildOptions opts;
        opts.fingerprint_base = 0xabc1;
        WheelerMap index = WheelerMap::build(tt, opts);
        for (int p = 0; p < 6; ++p) {
            std::string pat = random_pattern(rng, tt, 14);
            PatternSession session(index, pat);
            for (size_t i = 0; i < pat.size(); ++i) {
                for (size_t j = i; j < pat.size(); ++j) {
                    auto direct = session.distinct_tags(i, j);
                    auto optimal = session.optimal_distinct_tags(i, j);
                    REQUIRE(direct.has_value() == optimal.has_value());
                    if (!direct) continue;
                    std::set<u32> a(direct->tags.begin(), direct->tags.end());
                    std::set<u32> b(optimal->tags.begin(), optimal->tags.end());
                    CHECK(a == b);
                    auto want = oracle.distinct(pat, i, j);
                    CHECK(a == std::set<u32>(want->begin(), want->end()));
                }
            }
        }
    }
}

TEST_CASE("single-run answers need no forest probe") {
    std::mt19937_64 rng(65);
    TaggedText tt = random_instance(rng, 300, 3);
    BuildOptions opts;
    opts.fingerprint_base = 0xabc2;
    WheelerMap index = WheelerMap::build(tt, opts);
    bool saw_single = false;
    for (int p = 0; p < 40 && !saw_single; ++p) {
        std::string pat = random_pattern(rng, tt, 12);
        PatternSession session(index, pat);
        for (size_t i = 0; i < pat.size(); ++i) {
            size_t j = pat.size() - 1;
            if (!session.occurs(i, j)) continue;
            const TsEntry& e = session.ts(i);
            u64 ell = j - i + 1;
            if (e.up >= ell || e.down >= ell) continue;
            auto res = session.optimal_distinct_tags(i, j);
            REQUIRE(res.has_value());
            CHECK(res->tags.size() == 1);
            CHECK(res->ops <= 2);
            saw_single = true;
        }
    }
    CHECK(saw_single);
}

TEST_CASE("probe and emission work stays linear in the answer") {
    std::mt19937_64 rng(66);
    u64 worst_num = 0, worst_den = 1;
    for (int round = 0; round < 10; ++round) {
        TaggedText tt = random_instance(rng, 200 + rng() % 300, 3 + rng() % 10);
        BuildOptions opts;
        opts.fingerprint_base = 0xabc3;
        WheelerMap index = WheelerMap::build(tt, opts);
        for (int p = 0; p < 10; ++p) {
            std::string pat = random_pattern(rng, tt, 12);
            PatternSession session(index, pat);
            for (size_t i = 0; i < pat.size(); ++i)
                for (size_t j = i; j < pat.size(); ++j) {
                    auto res = session.optimal_distinct_tags(i, j);
                    if (!res) continue;
                    u64 k = res->tags.size();
                    CHECK(res->ops <= 64 * k);
                    if (res->ops * worst_den > worst_num * k) {
                        worst_num = res->ops;
                        worst_den = k;
                    }
                }
        }
    }
    MESSAGE("worst ops/answer ratio: ", worst_num, "/", worst_den);
}

TEST_CASE("figure instance: the A query lists six tags") {
    TaggedText tt = fig1_instance();
    BuildOptions opts;
    opts.fingerprint_base = 0xabc4;
    WheelerMap index = WheelerMap::build(tt, opts);
    PatternSession session(index, "A");
    auto res = session.optimal_distinct_tags(0, 0);
    REQUIRE(res.has_value());
    CHECK(std::set<u32>(res->tags.begin(), res->tags.end()) ==
          std::set<u32>{9, 4, 5, 0, 7, 2});
}
