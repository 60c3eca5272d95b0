#include <doctest.h>

#include <algorithm>
#include <set>

#include "helpers.hpp"
#include "wmap/oracle.hpp"
#include "wmap/suffix_core.hpp"

using namespace wmap;
using namespace wmap::testing;

namespace {

std::vector<u8> bwt_of(const TaggedText& tt, const std::vector<u32>& sa) {
    std::vector<u8> bwt(sa.size());
    for (size_t q = 0; q < sa.size(); ++q)
        bwt[q] = sa[q] == 0 ? tt.text.back() : tt.text[sa[q] - 1];
    return bwt;
}

} // namespace

TEST_CASE("figure instance: BWT runs and samples") {
    TaggedText tt = fig1_instance();
    std::vector<u32> sa = build_suffix_array(tt.text);
    RLBWT b = RLBWT::build(tt.text, sa);
    CHECK(b.size() == 45);

    // rank 0 is the terminator suffix; the four separator suffixes follow,
    // each preceded by a T
    CHECK(b.char_at(0) == 'A');
    for (u64 q = 1; q <= 4; ++q) CHECK(b.char_at(q) == 'T');

    // every run boundary carries the right SA samples
    for (u32 r = 0; r < b.num_runs(); ++r) {
        CHECK(b.sa_at_run_head(r) == sa[b.run_start(r)]);
        CHECK(b.sa_at_run_tail(r) == sa[b.run_end(r)]);
    }

    // the terminator occurs exactly once in the BWT
    int terms = 0;
    for (u64 q = 0; q < b.size(); ++q) terms += b.char_at(q) == kTerminator;
    CHECK(terms == 1);
}

TEST_CASE("LF is a permutation stepping suffixes backward") {
    std::mt19937_64 rng(21);
    TaggedText tt = random_instance(rng, 300);
    std::vector<u32> sa = build_suffix_array(tt.text);
    RLBWT b = RLBWT::build(tt.text, sa);
    const u64 n1 = b.size();

    for (u64 q = 0; q < n1; ++q) {
        u64 to = b.lf(q);
        CHECK(sa[to] == (sa[q] + n1 - 1) % n1);
    }
    // iterating LF n+1 times returns to the start
    u64 q = n1 / 2;
    u64 cur = q;
    std::set<u64> visited;
    for (u64 step = 0; step < n1; ++step) {
        CHECK(visited.insert(cur).second);
        cur = b.lf(cur);
    }
    CHECK(cur == q);
}

TEST_CASE("decoding the BWT by LF iteration reproduces the text") {
    std::mt19937_64 rng(22);
    TaggedText tt = random_instance(rng, 500);
    std::vector<u32> sa = build_suffix_array(tt.text);
    RLBWT b = RLBWT::build(tt.text, sa);

    // walk backward from the rank of the terminator suffix; BWT chars spell
    // the text right to left starting at the character before the terminator
    const u64 n1 = b.size();
    std::vector<u8> decoded(n1);
    u64 rank = 0;
    for (u64 step = 0; step < n1; ++step) {
        decoded[(2 * n1 - 2 - step) % n1] = b.char_at(rank);
        rank = b.lf(rank);
    }
    CHECK(decoded == tt.text);
}

TEST_CASE("backward search equals the oracle interval") {
    std::mt19937_64 rng(23);
    for (int round = 0; round < 10; ++round) {
        TaggedText tt = random_instance(rng, 400);
        OracleIndex oracle(tt);
        std::vector<u32> sa = build_suffix_array(tt.text);
        RLBWT b = RLBWT::build(tt.text, sa);
        for (int p = 0; p < 50; ++p) {
            std::string pat = random_pattern(rng, tt, 8);
            auto got = b.backward_search(reinterpret_cast<const u8*>(pat.data()), pat.size());
            auto want = oracle.sa_interval(reinterpret_cast<const u8*>(pat.data()), pat.size());
            CHECK(got == want);
        }
    }
}

TEST_CASE("absent character yields no interval") {
    TaggedText tt = fig1_instance();
    std::vector<u32> sa = build_suffix_array(tt.text);
    RLBWT b = RLBWT::build(tt.text, sa);
    const u8 pat[] = {'N'};
    CHECK(!b.backward_search(pat, 1).has_value());
}

TEST_CASE("run-boundary neighbors match a linear scan") {
    std::mt19937_64 rng(24);
    TaggedText tt = random_instance(rng, 300);
    std::vector<u32> sa = build_suffix_array(tt.text);
    RLBWT b = RLBWT::build(tt.text, sa);
    std::vector<u8> bwt = bwt_of(tt, sa);

    for (int trial = 0; trial < 2000; ++trial) {
        u64 q = rng() % b.size();
        u8 c = "ACGT"[rng() % 4];
        if (bwt[q] == c) continue;
        auto nb = b.run_boundary_pred_succ(q, c);
        i64 want_pred = kNone, want_succ = kNone;
        for (i64 p = static_cast<i64>(q) - 1; p >= 0; --p)
            if (bwt[p] == c) {
                want_pred = p;
                break;
            }
        for (u64 p = q + 1; p < bwt.size(); ++p)
            if (bwt[p] == c) {
                want_succ = static_cast<i64>(p);
                break;
            }
        CHECK(nb.pred == want_pred);
        CHECK(nb.succ == want_succ);
        // predecessor ends a run, successor starts one
        if (nb.pred != kNone)
            CHECK((nb.pred + 1 == static_cast<i64>(bwt.size()) || bwt[nb.pred + 1] != c));
        if (nb.succ != kNone) CHECK((nb.succ == 0 || bwt[nb.succ - 1] != c));
    }
}

TEST_CASE("figure instance: neighbors around the separator-preceded row") {
    TaggedText tt = fig1_instance();
    std::vector<u32> sa = build_suffix_array(tt.text);
    RLBWT b = RLBWT::build(tt.text, sa);
    std::vector<u8> bwt = bwt_of(tt, sa);
    // rank 11 is the suffix preceded by a separator inside the A-block
    REQUIRE(bwt[11] == kSeparator);
    auto nb = b.run_boundary_pred_succ(11, 'T');
    CHECK(nb.pred == 10);
    i64 want_succ = kNone;
    for (u64 p = 12; p < bwt.size(); ++p)
        if (bwt[p] == 'T') {
            want_succ = static_cast<i64>(p);
            break;
        }
    CHECK(nb.succ == want_succ);
}

TEST_CASE("two-character text") {
    TaggedText tt = ingest_tagged_text({"A"}, {{"x"}});
    std::vector<u32> sa = build_suffix_array(tt.text);
    RLBWT b = RLBWT::build(tt.text, sa);
    CHECK(b.size() == 2);
    // BWT = A (before terminator suffix), terminator (before full text)
    CHECK(b.char_at(0) == 'A');
    CHECK(b.char_at(1) == kTerminator);
    CHECK(b.num_runs() == 2);
}
