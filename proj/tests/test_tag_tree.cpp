#include <doctest.h>

#include <map>
#include <set>

#include "helpers.hpp"
#include "wmap/index.hpp"
#include "wmap/oracle.hpp"

using namespace wmap;
using namespace wmap::testing;

namespace {

WheelerMap build_index(const TaggedText& tt, u64 f = 1) {
    BuildOptions opts;
    opts.fingerprint_base = 0xbee5;
    opts.f = f;
    return WheelerMap::build(tt, opts);
}

} // namespace

TEST_CASE("single run yields root plus one leaf") {
    TaggedText tt;
    for (char c : std::string("ACGT")) tt.text.push_back(static_cast<u8>(c));
    tt.text.push_back(kTerminator);
    tt.tags.assign(tt.text.size(), 0);
    tt.tag_dict = {"z"};
    WheelerMap index = build_index(tt);
    const TagTree& tree = index.tag_tree();
    CHECK(tree.num_nodes() == 2);
    CHECK(tree.node(tree.leaf_of_run(0)).parent == tree.root());
}

TEST_CASE("node segments, counts and booleans match brute force") {
    std::mt19937_64 rng(71);
    for (int round = 0; round < 10; ++round) {
        TaggedText tt = random_instance(rng, 250, 4 + rng() % 10);
        WheelerMap index = build_index(tt);
        const TagRunIndex& runs = index.runs();
        const TagTree& tree = index.tag_tree();
        const u32 t = runs.num_runs();

        for (u32 id = 0; id < tree.num_nodes(); ++id) {
            const TagTree::Node& nd = tree.node(id);
            REQUIRE(nd.seg_first <= nd.seg_last);
            REQUIRE(nd.seg_last < t);
            std::set<u32> tags;
            for (u32 r = nd.seg_first; r <= nd.seg_last; ++r) tags.insert(runs.tag_of_run(r));
            CHECK(nd.distinct == tags.size());
            if (nd.seg_first > 0)
                CHECK(nd.left_tag_new == !tags.count(runs.tag_of_run(nd.seg_first - 1)));
            if (nd.seg_last + 1 < t)
                CHECK(nd.right_tag_new == !tags.count(runs.tag_of_run(nd.seg_last + 1)));
        }
        // leaves exist for every run and the preorder intervals nest
        for (u32 r = 0; r < t; ++r) {
            u32 leaf = tree.leaf_of_run(r);
            CHECK(tree.node(leaf).seg_first == r);
            CHECK(tree.node(leaf).seg_last == r);
        }
        for (u32 id = 1; id < tree.num_nodes(); ++id) {
            const TagTree::Node& nd = tree.node(id);
            const TagTree::Node& par = tree.node(nd.parent);
            CHECK(par.seg_first <= nd.seg_first);
            CHECK(nd.seg_last <= par.seg_last);
            CHECK(par.pre < nd.pre);
            CHECK(nd.pre_max <= par.pre_max);
            CHECK(nd.depth == par.depth + 1);
        }
    }
}

TEST_CASE("LCA of leaves is the lowest covering segment") {
    std::mt19937_64 rng(72);
    TaggedText tt = random_instance(rng, 300, 6);
    WheelerMap index = build_index(tt);
    const TagTree& tree = index.tag_tree();
    const u32 t = index.runs().num_runs();
    for (int trial = 0; trial < 500; ++trial) {
        u32 a = rng() % t, b = rng() % t;
        u32 x = tree.lca(tree.leaf_of_run(a), tree.leaf_of_run(b));
        const TagTree::Node& nd = tree.node(x);
        CHECK(nd.seg_first <= std::min(a, b));
        CHECK(nd.seg_last >= std::max(a, b));
        // no child of x also covers both
        for (u32 id = x + 1; id < tree.num_nodes(); ++id) {
            const TagTree::Node& cand = tree.node(id);
            if (cand.parent == x && cand.seg_first <= std::min(a, b) &&
                cand.seg_last >= std::max(a, b))
                FAIL("a lower node covers both leaves");
        }
    }
}

TEST_CASE("every covered tag crosses each node exactly once") {
    std::mt19937_64 rng(73);
    for (int round = 0; round < 8; ++round) {
        TaggedText tt = random_instance(rng, 200, 3 + rng() % 10);
        WheelerMap index = build_index(tt);
        const TagRunIndex& runs = index.runs();
        const TagTree& tree = index.tag_tree();

        // per-tag point lists sorted by x
        std::map<u32, std::vector<const TagTree::Point*>> by_tag;
        for (const auto& pt : tree.points()) by_tag[pt.tag].push_back(&pt);

        for (u32 id = 0; id < tree.num_nodes(); ++id) {
            if (id == tree.root()) continue;  // the root has no ancestors to cross
            const TagTree::Node& nd = tree.node(id);
            std::map<u32, u64> weights;  // true per-tag weights in the segment
            for (u32 r = nd.seg_first; r <= nd.seg_last; ++r)
                weights[runs.tag_of_run(r)] += runs.run_len(r);
            u32 region_points = 0;
            for (const auto& [tag, pts] : by_tag) {
                u32 crossing = 0;
                u64 crossing_weight = 0;
                for (const TagTree::Point* pt : pts) {
                    if (pt->x >= nd.pre && pt->x <= nd.pre_max && pt->y < nd.depth) {
                        ++crossing;
                        crossing_weight = pt->weight;
                    }
                }
                region_points += crossing;
                if (weights.count(tag)) {
                    CHECK(crossing == 1);
                    CHECK(crossing_weight == weights[tag]);
                } else {
                    CHECK(crossing == 0);
                }
            }
            CHECK(region_points == nd.distinct);
        }
    }
}

TEST_CASE("weight ranks preserve the original order") {
    std::mt19937_64 rng(74);
    TaggedText tt = random_instance(rng, 300, 6);
    WheelerMap index = build_index(tt);
    const auto& pts = index.tag_tree().points();
    for (int trial = 0; trial < 2000; ++trial) {
        const auto& a = pts[rng() % pts.size()];
        const auto& b = pts[rng() % pts.size()];
        CHECK((a.weight_rank < b.weight_rank) == (a.weight < b.weight));
    }
}

TEST_CASE("k heaviest in range equals sort-and-filter") {
    std::mt19937_64 rng(75);
    for (int round = 0; round < 5; ++round) {
        TaggedText tt = random_instance(rng, 300, 5 + rng() % 10);
        WheelerMap index = build_index(tt);
        const TagTree& tree = index.tag_tree();
        const auto& pts = tree.points();
        u32 max_x = 0, max_y = 0;
        for (const auto& pt : pts) {
            max_x = std::max(max_x, pt.x);
            max_y = std::max(max_y, pt.y);
        }
        for (int trial = 0; trial < 2000; ++trial) {
            u32 xlo = rng() % (max_x + 1);
            u32 xhi = xlo + rng() % (max_x + 1 - xlo);
            u32 ymax = rng() % (max_y + 2);
            u32 k = 1 + rng() % 6;
            auto got = tree.heaviest_in_range(xlo, xhi, ymax, k);
            std::vector<const TagTree::Point*> want;
            for (const auto& pt : pts)
                if (pt.x >= xlo && pt.x <= xhi && pt.y <= ymax) want.push_back(&pt);
            std::sort(want.begin(), want.end(), [](const auto* a, const auto* b) {
                if (a->weight != b->weight) return a->weight > b->weight;
                if (a->tag != b->tag) return a->tag < b->tag;
                return a->x < b->x;
            });
            REQUIRE(got.size() == std::min<size_t>(k, want.size()));
            for (size_t x = 0; x < got.size(); ++x) {
                CHECK(got[x].weight == want[x]->weight);
                CHECK(got[x].tag == want[x]->tag);
                CHECK(got[x].x == want[x]->x);
            }
        }
    }
}

TEST_CASE("top-k candidates contain every true top-k") {
    std::mt19937_64 rng(76);
    for (int round = 0; round < 12; ++round) {
        TaggedText tt = random_instance(rng, 150 + rng() % 350, 3 + rng() % 12);
        OracleIndex oracle(tt);
        WheelerMap index = build_index(tt);
        for (int p = 0; p < 8; ++p) {
            std::string pat = random_pattern(rng, tt, 12);
            PatternSession session(index, pat);
            for (size_t i = 0; i < pat.size(); ++i)
                for (size_t j = i; j < pat.size(); ++j) {
                    if (!session.occurs(i, j)) continue;
                    u32 k = 1 + rng() % 5;
                    auto items = *session.topk_tags(i, j, k);
                    CHECK(items.size() <= k + 2);
                    auto freqs = *oracle.frequencies(pat, i, j);
                    std::set<u32> returned;
                    std::map<u32, u64> true_count;
                    for (const auto& [tag, cnt] : freqs) true_count[tag] = cnt;
                    for (const auto& it : items) {
                        CHECK(returned.insert(it.tag).second);
                        // reported weights never exceed the truth, and exact
                        // ones equal it
                        CHECK(it.weight <= true_count[it.tag]);
                        if (it.exact) CHECK(it.weight == true_count[it.tag]);
                    }
                    // the deterministic top-k by (count desc, tag asc)
                    for (size_t x = 0; x < std::min<size_t>(k, freqs.size()); ++x)
                        CHECK(returned.count(freqs[x].first));
                }
        }
    }
}

TEST_CASE("distinct counts equal the listing size on every query") {
    std::mt19937_64 rng(77);
    for (int round = 0; round < 12; ++round) {
        TaggedText tt = random_instance(rng, 150 + rng() % 300, 3 + rng() % 10);
        OracleIndex oracle(tt);
        WheelerMap index = build_index(tt);
        for (int p = 0; p < 8; ++p) {
            std::string pat = random_pattern(rng, tt, 12);
            PatternSession session(index, pat);
            for (size_t i = 0; i < pat.size(); ++i)
                for (size_t j = i; j < pat.size(); ++j) {
                    auto got = session.count_distinct_tags(i, j);
                    auto want = oracle.count(pat, i, j);
                    REQUIRE(got.has_value() == want.has_value());
                    if (!got) continue;
                    CHECK(got->count == *want);
                    CHECK(got->combine_ops <= 16);
                }
        }
    }
}

TEST_CASE("figure instance: counts and candidate weights for the A query") {
    TaggedText tt = fig1_instance();
    WheelerMap index = build_index(tt);
    PatternSession session(index, "A");

    auto count = session.count_distinct_tags(0, 0);
    REQUIRE(count.has_value());
    CHECK(count->count == 6);

    // fully-contained runs carry tags 9,4,5,0,7,2 with weights 1,2,3,1,5,5
    auto items = *session.topk_tags(0, 0, 6);
    std::map<u32, u64> weights;
    for (const auto& it : items) {
        CHECK(it.exact);
        weights[it.tag] = it.weight;
    }
    CHECK(weights == std::map<u32, u64>{{9, 1}, {4, 2}, {5, 3}, {0, 1}, {7, 5}, {2, 5}});

    auto top2 = *session.topk_tags(0, 0, 2);
    REQUIRE(top2.size() >= 2);
    CHECK(top2[0].tag == 2);  // weight 5, smaller tag first
    CHECK(top2[1].tag == 7);
}
