#include "wmap/tag_tree.hpp"

#include <algorithm>
#include <cassert>
#include <queue>

namespace wmap {

TagTree TagTree::build(const TagRunIndex& runs, const IntervalHierarchy& hierarchy) {
    TagTree tt;
    const u32 t = runs.num_runs();
    const std::vector<u32>& A = runs.run_tags();

    // whole-run segments: hierarchy ranges restricted to odd L positions,
    // every run as a leaf, the full range reserved for the special root
    std::vector<std::pair<u32, u32>> segs;
    segs.reserve(hierarchy.num_nodes() + t);
    for (const auto& nd : hierarchy.nodes()) {
        u32 s = nd.lo / 2;
        u32 e = (nd.hi + 1) / 2;
        if (e == 0) continue;  // no odd position inside
        --e;
        if (s > e) continue;
        if (s == 0 && e == t - 1) continue;
        segs.emplace_back(s, e);
    }
    for (u32 r = 0; r < t; ++r) segs.emplace_back(r, r);
    std::sort(segs.begin(), segs.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first < b.first : a.second > b.second;
    });
    segs.erase(std::unique(segs.begin(), segs.end()), segs.end());

    // preorder = root followed by the (lo asc, hi desc) laminar order
    tt.nodes_.resize(segs.size() + 1);
    tt.root_ = 0;
    tt.nodes_[0].seg_first = 0;
    tt.nodes_[0].seg_last = t - 1;
    tt.leaf_of_run_.assign(t, kNoTag);
    {
        std::vector<u32> st{0};
        for (u32 i = 0; i < segs.size(); ++i) {
            u32 id = i + 1;
            Node& nd = tt.nodes_[id];
            nd.seg_first = segs[i].first;
            nd.seg_last = segs[i].second;
            while (tt.nodes_[st.back()].seg_last < nd.seg_last ||
                   tt.nodes_[st.back()].seg_first > nd.seg_first)
                st.pop_back();
            nd.parent = st.back();
            nd.depth = tt.nodes_[st.back()].depth + 1;
            st.push_back(id);
            if (nd.seg_first == nd.seg_last) tt.leaf_of_run_[nd.seg_first] = id;
        }
    }
    for (u32 id = 0; id < tt.nodes_.size(); ++id) {
        tt.nodes_[id].pre = id;
        tt.nodes_[id].pre_max = id;
    }
    for (u32 id = static_cast<u32>(tt.nodes_.size()); id-- > 1;) {
        u32 p = tt.nodes_[id].parent;
        tt.nodes_[p].pre_max = std::max(tt.nodes_[p].pre_max, tt.nodes_[id].pre_max);
    }

    // distinct counts per segment
    {
        std::vector<std::pair<u32, u32>> ranges;
        ranges.reserve(tt.nodes_.size());
        for (const Node& nd : tt.nodes_) ranges.emplace_back(nd.seg_first, nd.seg_last);
        std::vector<u32> counts = offline_distinct_counts(A, ranges);
        for (u32 id = 0; id < tt.nodes_.size(); ++id) tt.nodes_[id].distinct = counts[id];
    }

    // boundary-tag booleans from previous/next occurrence arrays over A
    {
        std::vector<i64> prev(t, kNone), next(t, t);
        {
            std::vector<i64> last(runs.num_tags(), kNone);
            for (u32 r = 0; r < t; ++r) {
                prev[r] = last[A[r]];
                last[A[r]] = r;
            }
            std::vector<i64> nxt(runs.num_tags(), t);
            for (u32 r = t; r-- > 0;) {
                next[r] = nxt[A[r]];
                nxt[A[r]] = r;
            }
        }
        for (Node& nd : tt.nodes_) {
            nd.left_tag_new =
                nd.seg_first > 0 && !(next[nd.seg_first - 1] <= static_cast<i64>(nd.seg_last));
            nd.right_tag_new = nd.seg_last + 1 < t &&
                               !(prev[nd.seg_last + 1] >= static_cast<i64>(nd.seg_first));
        }
    }

    // Euler tour + sparse table for O(1) LCA
    {
        std::vector<std::vector<u32>> children(tt.nodes_.size());
        for (u32 id = 1; id < tt.nodes_.size(); ++id)
            children[tt.nodes_[id].parent].push_back(id);
        tt.first_visit_.assign(tt.nodes_.size(), 0);
        std::vector<std::pair<u32, u32>> stack{{tt.root_, 0}};
        while (!stack.empty()) {
            auto& [id, ci] = stack.back();
            if (ci == 0) {
                tt.first_visit_[id] = static_cast<u32>(tt.euler_.size());
                tt.euler_.push_back(id);
            }
            if (ci < children[id].size()) {
                u32 ch = children[id][ci++];
                stack.emplace_back(ch, 0);
            } else {
                stack.pop_back();
                if (!stack.empty()) tt.euler_.push_back(stack.back().first);
            }
        }
        u32 len = static_cast<u32>(tt.euler_.size());
        tt.euler_min_.emplace_back(len);
        for (u32 p = 0; p < len; ++p) tt.euler_min_[0][p] = tt.euler_[p];
        for (u32 lvl = 1; (1u << lvl) <= len; ++lvl) {
            u32 span = 1u << lvl;
            tt.euler_min_.emplace_back(len - span + 1);
            for (u32 p = 0; p + span <= len; ++p) {
                u32 a = tt.euler_min_[lvl - 1][p];
                u32 b = tt.euler_min_[lvl - 1][p + span / 2];
                tt.euler_min_[lvl][p] = tt.nodes_[a].depth <= tt.nodes_[b].depth ? a : b;
            }
        }
    }

    tt.build_points(runs);
    tt.build_grid();
    return tt;
}

u32 TagTree::lca(u32 a, u32 b) const {
    u32 pa = first_visit_[a], pb = first_visit_[b];
    if (pa > pb) std::swap(pa, pb);
    u32 span = pb - pa + 1;
    u32 lvl = 31 - __builtin_clz(span);
    u32 x = euler_min_[lvl][pa];
    u32 y = euler_min_[lvl][pb - (1u << lvl) + 1];
    return nodes_[x].depth <= nodes_[y].depth ? x : y;
}

void TagTree::build_points(const TagRunIndex& runs) {
    const u32 t = runs.num_runs();
    std::vector<std::vector<u32>> runs_of_tag(runs.num_tags());
    for (u32 r = 0; r < t; ++r) runs_of_tag[runs.tag_of_run(r)].push_back(r);

    for (u32 tag = 0; tag < runs_of_tag.size(); ++tag) {
        const auto& tag_runs = runs_of_tag[tag];
        if (tag_runs.empty()) continue;

        // virtual tree: the tag's leaves plus successive-pair LCAs
        std::vector<u32> vt;
        vt.reserve(2 * tag_runs.size());
        for (size_t i = 0; i < tag_runs.size(); ++i) {
            vt.push_back(leaf_of_run_[tag_runs[i]]);
            if (i + 1 < tag_runs.size())
                vt.push_back(lca(leaf_of_run_[tag_runs[i]], leaf_of_run_[tag_runs[i + 1]]));
        }
        std::sort(vt.begin(), vt.end());  // node id == preorder
        vt.erase(std::unique(vt.begin(), vt.end()), vt.end());
        if (!vt.empty() && vt.front() == root_) vt.erase(vt.begin());

        std::vector<u32> vt_parent(vt.size(), kNoTag);  // index into vt, kNoTag = root
        std::vector<u64> weight(vt.size(), 0);
        std::vector<u32> st;
        for (u32 i = 0; i < vt.size(); ++i) {
            u32 v = vt[i];
            while (!st.empty() && nodes_[vt[st.back()]].pre_max < v) st.pop_back();
            vt_parent[i] = st.empty() ? kNoTag : st.back();
            st.push_back(i);
            const Node& nd = nodes_[v];
            if (nd.seg_first == nd.seg_last && runs.tag_of_run(nd.seg_first) == tag)
                weight[i] = runs.run_len(nd.seg_first);
        }
        for (u32 i = static_cast<u32>(vt.size()); i-- > 0;) {
            if (vt_parent[i] != kNoTag) weight[vt_parent[i]] += weight[i];
        }
        for (u32 i = 0; i < vt.size(); ++i) {
            Point pt;
            pt.x = vt[i];
            pt.y = vt_parent[i] == kNoTag ? nodes_[root_].depth : nodes_[vt[vt_parent[i]]].depth;
            pt.weight = weight[i];
            pt.tag = tag;
            points_.push_back(pt);
        }
    }
    std::sort(points_.begin(), points_.end(), [](const Point& a, const Point& b) {
        return a.x != b.x ? a.x < b.x : a.tag < b.tag;
    });

    // order-preserving dense weight ranks
    weight_by_rank_.clear();
    for (const Point& p : points_) weight_by_rank_.push_back(p.weight);
    std::sort(weight_by_rank_.begin(), weight_by_rank_.end());
    weight_by_rank_.erase(std::unique(weight_by_rank_.begin(), weight_by_rank_.end()),
                          weight_by_rank_.end());
    for (Point& p : points_) {
        p.weight_rank = static_cast<u32>(
            std::lower_bound(weight_by_rank_.begin(), weight_by_rank_.end(), p.weight) -
            weight_by_rank_.begin());
    }
}

bool TagTree::point_better(u32 a, u32 b) const {
    const Point& pa = points_[a];
    const Point& pb = points_[b];
    if (pa.weight_rank != pb.weight_rank) return pa.weight_rank > pb.weight_rank;
    if (pa.tag != pb.tag) return pa.tag < pb.tag;
    return pa.x < pb.x;
}

void TagTree::build_grid() {
    const u32 p = static_cast<u32>(points_.size());
    grid_leaves_ = 1;
    while (grid_leaves_ < std::max<u32>(p, 1)) grid_leaves_ *= 2;
    grid_.clear();

    // bottom level: one point per segment; each higher level merges pairs of
    // segments keeping y-order
    std::vector<u32> ids(p);
    for (u32 i = 0; i < p; ++i) ids[i] = i;

    u32 seg_count = grid_leaves_;
    std::vector<u32> cur = ids;
    std::vector<u32> cur_starts(seg_count + 1);
    for (u32 s = 0; s <= seg_count; ++s) cur_starts[s] = std::min(s, p);
    while (true) {
        GridLevel lvl;
        lvl.starts = cur_starts;
        lvl.point_ids = cur;
        // sparse argmax over the level's array, holding level-local indices
        if (!cur.empty()) {
            lvl.best.emplace_back(cur.size());
            for (u32 i = 0; i < cur.size(); ++i) lvl.best[0][i] = i;
            for (u32 l = 1; (1u << l) <= cur.size(); ++l) {
                u32 span = 1u << l;
                lvl.best.emplace_back(cur.size() - span + 1);
                for (u32 i = 0; i + span <= cur.size(); ++i) {
                    u32 a = lvl.best[l - 1][i];
                    u32 b = lvl.best[l - 1][i + span / 2];
                    lvl.best[l][i] = point_better(cur[a], cur[b]) ? a : b;
                }
            }
        }
        grid_.push_back(std::move(lvl));
        if (seg_count == 1) break;

        // merge neighbor segments by y
        std::vector<u32> nxt;
        nxt.reserve(cur.size());
        std::vector<u32> nxt_starts(seg_count / 2 + 1, 0);
        for (u32 s = 0; s < seg_count; s += 2) {
            u32 a = cur_starts[s], ae = cur_starts[s + 1];
            u32 b = cur_starts[s + 1], be = cur_starts[s + 2];
            nxt_starts[s / 2] = static_cast<u32>(nxt.size());
            while (a < ae || b < be) {
                bool take_a = b >= be || (a < ae && points_[cur[a]].y <= points_[cur[b]].y);
                nxt.push_back(take_a ? cur[a++] : cur[b++]);
            }
        }
        nxt_starts[seg_count / 2] = static_cast<u32>(nxt.size());
        cur = std::move(nxt);
        cur_starts = std::move(nxt_starts);
        seg_count /= 2;
    }
    return;
}

std::vector<TagTree::Point> TagTree::heaviest_in_range(u32 xlo, u32 xhi, u32 ymax,
                                                       u32 k) const {
    std::vector<Point> out;
    if (points_.empty() || k == 0 || xlo > xhi) return out;

    // x-range to point-index range
    auto lo_it = std::lower_bound(points_.begin(), points_.end(), xlo,
                                  [](const Point& pt, u32 v) { return pt.x < v; });
    auto hi_it = std::upper_bound(points_.begin(), points_.end(), xhi,
                                  [](u32 v, const Point& pt) { return v < pt.x; });
    if (lo_it >= hi_it) return out;
    u32 ilo = static_cast<u32>(lo_it - points_.begin());
    u32 ihi = static_cast<u32>(hi_it - points_.begin()) - 1;

    // canonical segments of [ilo..ihi] per level, then the y <= ymax prefix of
    // each y-sorted segment
    struct Cand {
        u32 level, lo, hi;  // index range within grid_[level].point_ids
    };
    std::vector<Cand> cands;
    struct Frame {
        u32 level;
        u32 seg;             // segment index at this level
        u32 seg_lo, seg_hi;  // leaf-index coverage
    };
    std::vector<Frame> stack{{static_cast<u32>(grid_.size()) - 1, 0, 0, grid_leaves_ - 1}};
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.seg_hi < ilo || f.seg_lo > ihi) continue;
        const GridLevel& lvl = grid_[f.level];
        if (ilo <= f.seg_lo && f.seg_hi <= ihi) {
            u32 a = lvl.starts[f.seg], b = lvl.starts[f.seg + 1];
            if (a < b) cands.push_back({f.level, a, b - 1});
            continue;
        }
        u32 mid = f.seg_lo + (f.seg_hi - f.seg_lo) / 2;
        stack.push_back({f.level - 1, 2 * f.seg, f.seg_lo, mid});
        stack.push_back({f.level - 1, 2 * f.seg + 1, mid + 1, f.seg_hi});
    }

    struct HeapEntry {
        u32 level, lo, hi, best;  // best: level-local argmax index in [lo..hi]
    };
    auto cmp = [&](const HeapEntry& a, const HeapEntry& b) {
        return !point_better(grid_[a.level].point_ids[a.best], grid_[b.level].point_ids[b.best]);
    };
    std::priority_queue<HeapEntry, std::vector<HeapEntry>, decltype(cmp)> heap(cmp);

    auto range_best = [&](u32 level, u32 lo, u32 hi) {
        const GridLevel& lvl = grid_[level];
        u32 span = hi - lo + 1;
        u32 l = 31 - __builtin_clz(span);
        u32 a = lvl.best[l][lo];
        u32 b = lvl.best[l][hi - (1u << l) + 1];
        return point_better(lvl.point_ids[a], lvl.point_ids[b]) ? a : b;
    };
    auto push_range = [&](u32 level, u32 lo, u32 hi) {
        if (lo > hi) return;
        heap.push({level, lo, hi, range_best(level, lo, hi)});
    };

    for (const Cand& c : cands) {
        const GridLevel& lvl = grid_[c.level];
        // binary search the y <= ymax prefix inside [c.lo..c.hi]
        u32 lo = c.lo, hi = c.hi + 1;
        while (lo < hi) {
            u32 mid = lo + (hi - lo) / 2;
            if (points_[lvl.point_ids[mid]].y <= ymax)
                lo = mid + 1;
            else
                hi = mid;
        }
        if (lo > c.lo) push_range(c.level, c.lo, lo - 1);
    }

    while (!heap.empty() && out.size() < k) {
        HeapEntry e = heap.top();
        heap.pop();
        out.push_back(points_[grid_[e.level].point_ids[e.best]]);
        if (e.best > e.lo) push_range(e.level, e.lo, e.best - 1);
        if (e.best < e.hi) push_range(e.level, e.best + 1, e.hi);
    }
    return out;
}

std::vector<TopkItem> TagTree::topk_tags(const TagRunIndex& runs, const RunRange& range,
                                         u32 k) const {
    std::vector<TopkItem> out;
    const u32 sc = range.contained_first();
    const i64 ec = range.contained_last();

    std::vector<std::pair<u32, bool>> boundary;  // (tag, from left side)
    if (range.first_partial) boundary.emplace_back(runs.tag_of_run(range.first), true);
    if (range.last_partial &&
        !(range.first_partial && range.first == range.last))
        boundary.emplace_back(runs.tag_of_run(range.last), false);

    if (static_cast<i64>(sc) <= ec) {
        u32 x = lca(leaf_of_run_[sc], leaf_of_run_[static_cast<u32>(ec)]);
        assert(nodes_[x].seg_first == sc && nodes_[x].seg_last == static_cast<u32>(ec));
        if (nodes_[x].depth > 0) {
            auto pts = heaviest_in_range(nodes_[x].pre, nodes_[x].pre_max,
                                         nodes_[x].depth - 1, k);
            for (const Point& pt : pts) {
                bool boundary_too =
                    (range.first_partial && pt.tag == runs.tag_of_run(range.first)) ||
                    (range.last_partial && pt.tag == runs.tag_of_run(range.last));
                out.push_back({pt.tag, pt.weight, !boundary_too});
            }
        }
    }
    for (auto [tag, left] : boundary) {
        bool already = false;
        for (const TopkItem& it : out) already = already || it.tag == tag;
        if (!already) out.push_back({tag, 1, false});
    }
    std::sort(out.begin(), out.end(), [](const TopkItem& a, const TopkItem& b) {
        return a.weight != b.weight ? a.weight > b.weight : a.tag < b.tag;
    });
    return out;
}

TagTree::CountResult TagTree::count_distinct(const TagRunIndex& runs,
                                             const RunRange& range) const {
    CountResult res;
    const u32 sc = range.contained_first();
    const i64 ec = range.contained_last();
    if (static_cast<i64>(sc) > ec) {
        // only boundary runs overlap: one or two distinct tags
        res.ops = 2;
        if (range.first == range.last) {
            res.count = 1;
        } else {
            res.count = runs.tag_of_run(range.first) == runs.tag_of_run(range.last) ? 1 : 2;
        }
        return res;
    }
    u32 x = lca(leaf_of_run_[sc], leaf_of_run_[static_cast<u32>(ec)]);
    res.ops += 4;  // Euler lookups behind the LCA
    const Node& nd = nodes_[x];
    assert(nd.seg_first == sc && nd.seg_last == static_cast<u32>(ec));
    res.count = nd.distinct;
    bool added_left = false, added_right = false;
    if (range.first_partial && nd.left_tag_new) {
        ++res.count;
        added_left = true;
    }
    if (range.last_partial && nd.right_tag_new) {
        ++res.count;
        added_right = true;
    }
    res.ops += 4;
    if (added_left && added_right &&
        runs.tag_of_run(range.first) == runs.tag_of_run(range.last)) {
        --res.count;
    }
    res.ops += 2;
    return res;
}

} // namespace wmap
