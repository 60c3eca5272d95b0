#include "wmap/hierarchy.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_map>

namespace wmap {

std::vector<u32> offline_distinct_counts(const std::vector<u32>& A,
                                         const std::vector<std::pair<u32, u32>>& ranges) {
    const u32 t = static_cast<u32>(A.size());
    std::vector<u32> answer(ranges.size(), 0);
    if (t == 0) return answer;

    std::vector<std::vector<u32>> by_last(t);
    for (u32 qi = 0; qi < ranges.size(); ++qi) by_last[ranges[qi].second].push_back(qi);

    std::vector<i64> bit(t + 1, 0);
    auto bit_add = [&](u32 p, i64 d) {
        for (u32 x = p + 1; x <= t; x += x & (~x + 1)) bit[x] += d;
    };
    auto bit_sum = [&](i64 p) {
        i64 s = 0;
        for (i64 x = p + 1; x > 0; x -= x & (-x)) s += bit[x];
        return s;
    };

    // keep +1 only at the latest occurrence of each tag seen so far
    std::unordered_map<u32, u32> last_pos;
    for (u32 r = 0; r < t; ++r) {
        auto it = last_pos.find(A[r]);
        if (it != last_pos.end()) bit_add(it->second, -1);
        last_pos[A[r]] = r;
        bit_add(r, +1);
        for (u32 qi : by_last[r])
            answer[qi] = static_cast<u32>(bit_sum(r) - bit_sum(static_cast<i64>(ranges[qi].first) - 1));
    }
    return answer;
}

IntervalHierarchy IntervalHierarchy::build(const TagRunIndex& runs) {
    IntervalHierarchy h;
    const std::vector<u64>& L = runs.l_array();
    const u32 len = static_cast<u32>(L.size());  // 2t+1
    const u32 t = runs.num_runs();

    // nearest strictly-smaller neighbors via monotonic stacks
    std::vector<u32> left_less(len), right_less(len);
    {
        std::vector<u32> st;
        for (u32 p = 0; p < len; ++p) {
            while (!st.empty() && L[st.back()] >= L[p]) st.pop_back();
            left_less[p] = st.empty() ? kNoTag : st.back();
            st.push_back(p);
        }
        st.clear();
        for (u32 p = len; p-- > 0;) {
            while (!st.empty() && L[st.back()] >= L[p]) st.pop_back();
            right_less[p] = st.empty() ? kNoTag : st.back();
            st.push_back(p);
        }
    }

    // one maximal interval per position with L[p] >= 1; sentinels bound them
    std::vector<Node> raw;
    for (u32 p = 1; p + 1 < len; ++p) {
        if (L[p] == 0) continue;
        Node nd;
        nd.lo = left_less[p] + 1;   // sentinel L[0]=0 guarantees left_less != kNoTag
        nd.hi = right_less[p] - 1;
        nd.min_val = L[p];
        raw.push_back(nd);
    }
    std::sort(raw.begin(), raw.end(), [](const Node& a, const Node& b) {
        return a.lo != b.lo ? a.lo < b.lo : a.hi > b.hi;
    });
    raw.erase(std::unique(raw.begin(), raw.end(),
                          [](const Node& a, const Node& b) {
                              return a.lo == b.lo && a.hi == b.hi;
                          }),
              raw.end());
    h.nodes_ = std::move(raw);

    // parents: laminar family in (lo asc, hi desc) order is a preorder
    {
        std::vector<u32> st;
        for (u32 id = 0; id < h.nodes_.size(); ++id) {
            Node& nd = h.nodes_[id];
            while (!st.empty() && h.nodes_[st.back()].hi < nd.hi) st.pop_back();
            nd.parent = st.empty() ? kNoTag : st.back();
            st.push_back(id);
        }
    }

    // overlapped-run conversion: boundary below-threshold positions decide
    // the first/last run and the partial flags by parity
    std::vector<std::pair<u32, u32>> ranges;
    ranges.reserve(h.nodes_.size());
    for (Node& nd : h.nodes_) {
        u32 pl = nd.lo - 1, pr = nd.hi + 1;
        nd.run_first = pl / 2;
        nd.run_first_partial = (pl % 2) != 0;
        nd.run_last = (pr + 1) / 2 - 1;
        nd.run_last_partial = (pr % 2) != 0;
        ranges.emplace_back(nd.run_first, nd.run_last);
    }
    std::vector<u32> counts = offline_distinct_counts(runs.run_tags(), ranges);
    for (u32 id = 0; id < h.nodes_.size(); ++id) h.nodes_[id].distinct = counts[id];

    // K forests with per-position lowest-containing-node tables, filled by a
    // stack sweep over positions (the node order is a preorder)
    h.K_ = 1;
    while ((1u << (h.K_ + 1)) <= t) ++h.K_;
    h.forest_lowest_.assign(h.K_, std::vector<u32>(len, kNoTag));
    {
        std::vector<u32> st;  // path of nodes containing the current position
        std::vector<u32> current(h.K_, kNoTag);
        std::vector<std::vector<std::pair<u32, u32>>> save_stack;
        u32 next_node = 0;
        for (u32 pos = 1; pos + 1 < len; ++pos) {
            while (!st.empty() && h.nodes_[st.back()].hi < pos) {
                for (auto& [k, old] : save_stack.back()) current[k] = old;
                save_stack.pop_back();
                st.pop_back();
            }
            while (next_node < h.nodes_.size() && h.nodes_[next_node].lo <= pos) {
                if (h.nodes_[next_node].hi >= pos) {
                    st.push_back(next_node);
                    save_stack.emplace_back();
                    u32 c = h.nodes_[next_node].distinct;
                    if (c >= 1 && c <= h.K_) {
                        save_stack.back().emplace_back(c - 1, current[c - 1]);
                        current[c - 1] = next_node;
                    }
                }
                ++next_node;
            }
            for (u32 k = 0; k < h.K_; ++k) h.forest_lowest_[k][pos] = current[k];
        }
    }
    return h;
}

IntervalHierarchy::ListResult IntervalHierarchy::optimal_distinct(const TagRunIndex& runs, u32 q,
                                                                  u64 up, u64 down,
                                                                  u64 ell) const {
    ListResult out;
    const std::vector<u64>& L = runs.l_array();
    const bool left_in = up >= ell;
    const bool right_in = down >= ell;

    i64 pos;
    if (left_in && right_in) {
        pos = 2 * static_cast<i64>(q) + 1;  // the run's own W slot
        assert(L[pos] >= ell);
    } else if (!left_in && right_in) {
        pos = 2 * static_cast<i64>(q) + 2;  // B slot to the right
    } else if (left_in && !right_in) {
        pos = 2 * static_cast<i64>(q);  // B slot to the left
    } else {
        pos = kNone;  // interval strictly inside run q
    }
    if (pos == kNone || L[pos] < ell) {
        // no L position clears the threshold: the only overlapped run is q
        out.items.emplace_back(q, runs.tag_of_run(q));
        out.ops += 1;
        return out;
    }

    // probe F_1, F_2, ...; a probe whose node still has min >= ell certifies
    // at least that many tags, the first probe poking outside the threshold
    // interval closes the answer at the previous certificate
    u32 answer_node = kNoTag;
    bool triggered = false;
    for (u32 k = 1; k <= K_; ++k) {
        ++out.ops;
        u32 id = forest_lowest_[k - 1][pos];
        if (id == kNoTag) continue;
        if (nodes_[id].min_val >= ell) {
            answer_node = id;
            continue;
        }
        triggered = true;
        break;
    }

    if (triggered) {
        assert(answer_node != kNoTag);
        const Node& nd = nodes_[answer_node];
        auto listing = runs.list_distinct(nd.run_first, nd.run_last);
        out.ops += listing.visits + static_cast<u32>(listing.items.size());
        out.items = std::move(listing.items);
        return out;
    }

    // more than K tags (or no forest node observed): range navigation path
    auto located = runs.run_range_for(q, up, down, ell);
    out.ops += located.nav_steps;
    auto listing = runs.list_distinct(located.range.first, located.range.last);
    out.ops += listing.visits + static_cast<u32>(listing.items.size());
    out.items = std::move(listing.items);
    return out;
}

} // namespace wmap
