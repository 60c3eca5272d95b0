#include "wmap/slp.hpp"

#include <cassert>
#include <map>

namespace wmap {

PatternHashes::PatternHashes(const Fingerprinter& fp, const u8* pat, size_t len) {
    prefix_.resize(len + 1);
    pows_.resize(len + 1);
    prefix_[0] = 0;
    pows_[0] = 1;
    for (size_t k = 0; k < len; ++k) {
        prefix_[k + 1] = Fingerprinter::add(Fingerprinter::mul(prefix_[k], fp.base()),
                                            fp.hash_byte(pat[k]));
        pows_[k + 1] = Fingerprinter::mul(pows_[k], fp.base());
    }
}

Slp Slp::build(const std::vector<u8>& text, u64 fingerprint_base) {
    Slp slp;
    slp.fp_ = Fingerprinter(fingerprint_base);
    slp.text_len_ = text.size();

    // terminals, one per distinct byte, in first-appearance order
    std::vector<u32> term_id(256, kNoTag);
    std::vector<u32> level;
    level.reserve(text.size());
    for (u8 c : text) {
        if (term_id[c] == kNoTag) {
            term_id[c] = static_cast<u32>(slp.term_chars_.size());
            slp.term_chars_.push_back(c);
        }
        level.push_back(term_id[c]);
    }
    slp.num_terminals_ = static_cast<u32>(slp.term_chars_.size());

    std::map<std::pair<u32, u32>, u32> consed;
    while (level.size() > 1) {
        std::vector<u32> next;
        next.reserve((level.size() + 1) / 2);
        for (size_t k = 0; k + 1 < level.size(); k += 2) {
            auto key = std::make_pair(level[k], level[k + 1]);
            auto [it, inserted] = consed.try_emplace(
                key, slp.num_terminals_ + static_cast<u32>(slp.lefts_.size()));
            if (inserted) {
                slp.lefts_.push_back(key.first);
                slp.rights_.push_back(key.second);
            }
            next.push_back(it->second);
        }
        if (level.size() % 2 == 1) next.push_back(level.back());
        level.swap(next);
    }
    slp.root_ = level[0];
    slp.label_symbols();
    return slp;
}

Slp Slp::from_rules(std::vector<u8> terminals, std::vector<u32> lefts,
                    std::vector<u32> rights, u32 root, u64 text_len,
                    u64 fingerprint_base) {
    Slp slp;
    slp.fp_ = Fingerprinter(fingerprint_base);
    slp.text_len_ = text_len;
    slp.term_chars_ = std::move(terminals);
    slp.num_terminals_ = static_cast<u32>(slp.term_chars_.size());
    slp.lefts_ = std::move(lefts);
    slp.rights_ = std::move(rights);
    slp.root_ = root;
    slp.label_symbols();
    return slp;
}

void Slp::label_symbols() {
    const size_t total = num_terminals_ + lefts_.size();
    lens_.resize(total);
    fps_.resize(total);
    pows_.resize(total);
    heights_.resize(total);
    for (u32 s = 0; s < num_terminals_; ++s) {
        lens_[s] = 1;
        fps_[s] = fp_.hash_byte(term_chars_[s]);
        pows_[s] = fp_.base();
        heights_[s] = 0;
    }
    // rules were created bottom-up, so children precede parents
    for (u32 r = 0; r < lefts_.size(); ++r) {
        u32 s = num_terminals_ + r;
        u32 l = lefts_[r], rr = rights_[r];
        assert(l < s && rr < s);
        lens_[s] = lens_[l] + lens_[rr];
        fps_[s] = Fingerprinter::combine(fps_[l], fps_[rr], pows_[rr]);
        pows_[s] = Fingerprinter::mul(pows_[l], pows_[rr]);
        heights_[s] = 1 + std::max(heights_[l], heights_[rr]);
    }
}

std::vector<u8> Slp::expand() const {
    std::vector<u8> out;
    out.reserve(text_len_);
    std::vector<u32> stack{root_};
    while (!stack.empty()) {
        u32 s = stack.back();
        stack.pop_back();
        if (is_terminal(s)) {
            out.push_back(term_chars_[s]);
        } else {
            stack.push_back(right(s));
            stack.push_back(left(s));
        }
    }
    return out;
}

Slp::LcpResult Slp::lcp_with_text_suffix(const PatternHashes& ph, size_t i, size_t j,
                                         u64 q) const {
    LcpResult res;
    if (j < i) return res;
    const u64 qlen = j - i + 1;
    if (q >= text_len_) return res;

    // descend to the leaf at text position q, recording the path
    struct PathEntry {
        u32 symbol;
        bool went_left;
    };
    std::vector<PathEntry> path;
    u32 cur = root_;
    u64 off = q;
    while (!is_terminal(cur)) {
        ++res.steps;
        u32 l = left(cur);
        if (off < lens_[l]) {
            path.push_back({cur, true});
            cur = l;
        } else {
            off -= lens_[l];
            path.push_back({cur, false});
            cur = right(cur);
        }
    }

    u64 matched = 0;
    u64 hash = 0;
    auto try_extend = [&](u32 sym) -> bool {
        u64 ext = lens_[sym];
        if (matched + ext > qlen) return false;
        u64 combined = Fingerprinter::combine(hash, fps_[sym], pows_[sym]);
        if (combined != ph.substring(i, matched + ext)) return false;
        hash = combined;
        matched += ext;
        return true;
    };

    // the leaf itself
    {
        u64 h1 = fp_.hash_byte(term_chars_[cur]);
        if (h1 != ph.substring(i, 1)) return res;
        hash = h1;
        matched = 1;
    }
    if (matched == qlen) {
        res.lcp = matched;
        return res;
    }

    // re-ascend, extending over right siblings while the whole sibling matches
    u32 pending = kNoTag;  // sibling holding the first mismatch, if any
    while (!path.empty()) {
        ++res.steps;
        PathEntry e = path.back();
        path.pop_back();
        if (!e.went_left) continue;
        u32 sib = right(e.symbol);
        if (try_extend(sib)) {
            if (matched == qlen) break;
            continue;
        }
        pending = sib;
        break;
    }

    // re-descend into the sibling containing the mismatch (or pattern end)
    while (pending != kNoTag && matched < qlen) {
        ++res.steps;
        if (is_terminal(pending)) {
            // a single char that failed to extend cannot match
            break;
        }
        u32 l = left(pending);
        if (try_extend(l)) {
            pending = right(pending);
        } else {
            pending = l;
        }
    }

    res.lcp = matched;
    return res;
}

} // namespace wmap
