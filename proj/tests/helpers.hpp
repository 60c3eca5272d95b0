#pragma once

#include <random>
#include <set>
#include <string>
#include <vector>

#include "wmap/tagged_text.hpp"

namespace wmap::testing {

// The five toy genomes with their graph-node tags, one tag per text position
// (separators and terminator included). Reference values are pinned in the
// tests that use this.
inline TaggedText fig1_instance() {
    static const char* text = "GATTACAT$AGATACAT$GATACAT$GATTAGAT$GATTAGATA";
    static const u32 tags[45] = {
        1, 2, 3, 3, 4, 6, 7, 8, 9,       // GATTACAT$
        0, 1, 2, 3, 4, 6, 7, 8, 9,       // AGATACAT$
        1, 2, 4, 5, 6, 7, 8, 9,          // GATACAT$
        1, 2, 3, 4, 5, 6, 7, 8, 10,      // GATTAGAT$
        1, 2, 3, 4, 5, 6, 7, 8, 9,       // GATTAGATA
        9};                              // terminator
    TaggedText tt;
    for (const char* p = text; *p; ++p) tt.text.push_back(static_cast<u8>(*p));
    tt.text.push_back(kTerminator);
    tt.tags.assign(tags, tags + 45);
    for (u32 v = 0; v <= 10; ++v) tt.tag_dict.push_back(std::to_string(v));
    return tt;
}

inline std::vector<std::string> fig1_sequences() {
    return {"GATTACAT", "AGATACAT", "GATACAT", "GATTAGAT", "GATTAGATA"};
}

// Random text over ACGT (optionally split by separators) with a tag
// assignment drawn as geometric runs over the suffix-array order, so the tag
// array is run-compressible the way the structures expect.
inline TaggedText random_instance(std::mt19937_64& rng, size_t n, u32 num_tags = 0,
                                  double run_continue = 0.75) {
    static const char alphabet[] = {'A', 'C', 'G', 'T'};
    TaggedText tt;
    std::uniform_int_distribution<int> base(0, 3);
    size_t chunks = 1 + (rng() % 3 ? 0 : rng() % 3);
    for (size_t c = 0; c < chunks; ++c) {
        if (c) tt.text.push_back(kSeparator);
        size_t len = std::max<size_t>(1, (n - chunks + 1) / chunks);
        for (size_t i = 0; i < len; ++i)
            tt.text.push_back(static_cast<u8>(alphabet[base(rng)]));
    }
    tt.text.push_back(kTerminator);

    if (num_tags == 0) num_tags = 2 + rng() % 40;
    std::vector<u32> sa = build_suffix_array(tt.text);
    tt.tags.assign(tt.text.size(), 0);
    std::bernoulli_distribution go_on(run_continue);
    u32 tag = rng() % num_tags;
    for (size_t q = 0; q < sa.size(); ++q) {
        if (q > 0 && !go_on(rng)) {
            u32 next = rng() % num_tags;
            if (num_tags > 1 && next == tag) next = (next + 1) % num_tags;
            tag = next;
        }
        tt.tags[sa[q]] = tag;
    }
    u32 max_tag = 0;
    for (u32 v : tt.tags) max_tag = std::max(max_tag, v);
    for (u32 v = 0; v <= max_tag; ++v) tt.tag_dict.push_back(std::to_string(v));
    return tt;
}

// pattern over ACGT: either a separator-free window of the text or a fresh
// random string
inline std::string random_pattern(std::mt19937_64& rng, const TaggedText& tt, size_t max_len) {
    std::uniform_int_distribution<size_t> len_dist(1, max_len);
    size_t m = len_dist(rng);
    std::string pat;
    if (rng() % 10 < 7 && tt.text.size() > m + 1) {
        for (int tries = 0; tries < 20; ++tries) {
            size_t start = rng() % (tt.text.size() - m);
            pat.clear();
            bool ok = true;
            for (size_t i = 0; i < m; ++i) {
                u8 c = tt.text[start + i];
                if (is_reserved_byte(c)) {
                    ok = false;
                    break;
                }
                pat.push_back(static_cast<char>(c));
            }
            if (ok) return pat;
        }
    }
    static const char alphabet[] = {'A', 'C', 'G', 'T'};
    pat.clear();
    for (size_t i = 0; i < m; ++i) pat.push_back(alphabet[rng() % 4]);
    return pat;
}

} // namespace wmap::testing
