#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wmap/common.hpp"

namespace wmap {

/*
 * A text over byte alphabet plus one tag per position. The text is the
 * concatenation of the input sequences joined by '$' separators and closed by
 * a single 0x00 terminator, so its length is n+1 where n counts every byte
 * before the terminator. Tags are dense ids in [0..#distinct); the original
 * payloads live in tag_dict.
 */
struct TaggedText {
    std::vector<u8> text;          // length n+1, text.back() == kTerminator
    std::vector<u32> tags;         // same length as text
    std::vector<std::string> tag_dict;  // dense id -> payload

    size_t size() const { return text.size(); }

    const std::string& payload(u32 tag_id) const { return tag_dict.at(tag_id); }
};

// Sequences with one tag payload per character. Separators and the terminator
// take the tag of the character they close. Throws data_error on empty input,
// per-pair length mismatch (message names the offending sequence index) or
// reserved bytes inside a sequence.
TaggedText ingest_tagged_text(const std::vector<std::string>& sequences,
                              const std::vector<std::vector<std::string>>& annotations);

// One already-concatenated byte string (separators included, no terminator)
// with one tag payload per position, so separator tags are explicit. The
// terminator is appended and takes the last position's tag.
TaggedText ingest_labeled_text(const std::vector<u8>& text,
                               const std::vector<std::string>& labels);

// Suffix array of tt.text, prefix doubling. Rank 0 is the terminator suffix.
std::vector<u32> build_suffix_array(const std::vector<u8>& text);

// entries[q] = tags[sa[q]].
std::vector<u32> build_tag_array(const TaggedText& tt, const std::vector<u32>& sa);

} // namespace wmap
