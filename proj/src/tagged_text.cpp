#include "wmap/tagged_text.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace wmap {

namespace {

class TagInterner {
public:
    u32 intern(const std::string& payload) {
        auto [it, inserted] = ids_.try_emplace(payload, static_cast<u32>(dict_.size()));
        if (inserted) dict_.push_back(payload);
        return it->second;
    }
    std::vector<std::string> take_dict() { return std::move(dict_); }

private:
    std::unordered_map<std::string, u32> ids_;
    std::vector<std::string> dict_;
};

} // namespace

TaggedText ingest_tagged_text(const std::vector<std::string>& sequences,
                              const std::vector<std::vector<std::string>>& annotations) {
    if (sequences.empty()) throw data_error("empty input: no sequences");
    if (sequences.size() != annotations.size())
        throw data_error("sequence/annotation count mismatch");

    TaggedText tt;
    TagInterner interner;
    for (size_t s = 0; s < sequences.size(); ++s) {
        const std::string& seq = sequences[s];
        const auto& ann = annotations[s];
        if (seq.empty())
            throw data_error("sequence " + std::to_string(s) + " is empty");
        if (ann.size() != seq.size())
            throw data_error("annotation length mismatch at sequence " + std::to_string(s));
        for (size_t p = 0; p < seq.size(); ++p) {
            u8 c = static_cast<u8>(seq[p]);
            if (is_reserved_byte(c))
                throw data_error("reserved byte in sequence " + std::to_string(s));
            tt.text.push_back(c);
            tt.tags.push_back(interner.intern(ann[p]));
        }
        // The closing separator (terminator for the last sequence) takes the
        // tag of the position it closes.
        tt.text.push_back(s + 1 < sequences.size() ? kSeparator : kTerminator);
        tt.tags.push_back(tt.tags.back());
    }
    tt.tag_dict = interner.take_dict();
    return tt;
}

TaggedText ingest_labeled_text(const std::vector<u8>& text,
                               const std::vector<std::string>& labels) {
    if (text.empty()) throw data_error("empty input text");
    if (labels.size() != text.size())
        throw data_error("label count does not match text length");
    TaggedText tt;
    TagInterner interner;
    tt.text.reserve(text.size() + 1);
    for (size_t p = 0; p < text.size(); ++p) {
        if (text[p] == kTerminator) throw data_error("terminator byte in input text");
        tt.text.push_back(text[p]);
        tt.tags.push_back(interner.intern(labels[p]));
    }
    tt.text.push_back(kTerminator);
    tt.tags.push_back(tt.tags.back());
    tt.tag_dict = interner.take_dict();
    return tt;
}

std::vector<u32> build_suffix_array(const std::vector<u8>& text) {
    const size_t n = text.size();
    std::vector<u32> sa(n), rank(n), tmp(n);
    std::iota(sa.begin(), sa.end(), 0u);
    for (size_t i = 0; i < n; ++i) rank[i] = text[i];

    for (size_t k = 1;; k *= 2) {
        auto key = [&](u32 p) {
            u32 second = (p + k < n) ? rank[p + k] + 1 : 0;
            return std::pair<u32, u32>(rank[p], second);
        };
        std::sort(sa.begin(), sa.end(), [&](u32 a, u32 b) { return key(a) < key(b); });
        tmp[sa[0]] = 0;
        for (size_t q = 1; q < n; ++q)
            tmp[sa[q]] = tmp[sa[q - 1]] + (key(sa[q - 1]) < key(sa[q]) ? 1 : 0);
        rank.swap(tmp);
        if (rank[sa[n - 1]] == n - 1) break;
    }
    return sa;
}

std::vector<u32> build_tag_array(const TaggedText& tt, const std::vector<u32>& sa) {
    std::vector<u32> entries(sa.size());
    for (size_t q = 0; q < sa.size(); ++q) entries[q] = tt.tags[sa[q]];
    return entries;
}

} // namespace wmap
