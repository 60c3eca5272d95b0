#pragma once

#include <optional>
#include <vector>

#include "wmap/common.hpp"

namespace wmap {

/*
 * Polynomial Karp-Rabin fingerprints modulo the Mersenne prime 2^61 - 1.
 * hash(S) = sum S[k] * base^(|S|-1-k), so hash(S'.S'') = hash(S') * base^|S''|
 * + hash(S'') composes in constant time given base^|S''|.
 */
class Fingerprinter {
public:
    static constexpr u64 kPrime = (u64(1) << 61) - 1;

    explicit Fingerprinter(u64 base) : base_(base % kPrime) {}

    u64 base() const { return base_; }

    static u64 mul(u64 a, u64 b) {
        unsigned __int128 z = (unsigned __int128)a * b;
        u64 lo = (u64)(z & kPrime);
        u64 hi = (u64)(z >> 61);
        u64 s = lo + hi;
        if (s >= kPrime) s -= kPrime;
        return s;
    }
    static u64 add(u64 a, u64 b) {
        u64 s = a + b;
        if (s >= kPrime) s -= kPrime;
        return s;
    }
    static u64 sub(u64 a, u64 b) { return add(a, kPrime - b); }

    u64 hash_byte(u8 c) const { return c % kPrime; }
    // hash(left . right) from the parts; pow_right = base^|right|
    static u64 combine(u64 left, u64 right, u64 pow_right) {
        return add(mul(left, pow_right), right);
    }

private:
    u64 base_;
};

// Prefix fingerprints of a pattern, built in O(m); any substring fingerprint
// in O(1).
class PatternHashes {
public:
    PatternHashes(const Fingerprinter& fp, const u8* pat, size_t len);

    size_t length() const { return pows_.size() - 1; }
    // fingerprint of pat[offset .. offset+len-1]
    u64 substring(size_t offset, size_t len) const {
        u64 whole = prefix_[offset + len];
        u64 head = Fingerprinter::mul(prefix_[offset], pows_[len]);
        return Fingerprinter::sub(whole, head);
    }

private:
    std::vector<u64> prefix_;  // prefix_[k] = hash of pat[0..k-1]
    std::vector<u64> pows_;    // base^k
};

/*
 * Straight-line program for the text, built by pairing rounds with
 * hash-consing, so the derivation is balanced (height <= ceil(log2 n) + 1)
 * and repeated subtrees are shared. Every symbol carries the length and
 * fingerprint of its expansion, which is what the LCP oracle walks on.
 */
class Slp {
public:
    struct LcpResult {
        u64 lcp = 0;
        u32 steps = 0;  // parse-tree moves, bounded by 3*height + O(1)
    };

    static Slp build(const std::vector<u8>& text, u64 fingerprint_base);
    static Slp from_rules(std::vector<u8> terminals, std::vector<u32> lefts,
                          std::vector<u32> rights, u32 root, u64 text_len,
                          u64 fingerprint_base);

    // LCP(pat[i..j], text[q..]). Callers must ensure pat[i..j] occurs in the
    // text; fingerprint equality then only compares text substrings against
    // text substrings, where a random base makes collisions improbable.
    LcpResult lcp_with_text_suffix(const PatternHashes& ph, size_t i, size_t j, u64 q) const;

    u64 text_length() const { return text_len_; }
    u32 num_rules() const { return static_cast<u32>(lens_.size()); }
    u32 height() const { return heights_[root_]; }
    u32 root() const { return root_; }
    const Fingerprinter& fingerprinter() const { return fp_; }

    std::vector<u8> expand() const;  // full text, for tests and validation

    // serialized form
    u32 num_terminals() const { return num_terminals_; }
    u8 terminal_char(u32 s) const { return term_chars_[s]; }
    const std::vector<u32>& rule_lefts() const { return lefts_; }
    const std::vector<u32>& rule_rights() const { return rights_; }

private:
    bool is_terminal(u32 s) const { return s < num_terminals_; }
    u32 left(u32 s) const { return lefts_[s - num_terminals_]; }
    u32 right(u32 s) const { return rights_[s - num_terminals_]; }
    void label_symbols();

    Fingerprinter fp_{0};
    u64 text_len_ = 0;
    u32 num_terminals_ = 0;
    u32 root_ = 0;
    std::vector<u8> term_chars_;
    std::vector<u32> lefts_, rights_;    // pair rules, ids offset by num_terminals_
    std::vector<u64> lens_, fps_, pows_; // per symbol
    std::vector<u32> heights_;
};

} // namespace wmap
