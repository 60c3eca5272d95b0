#pragma once

#include <iosfwd>
#include <string>

#include "wmap/index.hpp"

namespace wmap {

/*
 * Index file layout: "WMAP" magic, format version, the size statistics
 * (n, r, t, g), the frequency threshold f and the fingerprint base, followed
 * by length-prefixed sections (tag dictionary, BWT runs and samples, grammar
 * rules, tag-run arrays with L, triple lengths). Integers are little-endian
 * fixed width except BWT run lengths, which are varints. Derived lookup
 * structures are rebuilt deterministically on load, so a loaded index answers
 * queries identically and a rebuilt file is byte-identical for the same base.
 */
class IndexCodec {
public:
    static constexpr char kMagic[4] = {'W', 'M', 'A', 'P'};
    static constexpr u32 kVersion = 1;

    static void save(const WheelerMap& index, std::ostream& out);
    static WheelerMap load(std::istream& in);

    static void save_file(const WheelerMap& index, const std::string& path);
    static WheelerMap load_file(const std::string& path);
};

} // namespace wmap
