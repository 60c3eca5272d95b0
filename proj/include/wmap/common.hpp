#pragma once

#include <cstdint>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace wmap {

using u8 = uint8_t;
using u32 = uint32_t;
using u64 = uint64_t;
using i64 = int64_t;

// Reserved bytes of the text alphabet.
constexpr u8 kSeparator = 0x24;   // '$', joins input sequences
constexpr u8 kTerminator = 0x00;  // synthesized, final position only

constexpr u32 kNoTag = std::numeric_limits<u32>::max();
constexpr i64 kNone = -1;

class data_error : public std::runtime_error {
public:
    explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

inline bool is_reserved_byte(u8 c) { return c == kSeparator || c == kTerminator; }

} // namespace wmap
