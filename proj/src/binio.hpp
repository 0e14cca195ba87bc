#pragma once

// Little-endian scalar IO shared by the binary spill formats. Not installed;
// the on-disk formats are owned by the modules that include this.

#include <cstdint>
#include <istream>
#include <ostream>

namespace curate::binio {

inline void put_u32(std::ostream& out, std::uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b, 4);
}

inline void put_u64(std::ostream& out, std::uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b, 8);
}

inline bool get_u32(std::istream& in, std::uint32_t& v) {
    char b[4];
    if (!in.read(b, 4)) return false;
    v = 0;
    for (int i = 0; i < 4; ++i) {
        v |= static_cast<std::uint32_t>(static_cast<unsigned char>(b[i])) << (8 * i);
    }
    return true;
}

inline bool get_u64(std::istream& in, std::uint64_t& v) {
    char b[8];
    if (!in.read(b, 8)) return false;
    v = 0;
    for (int i = 0; i < 8; ++i) {
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(b[i])) << (8 * i);
    }
    return true;
}

}  // namespace curate::binio
