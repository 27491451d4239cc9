#pragma once
#include <cstdint>
#include <string>
#include <string_view>

namespace safed {

// FNV-1a 64-bit, rendered as hex. Used for config/dataset digests in
// reports; not cryptographic.
inline std::string fnv1a_hex(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : data) {
        h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
        h *= 0x100000001b3ULL;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

} // namespace safed
