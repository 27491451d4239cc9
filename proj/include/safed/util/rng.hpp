#pragma once
#include <cstdint>
#include <random>
#include <string_view>

namespace safed {

// splitmix64: used to derive independent sub-seeds from one global seed so
// that parallel jobs (per-trace, per-ablation-run) stay reproducible no
// matter the execution order.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Derive a sub-seed from (seed, stream tag, index). The tag keeps RNG
// streams for different purposes (init, shuffle, dropout, noise) decoupled.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag, std::uint64_t index = 0) {
    std::uint64_t h = seed;
    for (char c : tag) h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<unsigned char>(c)));
    return splitmix64(h ^ splitmix64(index));
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed, std::string_view tag, std::uint64_t index = 0) {
    return Rng(derive_seed(seed, tag, index));
}

} // namespace safed
