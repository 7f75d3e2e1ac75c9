#pragma once

#include <cstdint>
#include <random>

namespace wcec {

// splitmix64 step; used to derive independent sub-seeds from a master seed.
inline uint64_t mix_seed(uint64_t seed, uint64_t salt) {
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::mt19937_64 make_rng(uint64_t seed) { return std::mt19937_64(seed); }

} // namespace wcec
