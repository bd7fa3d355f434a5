#pragma once

// Seeded randomness. Every stochastic operation takes an explicit 64-bit seed.
// Work split into blocks uses stream seeds derived as
//     derive_seed(master, block_index)
// so results depend only on (seed, block layout), never on the thread count.

#include <cstdint>
#include <random>

namespace mgm {

using Engine = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 20240607;

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return mix64(mix64(master) ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

inline Engine make_engine(std::uint64_t seed) { return Engine{seed}; }

// Uniform double in [0,1) from the top 53 bits; independent of the standard
// library's distribution implementations so sample streams are portable.
inline double uniform01(Engine& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Uniform double in (0,1].
inline double uniform_open_closed(Engine& eng) {
    return static_cast<double>((eng() >> 11) + 1) * 0x1.0p-53;
}

// Threshold t such that (eng() < t) has probability prob (to within 2^-64).
inline std::uint64_t bernoulli_threshold(double prob) {
    if (prob <= 0.0) return 0;
    if (prob >= 1.0) return ~std::uint64_t{0};
    return static_cast<std::uint64_t>(prob * 0x1.0p64);
}

inline std::uint64_t uniform_index(Engine& eng, std::uint64_t n) {
    // Plain modulo reduction; the bias is at most n / 2^64.
    return eng() % n;
}

}  // namespace mgm
