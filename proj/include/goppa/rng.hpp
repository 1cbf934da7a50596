#pragma once

#include <cstdint>
#include <random>

namespace goppa {

/// All randomized searches run off an explicit 64-bit seed.  mt19937_64 output
/// is pinned by the standard, and we avoid uniform_int_distribution (whose
/// mapping is implementation-defined) so seeded runs reproduce everywhere.
inline std::mt19937_64 seeded_rng(std::uint64_t seed) {
    return std::mt19937_64(seed);
}

/// Uniform-ish draw from [0, n); modulo bias is irrelevant for search loops.
inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) {
    return rng() % n;
}

/// Seed used to derive the deterministic coordinate-change sequence in the
/// curve intersection routine (documented constant, splitmix64 increment).
inline constexpr std::uint64_t kCoordChangeSeed = 0x9e3779b97f4a7c15ull;

}  // namespace goppa
