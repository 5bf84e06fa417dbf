#pragma once

#include <cstdint>

namespace omasid {

// Stateless deterministic randomness. Seeded quantities (joining-agent
// states, per-node excitation phases) are derived by hashing the scenario
// seed with the consumer's coordinates, so results do not depend on call
// order or platform RNG internals.

/// SplitMix64 finalizer; full-period mix of a 64-bit word.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t hash_mix(std::uint64_t seed, std::uint64_t a) {
    return splitmix64(seed ^ splitmix64(a));
}

constexpr std::uint64_t hash_mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return hash_mix(hash_mix(seed, a), b);
}

/// Map a hash to a double in [0, 1) using the top 53 bits.
constexpr double unit_from_hash(std::uint64_t h) {
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

/// Uniform value in [lo, hi) derived from (seed, a, b).
constexpr double uniform_from_hash(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                                   double lo, double hi) {
    return lo + (hi - lo) * unit_from_hash(hash_mix(seed, a, b));
}

} // namespace omasid
