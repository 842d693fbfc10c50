#pragma once

#include <cstdint>

namespace hnf {

/// Counter-based deterministic generator built on the splitmix64 mixer.
/// rng_at(seed, index) depends only on its arguments, so parallel loops can
/// draw per-index streams with no ordering or partitioning sensitivity.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t rng_at(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ splitmix64(index * 0x9e3779b97f4a7c15ULL + 1));
}

/// Uniform double in [0, 1).
inline double rng_unit(std::uint64_t seed, std::uint64_t index) {
    return static_cast<double>(rng_at(seed, index) >> 11) * 0x1.0p-53;
}

/// Small sequential helper for test-side sampling.
struct Rng {
    std::uint64_t seed;
    std::uint64_t counter = 0;
    explicit Rng(std::uint64_t s) : seed(s) {}
    std::uint64_t next() { return rng_at(seed, counter++); }
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    /// Uniform integer in [lo, hi] inclusive.
    long range(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

} // namespace hnf
