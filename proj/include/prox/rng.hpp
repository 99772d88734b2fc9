#ifndef PROX_RNG_HPP
#define PROX_RNG_HPP

#include <cstdint>

// Deterministic, platform-stable random primitives. std::uniform_real_distribution
// is implementation-defined, so all uniforms here are built directly from 64-bit
// mixes: identical bits on every platform for a given seed.

namespace prox::rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Top 53 bits -> [0, 1).
inline double to_unit(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Sequential stream (splitmix64 over an incrementing counter).
class Stream {
public:
    explicit Stream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64(state_++); }
    double next_unit() { return to_unit(next_u64()); }

    // Box-Muller; caches the second variate.
    double next_normal();

private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

// Counter-based per-pair uniform: keyed on (seed, i, j), order of evaluation
// irrelevant. Callers must pass i < j for unordered pairs.
inline double pair_unit(std::uint64_t seed, std::uint64_t i, std::uint64_t j) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ (i * 0xd6e8feb86659fd93ULL));
    h = splitmix64(h ^ (j * 0xa3b195354a39b70dULL));
    return to_unit(h);
}

} // namespace prox::rng

#endif
