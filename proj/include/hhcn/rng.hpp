#pragma once

#include <cstdint>

namespace hhcn::rng {

// SplitMix64 finalizer. Used as a stateless keyed generator: every Monte
// Carlo draw is a pure function of (seed, stream indices), so trials can run
// in any order, or in parallel, and produce bit-identical results.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t keyed(std::uint64_t seed, std::uint64_t a) noexcept {
    return splitmix64(splitmix64(seed) ^ a);
}

constexpr std::uint64_t keyed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept {
    return splitmix64(keyed(seed, a) ^ splitmix64(b + 0x632BE59BD9B4E019ULL));
}

constexpr std::uint64_t keyed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                              std::uint64_t c) noexcept {
    return splitmix64(keyed(seed, a, b) ^ splitmix64(c + 0x9E6C63D0876A9A47ULL));
}

// Uniform double in [0, 1) from 53 high bits.
constexpr double u01(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Sequential generator for test-data synthesis.
class SplitMix {
public:
    explicit constexpr SplitMix(std::uint64_t seed) noexcept : state_(seed) {}
    constexpr std::uint64_t next() noexcept {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    // Uniform integer in [0, bound).
    constexpr std::uint64_t below(std::uint64_t bound) noexcept { return next() % bound; }
    constexpr double uniform() noexcept { return u01(next()); }

private:
    std::uint64_t state_;
};

}  // namespace hhcn::rng
