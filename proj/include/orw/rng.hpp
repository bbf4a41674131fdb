#pragma once

#include <cstdint>
#include <limits>

namespace orw {

/// SplitMix64 (Steele, Lea, Flood 2014). Fully specified 64-bit arithmetic, so
/// streams are identical on every platform; satisfies
/// UniformRandomBitGenerator.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

/// Independent substream keyed by (seed, a, b), e.g. (seed, pair, trial).
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t key = SplitMix64::mix(seed ^ 0x6A09E667F3BCC909ULL);
    key = SplitMix64::mix(key ^ (a + 0x9E3779B97F4A7C15ULL));
    key = SplitMix64::mix(key ^ (b + 0xBB67AE8584CAA73BULL));
    return SplitMix64(key);
}

/// Uniform integer in [0, bound), bound > 0. Lemire's multiply-shift with
/// rejection; no platform-dependent distribution objects involved.
inline std::uint64_t uniform_below(SplitMix64& rng, std::uint64_t bound) {
    std::uint64_t x = rng();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            x = rng();
            m = static_cast<__uint128_t>(x) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(SplitMix64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace orw
