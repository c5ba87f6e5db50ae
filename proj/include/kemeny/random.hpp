#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace kemeny {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed of substream `index` under master seed `seed`. Depends only on the
/// pair, so work can be split across threads in any order.
constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) noexcept
{
    return mix64(mix64(seed) + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

/// SplitMix64 generator; satisfies UniformRandomBitGenerator.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() noexcept
    {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

private:
    std::uint64_t state_;
};

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(SplitMix64& rng) noexcept
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double standard_normal(SplitMix64& rng)
{
    std::normal_distribution<double> normal(0.0, 1.0);
    return normal(rng);
}

} // namespace kemeny
