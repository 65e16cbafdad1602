#ifndef MOGP_RANDOM_HPP
#define MOGP_RANDOM_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>

namespace mogp {

// SplitMix64 finalizer. A bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Seed for trial `trial` of grid cell `cell`. For a fixed master seed the map
// (cell, trial) -> seed is injective as long as both fit in 32 bits.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint32_t cell, std::uint32_t trial) noexcept
{
    const std::uint64_t slot = (std::uint64_t{cell} << 32) | trial;
    return mix64(mix64(master) + slot);
}

/// Seeded random stream. The engine is mt19937_64, whose output sequence is
/// fixed by the standard; every derived quantity (bounded integers, unit
/// reals, Poisson draws) is computed here rather than through the
/// implementation-defined <random> distributions, so a seed replays
/// identically on every platform.
class RandomSource {
public:
    using engine_type = std::mt19937_64;

    explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform integer in [0, bound). Lemire's multiply-and-reject method.
    std::size_t below(std::size_t bound)
    {
        const std::uint64_t range = bound;
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * range;
        auto low = static_cast<std::uint64_t>(m);
        if (low < range) {
            const std::uint64_t threshold = (0 - range) % range;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(next()) * range;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::size_t>(m >> 64);
    }

    // Uniform real in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool coin() { return (next() >> 63) != 0; }

    // Poisson(lambda) by inversion with sequential search.
    std::size_t poisson(double lambda)
    {
        const double u = uniform01();
        double p = std::exp(-lambda);
        double cdf = p;
        std::size_t k = 0;
        // the tail beyond 200 terms is below double resolution for small lambda
        while (u >= cdf && k < 200) {
            ++k;
            p *= lambda / static_cast<double>(k);
            cdf += p;
        }
        return k;
    }

private:
    engine_type engine_;
};

} // namespace mogp

#endif
