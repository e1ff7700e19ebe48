#pragma once

// SplitMix64: output k is mix(seed + k * 0x9e3779b97f4a7c15). Counter based,
// so a stream is fully determined by its seed on every platform. Bounded
// draws use rejection sampling rather than <random> distributions, whose
// algorithms differ between standard libraries.

#include <cstdint>
#include <limits>

namespace majdyn {

constexpr std::uint64_t splitmix64_mix(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    using result_type = std::uint64_t;
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

    explicit constexpr Rng(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()()
    {
        state_ += kGamma;
        return splitmix64_mix(state_);
    }

    // Uniform in [0, bound); bound > 0.
    constexpr std::uint64_t below(std::uint64_t bound)
    {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = (*this)();
            if (r >= threshold)
                return r % bound;
        }
    }

private:
    std::uint64_t state_;
};

// Child seed for task (stream, item) under a master seed. Independent of how
// tasks are later scheduled onto workers.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t item)
{
    std::uint64_t h = splitmix64_mix(master + Rng::kGamma);
    h = splitmix64_mix(h ^ (stream + 2 * Rng::kGamma));
    return splitmix64_mix(h ^ (item + 3 * Rng::kGamma));
}

} // namespace majdyn
