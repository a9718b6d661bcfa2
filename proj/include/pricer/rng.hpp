#pragma once

#include <cstdint>
#include <random>

namespace pricer {

/// SplitMix64 mixing step.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derive an independent substream seed from (master, path, channel).
/// Substreams are what make path generation reproducible regardless of
/// evaluation order or thread count.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t path,
                                    std::uint64_t channel) {
    std::uint64_t s = master;
    std::uint64_t h = splitmix64(s);
    s = h ^ (path * 0xd1342543de82ef95ULL + 1);
    h = splitmix64(s);
    s = h ^ (channel * 0xaf251af3b0f025b5ULL + 1);
    return splitmix64(s);
}

/// xoshiro256++ engine. Cheap to seed, so per-path substreams cost almost
/// nothing even at millions of paths.
class Xoshiro256pp {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256pp(std::uint64_t seed) {
        for (auto& word : state_) word = splitmix64(seed);
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

/// Seeded stream of standard-normal and auxiliary draws for one substream.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    double normal() { return normal_(engine_); }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }

    /// ±1 with equal probability.
    double rademacher() { return (engine_() & 1ULL) ? 1.0 : -1.0; }

private:
    Xoshiro256pp engine_;
    std::normal_distribution<double> normal_;
};

}  // namespace pricer
