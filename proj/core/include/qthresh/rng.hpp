#pragma once

#include <cstdint>

namespace qthresh {

/// splitmix64 step (Vigna's public-domain mixer). Advances `state` and
/// returns the next output.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// xoshiro256++ with substream construction. Stream `i` of run seed `s` is
/// seeded by four splitmix64 outputs from the mixed state s ^ golden*(i+1),
/// so distinct (seed, stream) pairs give decorrelated, non-overlapping
/// generators. Trial-parallel code derives one stream per trial index; the
/// draw sequence then does not depend on how trials are scheduled.
class Xoshiro256pp {
  public:
    explicit Xoshiro256pp(std::uint64_t seed) : Xoshiro256pp(seed, 0) {}

    Xoshiro256pp(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t mix = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
        for (auto& word : state_) word = splitmix64_next(mix);
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
    }

    using result_type = std::uint64_t;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()() { return next(); }

    std::uint64_t next() {
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

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4];
};

}  // namespace qthresh
