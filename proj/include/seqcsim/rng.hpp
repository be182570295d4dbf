#ifndef SEQCSIM_RNG_HPP
#define SEQCSIM_RNG_HPP

#include <cstdint>

namespace seqcsim {

/// splitmix64 mixing step (Steele, Lea & Flood's published constants).
inline std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// xoshiro256** (Blackman & Vigna), seeded through splitmix64. A fixed
/// published generator so that identical seeds yield identical trajectories
/// on every platform, unlike the host library's engines.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_)
            w = splitmix64(sm);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1), 53 mantissa bits of the next output.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Deterministic per-stream seed for trajectory i of an ensemble.
    static std::uint64_t stream_seed(std::uint64_t base_seed, std::uint64_t index) {
        std::uint64_t x = base_seed + index;
        return splitmix64(x);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

} // namespace seqcsim

#endif
