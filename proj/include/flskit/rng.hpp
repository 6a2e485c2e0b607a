#pragma once

#include <cmath>
#include <cstdint>

#include "flskit/bitstream.hpp"

namespace flskit {

/// splitmix64 (Steele, Lea, Flood; public domain reference implementation).
/// Used to expand single seeds into generator state and derived stream seeds.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

/// The repo-wide reference pseudo-random generator: xoshiro256** 1.0
/// (Blackman & Vigna, public domain reference implementation), state seeded
/// from splitmix64. Fixed here so every seeded result reproduces bit-exactly.
class Xoshiro256StarStar {
public:
    explicit Xoshiro256StarStar(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& s : state_) s = sm.next();
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

/// The index-th output of a splitmix64 stream seeded with `seed`; the fixed
/// rule for deriving per-replica and per-chunk seeds.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Uniform random bitstream of exactly n_bits from the reference generator;
/// each 64-bit draw is consumed most significant bit first.
Bitstream random_bitstream(std::size_t n_bits, std::uint64_t seed);

/// Poisson sampler, Knuth's product method with chunk splitting so the
/// e^-lambda factor never underflows. Exact for any lambda >= 0.
std::uint32_t sample_poisson(Xoshiro256StarStar& rng, double lambda);

/// Gaussian N(0,1) sampler, basic Box-Muller; caches the second variate.
class GaussianSampler {
public:
    double next(Xoshiro256StarStar& rng) {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = rng.next_double();
        while (u1 == 0.0) u1 = rng.next_double();
        const double u2 = rng.next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.28318530717958647692 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace flskit
