#include "flskit/rng.hpp"

namespace flskit {

Bitstream random_bitstream(std::size_t n_bits, std::uint64_t seed) {
    Xoshiro256StarStar rng(seed);
    Bitstream b;
    b.reserve_bits(n_bits);
    std::size_t remaining = n_bits;
    while (remaining >= 64) {
        b.append_word_prefix(rng.next_u64(), 64);
        remaining -= 64;
    }
    if (remaining > 0)
        b.append_word_prefix(rng.next_u64(), static_cast<unsigned>(remaining));
    return b;
}

namespace {

// Knuth's product method; valid while e^-lambda stays comfortably above
// double underflow.
std::uint32_t poisson_small(Xoshiro256StarStar& rng, double lambda) {
    const double limit = std::exp(-lambda);
    std::uint32_t k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= rng.next_double();
    } while (p > limit);
    return k - 1;
}

} // namespace

std::uint32_t sample_poisson(Xoshiro256StarStar& rng, double lambda) {
    // Poisson(a) + Poisson(b) ~ Poisson(a+b), so large means are sampled in
    // chunks without changing the distribution.
    std::uint32_t k = 0;
    while (lambda > 25.0) {
        k += poisson_small(rng, 25.0);
        lambda -= 25.0;
    }
    if (lambda > 0.0) k += poisson_small(rng, lambda);
    return k;
}

} // namespace flskit
