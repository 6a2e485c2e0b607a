#pragma once

#include <cstdint>

#include "flskit/bitstream.hpp"

namespace flskit {

/// Arithmetic mean / standard deviation result. std is the population
/// standard deviation, which over {0,1} bits is exactly sqrt(mean*(1-mean)).
struct AmsdResult {
    double mean = 0.0;
    double std = 0.0;
    std::uint64_t n_bits = 0;
    double z_mean = 0.0; // (mean - 0.5) / (0.5 / sqrt(n_bits))
    bool pass = false;
};

/// Mean/deviation test: pass iff |z_mean| <= z_threshold. Permutation
/// invariant by construction; it cannot see patterns.
AmsdResult run_amsd(const Bitstream& b, double z_threshold);

} // namespace flskit
