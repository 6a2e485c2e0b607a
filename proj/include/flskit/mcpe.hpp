#pragma once

#include <cstdint>
#include <vector>

#include "flskit/bitstream.hpp"

namespace flskit {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct PiEstimate {
    double pi_hat = 0.0;          // 4 * n_inside / n_total
    std::uint64_t n_inside = 0;
    std::uint64_t n_total = 0;
    double sigma = 0.0;           // 4 * sqrt(p(1-p)/n_total), p = n_inside/n_total
};

struct McpeResult {
    PiEstimate device;
    PiEstimate reference;
    double z_device = 0.0; // (pi_hat - pi) / device.sigma
    bool pass = false;
};

/// Packs the stream into bytes, maps each byte v to v/255, and pairs
/// consecutive floats as (x, y); a trailing unpaired float is discarded.
std::vector<Point> bitstream_to_points(const Bitstream& b);

/// Hit-or-miss quarter-circle estimate; the boundary x^2 + y^2 = 1 counts
/// as inside.
PiEstimate estimate_pi(const std::vector<Point>& points);

/// Device estimate from b, plus a matched-count estimate from a same-length
/// uniform bitstream out of the seeded reference generator (informational).
/// Pass iff |z_device| <= z_threshold.
McpeResult run_mcpe(const Bitstream& b, std::uint64_t seed, double z_threshold);

} // namespace flskit
