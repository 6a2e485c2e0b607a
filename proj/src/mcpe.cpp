#include "flskit/mcpe.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "flskit/rng.hpp"

namespace flskit {

std::vector<Point> bitstream_to_points(const Bitstream& b) {
    if (b.size() < 16)
        throw InsufficientBits("bitstream_to_points: need at least 16 bits");
    const auto bytes = pack_bytes(b);
    const std::size_t n_points = bytes.size() / 2; // trailing unpaired byte dropped
    std::vector<Point> points(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        points[i].x = static_cast<double>(bytes[2 * i]) / 255.0;
        points[i].y = static_cast<double>(bytes[2 * i + 1]) / 255.0;
    }
    return points;
}

PiEstimate estimate_pi(const std::vector<Point>& points) {
    if (points.empty()) throw EmptyInput("estimate_pi: no points");
    PiEstimate e;
    e.n_total = points.size();
    for (const Point& p : points)
        if (p.x * p.x + p.y * p.y <= 1.0) ++e.n_inside;
    const auto n = static_cast<double>(e.n_total);
    const double p_hat = static_cast<double>(e.n_inside) / n;
    e.pi_hat = 4.0 * p_hat;
    e.sigma = 4.0 * std::sqrt(p_hat * (1.0 - p_hat) / n);
    return e;
}

McpeResult run_mcpe(const Bitstream& b, std::uint64_t seed, double z_threshold) {
    if (!(z_threshold > 0.0))
        throw InvalidConfig("run_mcpe: z_threshold must be > 0");
    McpeResult r;
    r.device = estimate_pi(bitstream_to_points(b));
    // matched coordinate count: a same-length uniform bitstream run through
    // the identical byte-to-point pipeline
    r.reference = estimate_pi(bitstream_to_points(random_bitstream(b.size(), seed)));

    const double delta = r.device.pi_hat - std::numbers::pi;
    if (r.device.sigma > 0.0)
        r.z_device = delta / r.device.sigma;
    else
        r.z_device = delta == 0.0
                         ? 0.0
                         : std::copysign(std::numeric_limits<double>::infinity(), delta);
    r.pass = std::abs(r.z_device) <= z_threshold;
    return r;
}

} // namespace flskit
