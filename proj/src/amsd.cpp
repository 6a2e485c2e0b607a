#include "flskit/amsd.hpp"

#include <cmath>

namespace flskit {

AmsdResult run_amsd(const Bitstream& b, double z_threshold) {
    if (b.empty()) throw EmptyInput("run_amsd: empty bitstream");
    if (!(z_threshold > 0.0))
        throw InvalidConfig("run_amsd: z_threshold must be > 0");

    AmsdResult r;
    r.n_bits = b.size();
    const auto n = static_cast<double>(r.n_bits);
    r.mean = static_cast<double>(b.popcount()) / n;
    // population convention: over {0,1} bits the standard deviation is
    // exactly sqrt(p(1-p))
    r.std = std::sqrt(r.mean * (1.0 - r.mean));
    r.z_mean = (r.mean - 0.5) / (0.5 / std::sqrt(n));
    r.pass = std::abs(r.z_mean) <= z_threshold;
    return r;
}

} // namespace flskit
