#include "flskit/sources.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string_view>

#include "flskit/file_util.hpp"
#include "flskit/rng.hpp"

namespace flskit {

void DetectorModel::validate() const {
    if (!(mean_photons >= 0.0) || !std::isfinite(mean_photons))
        throw InvalidModel("mean_photons must be >= 0");
    if (!(gain > 0.0) || !std::isfinite(gain))
        throw InvalidModel("gain must be > 0");
    if (!(pedestal >= 0.0) || !std::isfinite(pedestal))
        throw InvalidModel("pedestal must be >= 0");
    if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma))
        throw InvalidModel("noise_sigma must be >= 0");
    if (adc_bits < 8 || adc_bits > 16)
        throw InvalidModel("adc_bits must be in [8, 16]");
    if (!(pedestal + gain * mean_photons < std::ldexp(1.0, adc_bits)))
        throw InvalidModel("mean signal does not fit the ADC range");
    switch (flaw.kind) {
    case FlawKind::none:
        break;
    case FlawKind::drift:
        if (!std::isfinite(flaw.drift_slope))
            throw InvalidModel("drift slope must be finite");
        break;
    case FlawKind::sine:
        if (!std::isfinite(flaw.sine_amplitude))
            throw InvalidModel("sine amplitude must be finite");
        if (!(flaw.sine_period > 0.0) || !std::isfinite(flaw.sine_period))
            throw InvalidModel("sine period must be > 0");
        break;
    case FlawKind::sticky:
        if (!(flaw.repeat_prob >= 0.0 && flaw.repeat_prob <= 1.0))
            throw InvalidModel("repeat_prob must be in [0, 1]");
        break;
    }
}

AmplitudeSeries simulate_amplitudes(const DetectorModel& model,
                                    std::uint64_t count, std::uint64_t seed) {
    model.validate();
    if (count < 1) throw EmptyInput("simulate_amplitudes: count must be >= 1");

    Xoshiro256StarStar rng(seed);
    GaussianSampler gauss;
    const double two_pi = 6.28318530717958647692;
    const auto adc_max = static_cast<double>(model.adc_max());

    AmplitudeSeries series;
    series.values.reserve(count);
    series.source_label = "simulated";
    series.adc_bits = model.adc_bits;

    std::uint32_t prev = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
        if (model.flaw.kind == FlawKind::sticky && i > 0 &&
            rng.next_double() < model.flaw.repeat_prob) {
            series.values.push_back(prev);
            continue;
        }
        const auto photons = sample_poisson(rng, model.mean_photons);
        const double noise = model.noise_sigma * gauss.next(rng);
        double x = model.pedestal + model.gain * photons + noise;
        if (model.flaw.kind == FlawKind::drift) {
            x += model.flaw.drift_slope * static_cast<double>(i);
        } else if (model.flaw.kind == FlawKind::sine) {
            x += model.flaw.sine_amplitude *
                 std::sin(two_pi * static_cast<double>(i) / model.flaw.sine_period);
        }
        // round half away from zero, saturate at the ADC rails
        double v = std::round(x);
        v = std::clamp(v, 0.0, adc_max);
        prev = static_cast<std::uint32_t>(v);
        series.values.push_back(prev);
    }
    return series;
}

AmplitudeSeries parse_amplitude_file(const std::filesystem::path& path) {
    const std::string content = read_file(path);

    AmplitudeSeries series;
    series.source_label = path.filename().string();

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= content.size()) {
        const std::size_t eol = content.find('\n', pos);
        const std::size_t end = (eol == std::string::npos) ? content.size() : eol;
        ++line_no;
        std::string_view line(content.data() + pos, end - pos);
        pos = end + 1;

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        const auto first = line.find_first_not_of(" \t\r\v\f");
        if (first == std::string_view::npos) {
            if (eol == std::string::npos) break;
            continue;
        }
        const auto last = line.find_last_not_of(" \t\r\v\f");
        const std::string_view token = line.substr(first, last - first + 1);

        std::uint32_t value = 0;
        const auto [ptr, ec] =
            std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc{} || ptr != token.data() + token.size())
            throw FormatError(path.string() + ": line " + std::to_string(line_no) +
                              ": expected a non-negative integer, got \"" +
                              std::string(token) + "\"");
        series.values.push_back(value);
        if (eol == std::string::npos) break;
    }
    return series;
}

void write_amplitude_file(const AmplitudeSeries& a,
                          const std::filesystem::path& path) {
    std::string text;
    text.reserve(a.values.size() * 5);
    char buf[16];
    for (std::uint32_t v : a.values) {
        const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
        text.append(buf, ptr);
        text.push_back('\n');
    }
    write_file_atomic(path, text);
}

} // namespace flskit
