#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "flskit/bitstream.hpp"

namespace flskit {

enum class FlawKind : std::uint8_t { none, drift, sine, sticky };

/// Optional deterministic defect injected into the simulated amplitude
/// series; gives the test suite something it should flag.
struct Flaw {
    FlawKind kind = FlawKind::none;
    double drift_slope = 0.0;     // counts per sample
    double sine_amplitude = 0.0;  // counts
    double sine_period = 1.0;     // samples
    double repeat_prob = 0.0;     // probability of repeating the previous sample

    static Flaw none() { return {}; }
    static Flaw drift(double slope) {
        Flaw f;
        f.kind = FlawKind::drift;
        f.drift_slope = slope;
        return f;
    }
    static Flaw sine(double amplitude, double period) {
        Flaw f;
        f.kind = FlawKind::sine;
        f.sine_amplitude = amplitude;
        f.sine_period = period;
        return f;
    }
    static Flaw sticky(double prob) {
        Flaw f;
        f.kind = FlawKind::sticky;
        f.repeat_prob = prob;
        return f;
    }
};

/// Parametric stand-in for a pulsed photodetector chain: Poisson photons
/// times linear gain, plus pedestal and Gaussian noise, digitized to
/// adc_bits. Amplitude = round(pedestal + gain*k + N(0, noise_sigma) + flaw),
/// clamped to [0, 2^adc_bits - 1].
struct DetectorModel {
    double mean_photons = 10.0; // Poisson lambda per pulse
    double gain = 20.0;         // ADC counts per photoelectron
    double pedestal = 100.0;    // ADC counts
    double noise_sigma = 2.0;   // ADC counts
    int adc_bits = 10;
    Flaw flaw;

    /// Throws InvalidModel when a parameter is out of range or the mean
    /// signal does not fit the ADC range.
    void validate() const;

    std::uint32_t adc_max() const {
        return (std::uint32_t{1} << adc_bits) - 1;
    }
};

/// Deterministic for fixed (model, count, seed).
AmplitudeSeries simulate_amplitudes(const DetectorModel& model,
                                    std::uint64_t count, std::uint64_t seed);

/// One non-negative decimal integer per line; blank lines skipped; '#' starts
/// a comment to end of line. FormatError messages carry the line number.
AmplitudeSeries parse_amplitude_file(const std::filesystem::path& path);

/// One integer per line, newline-terminated; parse(write(a)) == a.
void write_amplitude_file(const AmplitudeSeries& a,
                          const std::filesystem::path& path);

} // namespace flskit
