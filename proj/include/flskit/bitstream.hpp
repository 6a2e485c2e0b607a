#pragma once

#include <bit>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flskit/errors.hpp"

namespace flskit {

/// Ordered series of non-negative integer ADC amplitudes plus source metadata.
struct AmplitudeSeries {
    std::vector<std::uint32_t> values;
    std::string source_label;
    int adc_bits = 0; // digitizer bit depth, informational

    std::size_t size() const { return values.size(); }
};

/// A sequence of bits with exact length. Bits are stored packed, 64 per word,
/// most significant bit first; unused tail bits of the last word are kept zero.
class Bitstream {
public:
    Bitstream() = default;

    static Bitstream from_string(std::string_view bits01);

    void push_back(bool bit) {
        if ((len_ & 63u) == 0) words_.push_back(0);
        if (bit) words_[len_ >> 6] |= (std::uint64_t{1} << (63 - (len_ & 63u)));
        ++len_;
    }

    bool get(std::size_t i) const {
        return (words_[i >> 6] >> (63 - (i & 63u))) & 1u;
    }

    std::size_t size() const { return len_; }
    bool empty() const { return len_ == 0; }

    std::span<const std::uint64_t> words() const { return words_; }

    /// Count of set bits.
    std::uint64_t popcount() const;

    Bitstream complemented() const;

    friend bool operator==(const Bitstream& a, const Bitstream& b) {
        return a.len_ == b.len_ && a.words_ == b.words_;
    }

    void reserve_bits(std::size_t n) { words_.reserve((n + 63) / 64); }

    /// Append `count` bits taken from `word`, most significant first.
    void append_word_prefix(std::uint64_t word, unsigned count);

private:
    std::vector<std::uint64_t> words_;
    std::size_t len_ = 0;
};

/// Visits maximal runs of equal bits as f(bit_value, run_length), left to
/// right. Runs are extended a word at a time via countl_one/countl_zero.
template <class F>
void for_each_run(const Bitstream& b, F&& f) {
    const std::size_t len = b.size();
    const auto words = b.words();
    std::size_t pos = 0;
    while (pos < len) {
        const bool v = (words[pos >> 6] >> (63 - (pos & 63u))) & 1u;
        std::size_t run = 0;
        std::size_t p = pos;
        while (p < len) {
            const std::uint64_t w = words[p >> 6] << (p & 63u);
            unsigned avail = 64 - static_cast<unsigned>(p & 63u);
            if (len - p < avail) avail = static_cast<unsigned>(len - p);
            unsigned c = v ? static_cast<unsigned>(std::countl_one(w))
                           : static_cast<unsigned>(std::countl_zero(w));
            if (c > avail) c = avail;
            run += c;
            p += c;
            if (c < avail) break; // run ended inside this word
        }
        f(v, run);
        pos += run;
    }
}

/// High/Low extraction: 1 for a rise, 0 for a fall, equal neighbours skipped.
Bitstream extract_high_low(const AmplitudeSeries& amps);

/// Even/Odd extraction: even amplitude -> 1, odd -> 0, one bit per sample.
Bitstream extract_even_odd(const AmplitudeSeries& amps);

/// Packs consecutive 8-bit groups MSB-first; a trailing group shorter than
/// 8 bits is discarded.
std::vector<std::uint8_t> pack_bytes(const Bitstream& b);

enum class BitstreamFileFormat { ascii, packed };

/// ascii: '0'/'1' characters, line break every 64 bits.
/// packed: "FLSB" magic, version byte 1, u64 little-endian bit count,
/// MSB-first packed payload with a zero-padded final byte.
void write_bitstream_file(const Bitstream& b, const std::filesystem::path& path,
                          BitstreamFileFormat format);

/// Auto-detects the packed format by its magic bytes, otherwise parses ascii
/// ('0'/'1', whitespace ignored, '#' starts a comment to end of line).
Bitstream read_bitstream_file(const std::filesystem::path& path);

} // namespace flskit
