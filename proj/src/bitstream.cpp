#include "flskit/bitstream.hpp"

#include <bit>
#include <cstring>

#include "flskit/file_util.hpp"

namespace flskit {

Bitstream Bitstream::from_string(std::string_view bits01) {
    Bitstream b;
    b.reserve_bits(bits01.size());
    for (char c : bits01) {
        if (c == '0')
            b.push_back(false);
        else if (c == '1')
            b.push_back(true);
        else
            throw FormatError("from_string: character is not '0' or '1'");
    }
    return b;
}

std::uint64_t Bitstream::popcount() const {
    std::uint64_t total = 0;
    for (std::uint64_t w : words_) total += static_cast<std::uint64_t>(std::popcount(w));
    return total;
}

Bitstream Bitstream::complemented() const {
    Bitstream out;
    out.len_ = len_;
    out.words_.reserve(words_.size());
    for (std::uint64_t w : words_) out.words_.push_back(~w);
    // keep the unused tail zeroed
    if (!out.words_.empty() && (len_ & 63u) != 0)
        out.words_.back() &= ~std::uint64_t{0} << (64 - (len_ & 63u));
    return out;
}

void Bitstream::append_word_prefix(std::uint64_t word, unsigned count) {
    if (count == 0) return;
    if (count < 64) word &= ~std::uint64_t{0} << (64 - count);
    const unsigned off = static_cast<unsigned>(len_ & 63u);
    if (off == 0) {
        words_.push_back(word);
    } else {
        words_.back() |= word >> off;
        if (count > 64 - off) words_.push_back(word << (64 - off));
    }
    len_ += count;
}

Bitstream extract_high_low(const AmplitudeSeries& amps) {
    if (amps.values.size() < 2)
        throw EmptyInput("extract_high_low: need at least 2 amplitudes");
    Bitstream b;
    b.reserve_bits(amps.values.size() - 1);
    for (std::size_t i = 1; i < amps.values.size(); ++i) {
        const std::uint32_t prev = amps.values[i - 1];
        const std::uint32_t cur = amps.values[i];
        if (cur > prev)
            b.push_back(true);
        else if (cur < prev)
            b.push_back(false);
        // equal: skip
    }
    return b;
}

Bitstream extract_even_odd(const AmplitudeSeries& amps) {
    if (amps.values.empty())
        throw EmptyInput("extract_even_odd: no amplitudes");
    Bitstream b;
    b.reserve_bits(amps.values.size());
    for (std::uint32_t v : amps.values) b.push_back((v & 1u) == 0);
    return b;
}

std::vector<std::uint8_t> pack_bytes(const Bitstream& b) {
    const std::size_t n_bytes = b.size() / 8;
    std::vector<std::uint8_t> out(n_bytes);
    const auto words = b.words();
    for (std::size_t j = 0; j < n_bytes; ++j)
        out[j] = static_cast<std::uint8_t>(words[j >> 3] >> (8 * (7 - (j & 7u))));
    return out;
}

namespace {

constexpr std::uint8_t kMagic[4] = {0x46, 0x4C, 0x53, 0x42}; // "FLSB"
constexpr std::uint8_t kPackedVersion = 1;
constexpr std::size_t kHeaderSize = 13; // magic + version + u64 count

std::vector<std::uint8_t> encode_packed(const Bitstream& b) {
    const std::uint64_t count = b.size();
    const std::size_t payload = (b.size() + 7) / 8;
    std::vector<std::uint8_t> bytes;
    bytes.reserve(kHeaderSize + payload);
    bytes.insert(bytes.end(), std::begin(kMagic), std::end(kMagic));
    bytes.push_back(kPackedVersion);
    for (int i = 0; i < 8; ++i)
        bytes.push_back(static_cast<std::uint8_t>(count >> (8 * i)));
    const auto words = b.words();
    for (std::size_t j = 0; j < payload; ++j)
        bytes.push_back(static_cast<std::uint8_t>(words[j >> 3] >> (8 * (7 - (j & 7u)))));
    return bytes;
}

std::string encode_ascii(const Bitstream& b) {
    std::string text;
    text.reserve(b.size() + b.size() / 64 + 1);
    for (std::size_t i = 0; i < b.size(); ++i) {
        text.push_back(b.get(i) ? '1' : '0');
        if ((i + 1) % 64 == 0) text.push_back('\n');
    }
    if (!b.empty() && b.size() % 64 != 0) text.push_back('\n');
    return text;
}

Bitstream decode_packed(const std::string& bytes) {
    if (bytes.size() < kHeaderSize)
        throw FormatError("packed bitstream: truncated header");
    if (static_cast<std::uint8_t>(bytes[4]) != kPackedVersion)
        throw FormatError("packed bitstream: unsupported version " +
                          std::to_string(static_cast<unsigned>(
                              static_cast<std::uint8_t>(bytes[4]))));
    std::uint64_t count = 0;
    for (int i = 0; i < 8; ++i)
        count |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(bytes[5 + i]))
                 << (8 * i);
    const std::uint64_t expected_payload = count / 8 + (count % 8 != 0 ? 1 : 0);
    const std::uint64_t actual_payload = bytes.size() - kHeaderSize;
    if (actual_payload != expected_payload)
        throw FormatError("packed bitstream: payload holds " +
                          std::to_string(actual_payload) + " bytes but header declares " +
                          std::to_string(count) + " bits");
    Bitstream b;
    b.reserve_bits(count);
    std::uint64_t remaining = count;
    for (std::size_t j = 0; remaining > 0; ++j) {
        const auto byte = static_cast<std::uint8_t>(bytes[kHeaderSize + j]);
        const unsigned take = remaining >= 8 ? 8u : static_cast<unsigned>(remaining);
        b.append_word_prefix(static_cast<std::uint64_t>(byte) << 56, take);
        remaining -= take;
    }
    return b;
}

Bitstream decode_ascii(const std::string& text) {
    Bitstream b;
    std::size_t line = 1;
    bool in_comment = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '\n') {
            ++line;
            in_comment = false;
            continue;
        }
        if (in_comment) continue;
        if (c == '#') {
            in_comment = true;
            continue;
        }
        if (c == '0')
            b.push_back(false);
        else if (c == '1')
            b.push_back(true);
        else if (c != ' ' && c != '\t' && c != '\r' && c != '\v' && c != '\f')
            throw FormatError("ascii bitstream: invalid character '" +
                              std::string(1, c) + "' at line " + std::to_string(line));
    }
    return b;
}

} // namespace

void write_bitstream_file(const Bitstream& b, const std::filesystem::path& path,
                          BitstreamFileFormat format) {
    if (format == BitstreamFileFormat::packed) {
        write_file_atomic(path, encode_packed(b));
    } else {
        write_file_atomic(path, encode_ascii(b));
    }
}

Bitstream read_bitstream_file(const std::filesystem::path& path) {
    const std::string bytes = read_file(path);
    if (bytes.size() >= 4 && std::memcmp(bytes.data(), kMagic, 4) == 0)
        return decode_packed(bytes);
    return decode_ascii(bytes);
}

} // namespace flskit
