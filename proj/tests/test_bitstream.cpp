#include <doctest.h>

#include <fstream>
#include <random>

#include "flskit/bitstream.hpp"
#include "flskit/file_util.hpp"
#include "test_support.hpp"

using namespace flskit;
using testutil::TempDir;

namespace {

AmplitudeSeries amps(std::vector<std::uint32_t> values) {
    AmplitudeSeries a;
    a.values = std::move(values);
    a.source_label = "test";
    return a;
}

} // namespace

TEST_CASE("high/low extraction follows the compare-and-skip rule") {
    CHECK(extract_high_low(amps({1, 2, 2, 1})) == Bitstream::from_string("10"));
    CHECK(extract_high_low(amps({5, 5, 5})).empty());

    // strictly increasing series of length k gives k-1 ones
    std::vector<std::uint32_t> inc;
    for (std::uint32_t i = 0; i < 40; ++i) inc.push_back(3 * i + 1);
    const Bitstream b = extract_high_low(amps(inc));
    CHECK(b.size() == 39);
    CHECK(b.popcount() == 39);

    CHECK_THROWS_AS(extract_high_low(amps({7})), EmptyInput);
    CHECK_THROWS_AS(extract_high_low(amps({})), EmptyInput);
}

TEST_CASE("high/low is invariant under strictly increasing transforms") {
    std::mt19937_64 gen(101);
    std::uniform_int_distribution<std::uint32_t> dist(0, 1000);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::uint32_t> v(200);
        for (auto& x : v) x = dist(gen);
        std::vector<std::uint32_t> mapped(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) mapped[i] = 3 * v[i] + 17;
        CHECK(extract_high_low(amps(v)) == extract_high_low(amps(mapped)));
    }
}

TEST_CASE("high/low output length plus equal pairs is len-1") {
    std::mt19937_64 gen(102);
    std::uniform_int_distribution<std::uint32_t> dist(0, 4); // many ties
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::uint32_t> v(150);
        for (auto& x : v) x = dist(gen);
        std::size_t equal_pairs = 0;
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i] == v[i - 1]) ++equal_pairs;
        CHECK(extract_high_low(amps(v)).size() + equal_pairs == v.size() - 1);
    }
}

TEST_CASE("even/odd extraction maps parity per sample") {
    CHECK(extract_even_odd(amps({4, 7, 0})) == Bitstream::from_string("101"));
    CHECK(extract_even_odd(amps({1, 3, 5, 7})) == Bitstream::from_string("0000"));
    CHECK(extract_even_odd(amps({2, 2, 2})) == Bitstream::from_string("111"));
    CHECK_THROWS_AS(extract_even_odd(amps({})), EmptyInput);
}

TEST_CASE("even/odd is invariant under adding an even constant") {
    std::mt19937_64 gen(103);
    std::uniform_int_distribution<std::uint32_t> dist(0, 100000);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::uint32_t> v(300);
        for (auto& x : v) x = dist(gen);
        std::vector<std::uint32_t> shifted(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) shifted[i] = v[i] + 4200;
        CHECK(extract_even_odd(amps(v)) == extract_even_odd(amps(shifted)));
    }
}

TEST_CASE("pack_bytes is MSB-first and drops the trailing partial group") {
    CHECK(pack_bytes(Bitstream::from_string("10000000")) ==
          std::vector<std::uint8_t>{128});
    CHECK(pack_bytes(Bitstream::from_string("0000000011111111")) ==
          std::vector<std::uint8_t>{0, 255});
    CHECK(pack_bytes(Bitstream::from_string("111111110000")) ==
          std::vector<std::uint8_t>{255});
    CHECK(pack_bytes(Bitstream::from_string("1010101")).empty());
    CHECK(pack_bytes(Bitstream()).empty());
}

TEST_CASE("pack_bytes reproduces the first 8*floor(len/8) bits") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Bitstream b = testutil::random_bits(277, seed);
        const auto bytes = pack_bytes(b);
        REQUIRE(bytes.size() == 34);
        for (std::size_t j = 0; j < bytes.size(); ++j)
            for (int k = 0; k < 8; ++k)
                CHECK(((bytes[j] >> (7 - k)) & 1u) ==
                      static_cast<unsigned>(b.get(8 * j + k)));
    }
}

TEST_CASE("for_each_run agrees with a naive bit loop") {
    std::mt19937_64 gen(104);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t len = gen() % 400;
        Bitstream b;
        // biased streams produce long runs that cross word boundaries
        const int bias = 1 + int(gen() % 9);
        for (std::size_t i = 0; i < len; ++i) b.push_back(int(gen() % 10) < bias);

        std::vector<std::pair<bool, std::size_t>> naive;
        std::size_t i = 0;
        while (i < b.size()) {
            const bool v = b.get(i);
            std::size_t j = i + 1;
            while (j < b.size() && b.get(j) == v) ++j;
            naive.emplace_back(v, j - i);
            i = j;
        }

        std::vector<std::pair<bool, std::size_t>> fast;
        for_each_run(b, [&](bool v, std::size_t r) { fast.emplace_back(v, r); });
        CHECK(naive == fast);
    }
}

TEST_CASE("complemented flips every bit and keeps length") {
    const Bitstream b = testutil::random_bits(131, 5);
    const Bitstream c = b.complemented();
    REQUIRE(c.size() == b.size());
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(c.get(i) == !b.get(i));
    CHECK(b.popcount() + c.popcount() == b.size());
}

TEST_CASE("ascii file round trip and exact contents") {
    TempDir tmp("ascii");
    const auto path = tmp.path("bits.txt");

    write_bitstream_file(Bitstream::from_string("10"), path,
                         BitstreamFileFormat::ascii);
    CHECK(read_file(path) == "10\n");
    CHECK(read_bitstream_file(path) == Bitstream::from_string("10"));
}

TEST_CASE("ascii parser skips whitespace and comments") {
    TempDir tmp("ascii2");
    const auto path = tmp.path("bits.txt");
    {
        std::ofstream f(path);
        f << "10 01 # comment\n";
    }
    CHECK(read_bitstream_file(path) == Bitstream::from_string("1001"));

    {
        std::ofstream f(path);
        f << "10x1\n";
    }
    CHECK_THROWS_AS(read_bitstream_file(path), FormatError);
}

TEST_CASE("packed format layout") {
    TempDir tmp("packed");
    const auto path = tmp.path("bits.bin");

    SUBCASE("empty stream gives a 13-byte header-only file") {
        write_bitstream_file(Bitstream(), path, BitstreamFileFormat::packed);
        const std::string raw = read_file(path);
        REQUIRE(raw.size() == 13);
        CHECK(raw.substr(0, 4) == "FLSB");
        CHECK(raw[4] == 1);
        for (int i = 5; i < 13; ++i) CHECK(raw[i] == 0);
        CHECK(read_bitstream_file(path).empty());
    }

    SUBCASE("count drives the final-byte truncation") {
        const std::string raw = std::string("FLSB") + '\x01' +
                                std::string("\x03\x00\x00\x00\x00\x00\x00\x00", 8) +
                                '\xa0'; // 0b1010'0000, count 3
        write_file_atomic(path, raw);
        CHECK(read_bitstream_file(path) == Bitstream::from_string("101"));
    }

    SUBCASE("declared count inconsistent with payload") {
        const std::string raw = std::string("FLSB") + '\x01' +
                                std::string("\x10\x00\x00\x00\x00\x00\x00\x00", 8) +
                                '\xff'; // declares 16 bits, one payload byte
        write_file_atomic(path, raw);
        CHECK_THROWS_AS(read_bitstream_file(path), FormatError);
    }

    SUBCASE("bad version") {
        const std::string raw = std::string("FLSB") + '\x02' +
                                std::string("\x00\x00\x00\x00\x00\x00\x00\x00", 8);
        write_file_atomic(path, raw);
        CHECK_THROWS_AS(read_bitstream_file(path), FormatError);
    }

    SUBCASE("missing file") {
        CHECK_THROWS_AS(read_bitstream_file(tmp.path("nope.bin")), IoError);
    }
}

TEST_CASE("file round trip identity for lengths 0..1000, both formats") {
    TempDir tmp("roundtrip");
    std::mt19937_64 gen(105);
    for (int trial = 0; trial < 120; ++trial) {
        const std::size_t len = gen() % 1001;
        const Bitstream b = testutil::random_bits(len, gen());
        for (auto format : {BitstreamFileFormat::ascii, BitstreamFileFormat::packed}) {
            const auto path =
                tmp.path("rt" + std::to_string(static_cast<int>(format)));
            write_bitstream_file(b, path, format);
            const Bitstream back = read_bitstream_file(path);
            REQUIRE(back.size() == b.size());
            CHECK(back == b);
        }
    }
    // boundary lengths exactly
    for (std::size_t len : {std::size_t{0}, std::size_t{1}, std::size_t{63},
                            std::size_t{64}, std::size_t{65}, std::size_t{1000}}) {
        const Bitstream b = testutil::random_bits(len, 999 + len);
        const auto path = tmp.path("edge");
        write_bitstream_file(b, path, BitstreamFileFormat::packed);
        CHECK(read_bitstream_file(path) == b);
        write_bitstream_file(b, path, BitstreamFileFormat::ascii);
        CHECK(read_bitstream_file(path) == b);
    }
}
