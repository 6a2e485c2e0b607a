#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "flskit/bitstream.hpp"
#include "flskit/cli.hpp"
#include "flskit/file_util.hpp"
#include "flskit/fls.hpp"
#include "flskit/visualize.hpp"
#include "test_support.hpp"

using namespace flskit;
using testutil::TempDir;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("expected subcommand prints the law's value") {
    const CliResult r =
        run_cli({"expected", "--detect-length", "2", "--bits", "16"});
    CHECK(r.code == 0);
    CHECK(r.out == "3\n");

    const CliResult big =
        run_cli({"expected", "--detect-length", "1", "--bits", "10000000"});
    CHECK(big.code == 0);
    CHECK(big.out == "5000000\n");
}

TEST_CASE("full pipeline: simulate, extract, test, visualize") {
    TempDir tmp("pipeline");
    const auto amp = tmp.path("amp.txt").string();
    const auto bits = tmp.path("bits.bin").string();
    const auto json = tmp.path("report.json").string();
    const auto img = tmp.path("square.ppm").string();

    CHECK(run_cli({"simulate", "--count", "20000", "--seed", "11", "--out", amp})
              .code == 0);
    CHECK(run_cli({"extract", "--method", "evenodd", "--in", amp, "--out", bits})
              .code == 0);

    const CliResult t = run_cli({"test", "--in", bits, "--tests", "amsd,fls",
                                 "--detect-lengths", "1..4", "--mc-replicas",
                                 "40", "--seed", "3", "--json", json});
    CHECK(t.code == 0);
    CHECK(t.out.find("overall: PASS") != std::string::npos);
    CHECK(std::filesystem::exists(json));

    const CliResult v = run_cli({"visualize", "--in", bits, "--out", img});
    CHECK(v.code == 0);
    const Bitstream loaded = read_bitstream_file(bits);
    CHECK(read_file(img) ==
          std::string(reinterpret_cast<const char*>(
                          render_square(stack(loaded), {}).data()),
                      render_square(stack(loaded), {}).size()));
}

TEST_CASE("identical argv produces byte-identical outputs") {
    TempDir tmp("determinism");
    const auto amp1 = tmp.path("a1.txt").string();
    const auto amp2 = tmp.path("a2.txt").string();
    CHECK(run_cli({"simulate", "--count", "5000", "--seed", "21", "--flaw",
                   "sine:5,100", "--out", amp1})
              .code == 0);
    CHECK(run_cli({"simulate", "--count", "5000", "--seed", "21", "--flaw",
                   "sine:5,100", "--out", amp2})
              .code == 0);
    CHECK(read_file(amp1) == read_file(amp2));

    const auto b1 = tmp.path("b1.bin").string();
    const auto b2 = tmp.path("b2.bin").string();
    CHECK(run_cli({"extract", "--method", "highlow", "--in", amp1, "--out", b1})
              .code == 0);
    CHECK(run_cli({"extract", "--method", "highlow", "--in", amp2, "--out", b2})
              .code == 0);
    CHECK(read_file(b1) == read_file(b2));

    const auto j1 = tmp.path("r1.json").string();
    const auto j2 = tmp.path("r2.json").string();
    const CliResult t1 = run_cli({"test", "--in", b1, "--tests", "amsd,fls",
                                  "--detect-lengths", "1..3", "--mc-replicas",
                                  "30", "--seed", "3", "--json", j1});
    const CliResult t2 = run_cli({"test", "--in", b2, "--tests", "amsd,fls",
                                  "--detect-lengths", "1..3", "--mc-replicas",
                                  "30", "--seed", "3", "--json", j2});
    CHECK(t1.code == t2.code);
    CHECK(read_file(j1) == read_file(j2));
}

TEST_CASE("failing suite exits 1 and still writes the report") {
    TempDir tmp("fail");
    const auto bits = tmp.path("alt.txt").string();
    {
        std::ofstream f(bits);
        for (int i = 0; i < 2000; ++i) f << (i % 2 == 0 ? '1' : '0');
    }
    const auto json = tmp.path("report.json").string();
    const CliResult t = run_cli({"test", "--in", bits, "--tests", "amsd,fls",
                                 "--detect-lengths", "1..3", "--mc-replicas",
                                 "30", "--seed", "4", "--json", json});
    CHECK(t.code == 1);
    CHECK(t.out.find("overall: FAIL") != std::string::npos);
    CHECK(std::filesystem::exists(json));
}

TEST_CASE("usage and format errors exit 2 and write nothing") {
    TempDir tmp("usage");
    const auto missing = tmp.path("missing.txt").string();
    const auto out = tmp.path("out.bin").string();

    SUBCASE("unreadable input") {
        const CliResult r = run_cli(
            {"extract", "--method", "evenodd", "--in", missing, "--out", out});
        CHECK(r.code == 2);
        CHECK_FALSE(r.err.empty());
        CHECK_FALSE(std::filesystem::exists(out));
    }
    SUBCASE("malformed amplitude file") {
        const auto amp = tmp.path("bad.txt").string();
        std::ofstream(amp) << "12\nbogus\n";
        const CliResult r = run_cli(
            {"extract", "--method", "evenodd", "--in", amp, "--out", out});
        CHECK(r.code == 2);
        CHECK(r.err.find("line 2") != std::string::npos);
        CHECK_FALSE(std::filesystem::exists(out));
    }
    SUBCASE("unknown flag") {
        const CliResult r = run_cli({"simulate", "--count", "10", "--seed", "1",
                                     "--out", out, "--bogus"});
        CHECK(r.code == 2);
        CHECK_FALSE(std::filesystem::exists(out));
    }
    SUBCASE("unknown test name") {
        const auto bits = tmp.path("b.txt").string();
        std::ofstream(bits) << "0101";
        const auto json = tmp.path("r.json").string();
        const CliResult r =
            run_cli({"test", "--in", bits, "--tests", "amsd,bogus", "--json", json});
        CHECK(r.code == 2);
        CHECK_FALSE(std::filesystem::exists(json));
    }
    SUBCASE("bad flaw spec") {
        const CliResult r = run_cli({"simulate", "--count", "10", "--seed", "1",
                                     "--flaw", "wobble:3", "--out", out});
        CHECK(r.code == 2);
        CHECK_FALSE(std::filesystem::exists(out));
    }
    SUBCASE("missing subcommand") {
        CHECK(run_cli({}).code == 2);
    }
    SUBCASE("invalid model via flags") {
        const CliResult r = run_cli({"simulate", "--count", "10", "--seed", "1",
                                     "--lambda", "100", "--out", out});
        CHECK(r.code == 2); // mean signal exceeds the 10-bit range
        CHECK_FALSE(std::filesystem::exists(out));
    }
}

TEST_CASE("help exits 0") {
    CHECK(run_cli({"--help"}).code == 0);
    CHECK(run_cli({"test", "--help"}).code == 0);
}

TEST_CASE("visualize overlay reports the line count") {
    TempDir tmp("overlay");
    const auto bits = tmp.path("b.txt").string();
    std::ofstream(bits) << "0000";
    const auto img = tmp.path("o.ppm").string();
    const CliResult r =
        run_cli({"visualize", "--in", bits, "--out", img, "--overlay", "zero",
                 "--detect-length", "2", "--orientation", "horizontal"});
    CHECK(r.code == 0);
    CHECK(r.out.find("= 2") != std::string::npos); // 4 zeros at n=2 -> 2 lines
    CHECK(std::filesystem::exists(img));

    // --detect-length without --overlay is a usage error
    const CliResult bad =
        run_cli({"visualize", "--in", bits, "--out", img, "--detect-length", "2"});
    CHECK(bad.code == 2);
}
