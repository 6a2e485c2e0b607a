#include "flskit/cli.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <string_view>

#include <CLI11.hpp>

#include "flskit/bitstream.hpp"
#include "flskit/file_util.hpp"
#include "flskit/fls.hpp"
#include "flskit/report.hpp"
#include "flskit/sources.hpp"
#include "flskit/version.hpp"
#include "flskit/visualize.hpp"

namespace flskit::cli {

namespace {

double parse_double_or_fail(std::string_view text, const std::string& what) {
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw FormatError("invalid " + what + ": \"" + std::string(text) + "\"");
    return value;
}

Flaw parse_flaw(const std::string& text) {
    if (text == "none") return Flaw::none();
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    const std::string rest =
        colon == std::string::npos ? std::string{} : text.substr(colon + 1);
    if (kind == "drift") return Flaw::drift(parse_double_or_fail(rest, "drift slope"));
    if (kind == "sticky")
        return Flaw::sticky(parse_double_or_fail(rest, "sticky probability"));
    if (kind == "sine") {
        const auto comma = rest.find(',');
        if (comma == std::string::npos)
            throw FormatError("sine flaw needs <amplitude>,<period>");
        return Flaw::sine(parse_double_or_fail(rest.substr(0, comma), "sine amplitude"),
                          parse_double_or_fail(rest.substr(comma + 1), "sine period"));
    }
    throw FormatError("unknown flaw \"" + text +
                      "\" (expected none|drift:<slope>|sine:<amp>,<period>|sticky:<prob>)");
}

// Detect lengths: "a..b", a single value, or a comma list of either.
std::vector<int> parse_detect_lengths(const std::string& text) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const std::string part =
            text.substr(pos, comma == std::string::npos ? std::string::npos
                                                        : comma - pos);
        if (part.empty())
            throw FormatError("invalid detect-length list \"" + text + "\"");
        const auto dots = part.find("..");
        auto parse_int = [&](std::string_view s) {
            int v = 0;
            const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc{} || ptr != s.data() + s.size() || v < 1)
                throw FormatError("invalid detect length \"" + std::string(s) + "\"");
            return v;
        };
        if (dots == std::string::npos) {
            out.push_back(parse_int(part));
        } else {
            const int lo = parse_int(std::string_view(part).substr(0, dots));
            const int hi = parse_int(std::string_view(part).substr(dots + 2));
            if (hi < lo)
                throw FormatError("empty detect-length range \"" + part + "\"");
            for (int n = lo; n <= hi; ++n) out.push_back(n);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::string format_g(double v, int precision = 6) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    return buf;
}

struct SimulateOpts {
    std::uint64_t count = 0;
    std::uint64_t seed = 0;
    double lambda = 10.0;
    double gain = 20.0;
    double pedestal = 100.0;
    double noise = 2.0;
    int adc_bits = 10;
    std::string flaw = "none";
    std::string out_path;
};

struct ExtractOpts {
    std::string method;
    std::string in_path;
    std::string out_path;
    std::string format = "packed";
};

struct TestOpts {
    std::string in_path;
    std::string tests = "amsd,mcpe,fls";
    std::string detect_lengths = "1..8";
    int mc_replicas = 100;
    std::uint64_t seed = 1;
    double z = 4.0;
    std::string json_path;
};

struct VisualizeOpts {
    std::string in_path;
    std::string out_path;
    std::string overlay;
    int detect_length = 1;
    std::string orientation = "horizontal";
    int scale = 1;
};

struct ExpectedOpts {
    int detect_length = 1;
    std::uint64_t bits = 1;
};

int run_simulate(const SimulateOpts& o, std::ostream& out) {
    DetectorModel model;
    model.mean_photons = o.lambda;
    model.gain = o.gain;
    model.pedestal = o.pedestal;
    model.noise_sigma = o.noise;
    model.adc_bits = o.adc_bits;
    model.flaw = parse_flaw(o.flaw);
    const AmplitudeSeries series = simulate_amplitudes(model, o.count, o.seed);
    write_amplitude_file(series, o.out_path);
    out << "wrote " << series.values.size() << " amplitudes to " << o.out_path
        << "\n";
    return kExitOk;
}

int run_extract(const ExtractOpts& o, std::ostream& out) {
    const AmplitudeSeries series = parse_amplitude_file(o.in_path);
    const Bitstream bits = o.method == "evenodd" ? extract_even_odd(series)
                                                 : extract_high_low(series);
    const auto format = o.format == "ascii" ? BitstreamFileFormat::ascii
                                            : BitstreamFileFormat::packed;
    write_bitstream_file(bits, o.out_path, format);
    out << "extracted " << bits.size() << " bits (" << o.method << ") to "
        << o.out_path << "\n";
    return kExitOk;
}

void print_summary(const TestReport& report, std::ostream& out) {
    auto verdict = [](bool pass) { return pass ? "PASS" : "FAIL"; };
    out << "source: " << report.meta.source_label << " (" << report.bit_length
        << " bits)\n";
    if (report.amsd) {
        if (report.amsd->result) {
            const auto& a = *report.amsd->result;
            out << "AMSD  mean=" << format_g(a.mean) << " std=" << format_g(a.std)
                << " z=" << format_g(a.z_mean) << "  " << verdict(a.pass) << "\n";
        } else {
            out << "AMSD  error: " << report.amsd->error << "  FAIL\n";
        }
    }
    if (report.mcpe) {
        if (report.mcpe->result) {
            const auto& m = *report.mcpe->result;
            out << "MCPE  pi_hat=" << format_g(m.device.pi_hat)
                << " z=" << format_g(m.z_device)
                << " (reference pi_hat=" << format_g(m.reference.pi_hat) << ")  "
                << verdict(m.pass) << "\n";
        } else {
            out << "MCPE  error: " << report.mcpe->error << "  FAIL\n";
        }
    }
    if (report.fls) {
        if (report.fls->result) {
            const auto& f = *report.fls->result;
            double max_z = 0.0;
            for (const auto& e : f.entries)
                max_z = std::max({max_z, std::abs(e.z_h), std::abs(e.z_v),
                                  std::abs(e.z_symmetry)});
            out << "FLS   " << f.entries.size() << " (symbol, n) pairs, max |z|="
                << format_g(max_z) << "  " << verdict(f.pass) << "\n";
        } else {
            out << "FLS   error: " << report.fls->error << "  FAIL\n";
        }
    }
    out << "overall: " << verdict(report.overall_pass) << "\n";
}

int run_test(const TestOpts& o, std::ostream& out) {
    const Bitstream bits = read_bitstream_file(o.in_path);

    SuiteConfig cfg;
    cfg.amsd_enabled = cfg.mcpe_enabled = cfg.fls_enabled = false;
    std::size_t pos = 0;
    while (pos <= o.tests.size()) {
        const auto comma = o.tests.find(',', pos);
        const std::string name =
            o.tests.substr(pos, comma == std::string::npos ? std::string::npos
                                                           : comma - pos);
        if (name == "amsd")
            cfg.amsd_enabled = true;
        else if (name == "mcpe")
            cfg.mcpe_enabled = true;
        else if (name == "fls")
            cfg.fls_enabled = true;
        else
            throw FormatError("unknown test \"" + name +
                              "\" (expected a subset of amsd,mcpe,fls)");
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    cfg.amsd_z_threshold = cfg.mcpe_z_threshold = o.z;
    cfg.mcpe_seed = o.seed;
    cfg.fls.n_set = parse_detect_lengths(o.detect_lengths);
    cfg.fls.mc_replicas = o.mc_replicas;
    cfg.fls.seed = o.seed;
    cfg.fls.z_threshold = o.z;

    SuiteMeta meta;
    meta.source_label = o.in_path;
    meta.extraction_method = "unknown";

    const TestReport report = run_suite(bits, cfg, meta);
    write_file_atomic(o.json_path, to_json(report));
    print_summary(report, out);
    return report.overall_pass ? kExitOk : kExitTestFailure;
}

int run_visualize(const VisualizeOpts& o, std::ostream& out) {
    const Bitstream bits = read_bitstream_file(o.in_path);
    RenderSpec spec;
    spec.scale = o.scale;
    std::vector<std::uint8_t> image;
    if (o.overlay.empty()) {
        image = render_square(stack(bits), spec);
    } else {
        const Symbol symbol = o.overlay == "one" ? Symbol::one : Symbol::zero;
        const Orientation orientation = o.orientation == "vertical"
                                            ? Orientation::vertical
                                            : Orientation::horizontal;
        image = render_line_overlay(bits, symbol, o.detect_length, orientation, spec);
        const LineCount count =
            orientation == Orientation::vertical
                ? count_vertical(bits, symbol, o.detect_length)
                : count_horizontal(bits, symbol, o.detect_length);
        out << "lines(" << o.overlay << ", n=" << o.detect_length << ", "
            << o.orientation << ") = " << format_g(count.count(), 12) << "\n";
    }
    write_file_atomic(o.out_path, image);
    out << "wrote " << o.out_path << "\n";
    return kExitOk;
}

int run_expected(const ExpectedOpts& o, std::ostream& out) {
    out << format_g(expected_lines(o.detect_length, o.bits), 12) << "\n";
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"randomness-quality toolkit: amplitude simulation, bit "
                 "extraction, AMSD/MCPE/FLS tests, and square visualization"};
    app.name(kToolName);
    auto version = std::string(kToolName) + " " + kVersion;
    app.set_version_flag("--version", version);
    app.require_subcommand(1);

    SimulateOpts sim;
    auto* sim_cmd =
        app.add_subcommand("simulate", "simulate detector amplitudes to a text file");
    sim_cmd->add_option("--count", sim.count, "number of samples")
        ->required()
        ->check(CLI::PositiveNumber);
    sim_cmd->add_option("--seed", sim.seed, "generator seed")->required();
    sim_cmd->add_option("--lambda", sim.lambda, "mean photons per pulse");
    sim_cmd->add_option("--gain", sim.gain, "ADC counts per photoelectron");
    sim_cmd->add_option("--pedestal", sim.pedestal, "baseline ADC counts");
    sim_cmd->add_option("--noise", sim.noise, "Gaussian noise sigma (counts)");
    sim_cmd->add_option("--adc-bits", sim.adc_bits, "ADC bit depth (8-16)");
    sim_cmd->add_option("--flaw", sim.flaw,
                        "none|drift:<slope>|sine:<amp>,<period>|sticky:<prob>");
    sim_cmd->add_option("--out", sim.out_path, "amplitude file to write")->required();

    ExtractOpts ext;
    auto* ext_cmd =
        app.add_subcommand("extract", "extract a bitstream from an amplitude file");
    ext_cmd->add_option("--method", ext.method, "extraction method")
        ->required()
        ->check(CLI::IsMember({"evenodd", "highlow"}));
    ext_cmd->add_option("--in", ext.in_path, "amplitude text file")->required();
    ext_cmd->add_option("--out", ext.out_path, "bitstream file to write")->required();
    ext_cmd->add_option("--format", ext.format, "bitstream file format")
        ->check(CLI::IsMember({"ascii", "packed"}));

    TestOpts tst;
    auto* tst_cmd =
        app.add_subcommand("test", "run the randomness test suite on a bitstream");
    tst_cmd->add_option("--in", tst.in_path, "bitstream file")->required();
    tst_cmd->add_option("--tests", tst.tests, "comma list from amsd,mcpe,fls");
    tst_cmd->add_option("--detect-lengths", tst.detect_lengths,
                        "FLS detect lengths, e.g. 1..8 or 2,3,5");
    tst_cmd->add_option("--mc-replicas", tst.mc_replicas,
                        "FLS Monte Carlo replicas")
        ->check(CLI::Range(2, 1000000));
    tst_cmd->add_option("--seed", tst.seed, "seed for reference generator");
    tst_cmd->add_option("--z", tst.z, "z-score threshold for every test")
        ->check(CLI::PositiveNumber);
    tst_cmd->add_option("--json", tst.json_path, "report file to write")->required();

    VisualizeOpts vis;
    auto* vis_cmd =
        app.add_subcommand("visualize", "render the stacked bitstream as a P6 image");
    vis_cmd->add_option("--in", vis.in_path, "bitstream file")->required();
    vis_cmd->add_option("--out", vis.out_path, "image file to write (.ppm)")
        ->required();
    auto* overlay_opt =
        vis_cmd->add_option("--overlay", vis.overlay, "highlight counted lines")
            ->check(CLI::IsMember({"zero", "one"}));
    auto* detect_opt = vis_cmd->add_option("--detect-length", vis.detect_length,
                                           "detect length for the overlay")
                           ->check(CLI::PositiveNumber);
    auto* orient_opt = vis_cmd->add_option("--orientation", vis.orientation,
                                           "overlay orientation")
                           ->check(CLI::IsMember({"horizontal", "vertical"}));
    overlay_opt->needs(detect_opt);
    detect_opt->needs(overlay_opt);
    orient_opt->needs(overlay_opt);
    vis_cmd->add_option("--scale", vis.scale, "pixels per cell")
        ->check(CLI::PositiveNumber);

    ExpectedOpts exp;
    auto* exp_cmd = app.add_subcommand(
        "expected", "print the expected fractional line count for a uniform stream");
    exp_cmd->add_option("--detect-length", exp.detect_length, "detect length n")
        ->required()
        ->check(CLI::PositiveNumber);
    exp_cmd->add_option("--bits", exp.bits, "bitstream length")
        ->required()
        ->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (sim_cmd->parsed()) return run_simulate(sim, out);
        if (ext_cmd->parsed()) return run_extract(ext, out);
        if (tst_cmd->parsed()) return run_test(tst, out);
        if (vis_cmd->parsed()) return run_visualize(vis, out);
        if (exp_cmd->parsed()) return run_expected(exp, out);
    } catch (const Error& e) {
        err << "flskit: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace flskit::cli
