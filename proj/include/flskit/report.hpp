#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "flskit/amsd.hpp"
#include "flskit/bitstream.hpp"
#include "flskit/fls.hpp"
#include "flskit/mcpe.hpp"

namespace flskit {

enum class TestKind : std::uint8_t { amsd, mcpe, fls };

struct SuiteConfig {
    bool amsd_enabled = true;
    bool mcpe_enabled = true;
    bool fls_enabled = true;

    double amsd_z_threshold = 4.0;
    std::uint64_t mcpe_seed = 1;
    double mcpe_z_threshold = 4.0;
    FlsConfig fls;

    /// Throws InvalidConfig when no test is enabled or a threshold is not
    /// positive.
    void validate() const;
};

struct SuiteMeta {
    std::string source_label;
    std::string extraction_method = "unknown";
};

/// Outcome of one test: either a result or the error message that downgraded
/// it (the error still fails the suite).
template <class T>
struct TestOutcome {
    std::optional<T> result;
    std::string error;

    bool ran() const { return result.has_value(); }
    bool passed() const { return result.has_value() && result->pass; }
};

struct TestReport {
    SuiteMeta meta;
    std::uint64_t bit_length = 0;
    std::string tool_version;
    SuiteConfig config;
    std::optional<TestOutcome<AmsdResult>> amsd;
    std::optional<TestOutcome<McpeResult>> mcpe;
    std::optional<TestOutcome<FlsResult>> fls;
    bool overall_pass = false;
};

/// Runs the enabled tests; per-test errors become reported entries rather
/// than throwing, and fail the suite. Deterministic for fixed (b, cfg).
TestReport run_suite(const Bitstream& b, const SuiteConfig& cfg,
                     const SuiteMeta& meta = {});

/// Canonical serialization of any JSON value: keys sorted, floats rendered
/// with up to 12 significant digits via to_chars (locale independent),
/// non-finite floats emitted as null.
std::string canonical_json(const nlohmann::json& j);

nlohmann::json report_to_json_value(const TestReport& r);

/// Canonical JSON document for the report; byte-identical across runs for
/// identical inputs.
std::string to_json(const TestReport& r);

} // namespace flskit
