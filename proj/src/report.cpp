#include "flskit/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "flskit/version.hpp"

namespace flskit {

void SuiteConfig::validate() const {
    if (!amsd_enabled && !mcpe_enabled && !fls_enabled)
        throw InvalidConfig("suite: at least one test must be enabled");
    if (amsd_enabled && !(amsd_z_threshold > 0.0))
        throw InvalidConfig("suite: amsd z threshold must be > 0");
    if (mcpe_enabled && !(mcpe_z_threshold > 0.0))
        throw InvalidConfig("suite: mcpe z threshold must be > 0");
    if (fls_enabled) {
        if (!(fls.z_threshold > 0.0))
            throw InvalidConfig("suite: fls z threshold must be > 0");
        if (fls.n_set.empty()) throw InvalidConfig("suite: fls n_set is empty");
        for (int n : fls.n_set)
            if (n < 1) throw InvalidConfig("suite: fls detect lengths must be >= 1");
        if (fls.mc_replicas < 2)
            throw InvalidConfig("suite: fls mc_replicas must be >= 2");
        if (fls.symbols.empty()) throw InvalidConfig("suite: fls symbols is empty");
    }
}

TestReport run_suite(const Bitstream& b, const SuiteConfig& cfg,
                     const SuiteMeta& meta) {
    cfg.validate();

    TestReport report;
    report.meta = meta;
    report.bit_length = b.size();
    report.tool_version = std::string(kToolName) + " " + kVersion;
    report.config = cfg;

    bool overall = true;
    if (cfg.amsd_enabled) {
        TestOutcome<AmsdResult> outcome;
        try {
            outcome.result = run_amsd(b, cfg.amsd_z_threshold);
        } catch (const Error& e) {
            outcome.error = e.what();
        }
        overall = overall && outcome.passed();
        report.amsd = std::move(outcome);
    }
    if (cfg.mcpe_enabled) {
        TestOutcome<McpeResult> outcome;
        try {
            outcome.result = run_mcpe(b, cfg.mcpe_seed, cfg.mcpe_z_threshold);
        } catch (const Error& e) {
            outcome.error = e.what();
        }
        overall = overall && outcome.passed();
        report.mcpe = std::move(outcome);
    }
    if (cfg.fls_enabled) {
        TestOutcome<FlsResult> outcome;
        try {
            outcome.result = run_fls(b, cfg.fls);
        } catch (const Error& e) {
            outcome.error = e.what();
        }
        overall = overall && outcome.passed();
        report.fls = std::move(outcome);
    }
    report.overall_pass = overall;
    return report;
}

namespace {

void dump_number(std::string& out, double v) {
    if (!std::isfinite(v)) {
        out += "null"; // JSON has no inf/nan
        return;
    }
    char buf[40];
    const auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    out.append(buf, ptr);
}

void dump_string(std::string& out, const std::string& s) {
    out.push_back('"');
    for (char ch : s) {
        const auto c = static_cast<unsigned char>(ch);
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\b': out += "\\b"; break;
        case '\f': out += "\\f"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (c < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                out += buf;
            } else {
                out.push_back(ch);
            }
        }
    }
    out.push_back('"');
}

void dump_value(std::string& out, const nlohmann::json& j) {
    switch (j.type()) {
    case nlohmann::json::value_t::null: out += "null"; break;
    case nlohmann::json::value_t::boolean:
        out += j.get<bool>() ? "true" : "false";
        break;
    case nlohmann::json::value_t::number_integer:
        out += std::to_string(j.get<std::int64_t>());
        break;
    case nlohmann::json::value_t::number_unsigned:
        out += std::to_string(j.get<std::uint64_t>());
        break;
    case nlohmann::json::value_t::number_float:
        dump_number(out, j.get<double>());
        break;
    case nlohmann::json::value_t::string:
        dump_string(out, j.get<std::string>());
        break;
    case nlohmann::json::value_t::array: {
        out.push_back('[');
        bool first = true;
        for (const auto& item : j) {
            if (!first) out.push_back(',');
            first = false;
            dump_value(out, item);
        }
        out.push_back(']');
        break;
    }
    case nlohmann::json::value_t::object: {
        // nlohmann objects are std::map-backed, so iteration is key-sorted
        out.push_back('{');
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out.push_back(',');
            first = false;
            dump_string(out, it.key());
            out.push_back(':');
            dump_value(out, it.value());
        }
        out.push_back('}');
        break;
    }
    default:
        out += "null";
        break;
    }
}

const char* symbol_name(Symbol s) {
    return s == Symbol::one ? "one" : "zero";
}

nlohmann::json fls_config_json(const FlsConfig& c) {
    nlohmann::json j;
    j["n_set"] = c.n_set;
    auto symbols = nlohmann::json::array();
    for (Symbol s : c.symbols) symbols.push_back(symbol_name(s));
    j["symbols"] = symbols;
    j["mc_replicas"] = c.mc_replicas;
    j["seed"] = c.seed;
    j["z_threshold"] = c.z_threshold;
    return j;
}

nlohmann::json config_json(const SuiteConfig& cfg) {
    nlohmann::json j;
    auto enabled = nlohmann::json::array();
    if (cfg.amsd_enabled) {
        enabled.push_back("amsd");
        j["amsd"] = {{"z_threshold", cfg.amsd_z_threshold}};
    }
    if (cfg.mcpe_enabled) {
        enabled.push_back("mcpe");
        j["mcpe"] = {{"seed", cfg.mcpe_seed}, {"z_threshold", cfg.mcpe_z_threshold}};
    }
    if (cfg.fls_enabled) {
        enabled.push_back("fls");
        j["fls"] = fls_config_json(cfg.fls);
    }
    j["enabled"] = enabled;
    return j;
}

nlohmann::json pi_estimate_json(const PiEstimate& e) {
    return {{"pi_hat", e.pi_hat},
            {"n_inside", e.n_inside},
            {"n_total", e.n_total},
            {"sigma", e.sigma}};
}

template <class T, class F>
nlohmann::json outcome_json(const TestOutcome<T>& outcome, F&& result_json) {
    if (!outcome.result.has_value()) return {{"error", outcome.error}};
    return result_json(*outcome.result);
}

} // namespace

nlohmann::json report_to_json_value(const TestReport& r) {
    nlohmann::json j;
    j["meta"] = {{"source_label", r.meta.source_label},
                 {"extraction_method", r.meta.extraction_method},
                 {"bit_length", r.bit_length},
                 {"tool_version", r.tool_version},
                 {"config", config_json(r.config)}};

    if (r.amsd) {
        j["amsd"] = outcome_json(*r.amsd, [](const AmsdResult& a) {
            return nlohmann::json{{"mean", a.mean},
                                  {"std", a.std},
                                  {"n_bits", a.n_bits},
                                  {"z_mean", a.z_mean},
                                  {"pass", a.pass}};
        });
    }
    if (r.mcpe) {
        j["mcpe"] = outcome_json(*r.mcpe, [](const McpeResult& m) {
            return nlohmann::json{{"device", pi_estimate_json(m.device)},
                                  {"reference", pi_estimate_json(m.reference)},
                                  {"z_device", m.z_device},
                                  {"pass", m.pass}};
        });
    }
    if (r.fls) {
        j["fls"] = outcome_json(*r.fls, [](const FlsResult& f) {
            nlohmann::json entries = nlohmann::json::array();
            for (const FlsEntry& e : f.entries) {
                entries.push_back({{"symbol", symbol_name(e.symbol)},
                                   {"n", e.n},
                                   {"horizontal", e.horizontal.count()},
                                   {"vertical", e.vertical.count()},
                                   {"expected", e.expected},
                                   {"mc_sigma", e.mc_sigma},
                                   {"z_h", e.z_h},
                                   {"z_v", e.z_v},
                                   {"z_symmetry", e.z_symmetry}});
            }
            return nlohmann::json{{"entries", entries},
                                  {"config", fls_config_json(f.config)},
                                  {"pass", f.pass}};
        });
    }
    j["overall_pass"] = r.overall_pass;
    return j;
}

std::string canonical_json(const nlohmann::json& j) {
    std::string out;
    dump_value(out, j);
    return out;
}

std::string to_json(const TestReport& r) {
    return canonical_json(report_to_json_value(r));
}

} // namespace flskit
