#include "flskit/fls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "flskit/rng.hpp"

namespace flskit {

namespace {

std::uint64_t ceil_isqrt(std::uint64_t length) {
    auto m = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(length)));
    while (m > 0 && (m - 1) * (m - 1) >= length) --m;
    while (m * m < length) ++m;
    return m;
}

double safe_z(double delta, double sigma) {
    if (sigma > 0.0) return delta / sigma;
    if (delta == 0.0) return 0.0;
    return std::copysign(std::numeric_limits<double>::infinity(), delta);
}

// Accumulates qualifying-run numerators for every (symbol, detect length)
// pair in one pass: a maximal run of length r adds r units at each n <= r.
class LineTally {
public:
    explicit LineTally(const std::vector<int>& n_sorted) : ns_(n_sorted) {
        units_[0].assign(ns_.size(), 0);
        units_[1].assign(ns_.size(), 0);
    }

    void add_run(bool value, std::uint64_t run) {
        auto& u = units_[value ? 1 : 0];
        for (std::size_t i = 0; i < ns_.size(); ++i) {
            if (run < static_cast<std::uint64_t>(ns_[i])) break; // ns_ ascending
            u[i] += run;
        }
    }

    std::uint64_t units(Symbol s, std::size_t n_index) const {
        return units_[s == Symbol::one ? 1 : 0][n_index];
    }

private:
    std::vector<int> ns_;
    std::vector<std::uint64_t> units_[2];
};

// Column-read order of the stacked square with nothing cells dropped,
// i.e. the bit sequence count_vertical scans.
Bitstream vertical_sequence(const Bitstream& b) {
    const std::size_t m = ceil_isqrt(b.size());
    const std::size_t len = b.size();
    Bitstream out;
    out.reserve_bits(len);
    for (std::size_t c = m; c-- > 0;) {
        for (std::size_t r = 0; r < m; ++r) {
            const std::size_t idx = r * m + c;
            if (idx < len) out.push_back(b.get(idx));
        }
    }
    return out;
}

std::vector<int> normalized_n_set(const std::vector<int>& n_set) {
    std::vector<int> ns = n_set;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    return ns;
}

} // namespace

std::uint64_t pad_length(std::uint64_t length) {
    if (length < 1) throw InvalidLength("pad_length: length must be >= 1");
    const std::uint64_t m = ceil_isqrt(length);
    return m * m;
}

PaddedSquare stack(const Bitstream& b) {
    if (b.empty()) throw EmptyInput("stack: empty bitstream");
    PaddedSquare s;
    s.side = ceil_isqrt(b.size());
    s.real_bits = b.size();
    s.cells.assign(s.side * s.side, Cell::nothing);
    for (std::size_t i = 0; i < b.size(); ++i) s.cells[i] = cell_from_bit(b.get(i));
    return s;
}

PaddedSquare rotate_ccw(const PaddedSquare& s) {
    PaddedSquare out;
    out.side = s.side;
    out.real_bits = s.real_bits;
    out.cells.resize(s.cells.size());
    const std::size_t m = s.side;
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c)
            out.cells[r * m + c] = s.cells[c * m + (m - 1 - r)];
    return out;
}

std::vector<Cell> unstack(const PaddedSquare& s) {
    return s.cells;
}

std::uint64_t count_line_units(std::span<const Cell> cells, Symbol symbol, int n) {
    if (n < 1) throw InvalidDetectLength("count_lines: detect length must be >= 1");
    const auto threshold = static_cast<std::uint64_t>(n);
    const Cell want = symbol == Symbol::one ? Cell::one : Cell::zero;

    std::uint64_t units = 0;
    Cell current = Cell::nothing; // no open run
    std::uint64_t run = 0;
    for (Cell c : cells) {
        if (c == Cell::nothing) continue; // transparent
        if (c == current) {
            ++run;
        } else {
            if (current == want && run >= threshold) units += run;
            current = c;
            run = 1;
        }
    }
    if (current == want && run >= threshold) units += run;
    return units;
}

double count_lines(std::span<const Cell> cells, Symbol symbol, int n) {
    return static_cast<double>(count_line_units(cells, symbol, n)) /
           static_cast<double>(n);
}

LineCount count_horizontal(const Bitstream& b, Symbol symbol, int n) {
    if (b.empty()) throw EmptyInput("count_horizontal: empty bitstream");
    if (n < 1)
        throw InvalidDetectLength("count_horizontal: detect length must be >= 1");
    const bool want = symbol_bit(symbol);
    const auto threshold = static_cast<std::uint64_t>(n);
    std::uint64_t units = 0;
    for_each_run(b, [&](bool v, std::uint64_t r) {
        if (v == want && r >= threshold) units += r;
    });
    return LineCount{symbol, n, Orientation::horizontal, units};
}

LineCount count_vertical(const Bitstream& b, Symbol symbol, int n) {
    if (b.empty()) throw EmptyInput("count_vertical: empty bitstream");
    if (n < 1)
        throw InvalidDetectLength("count_vertical: detect length must be >= 1");
    const Bitstream seq = vertical_sequence(b);
    const bool want = symbol_bit(symbol);
    const auto threshold = static_cast<std::uint64_t>(n);
    std::uint64_t units = 0;
    for_each_run(seq, [&](bool v, std::uint64_t r) {
        if (v == want && r >= threshold) units += r;
    });
    return LineCount{symbol, n, Orientation::vertical, units};
}

double expected_lines(int n, std::uint64_t length) {
    if (n < 1) throw InvalidDetectLength("expected_lines: detect length must be >= 1");
    if (length < 1) throw InvalidLength("expected_lines: length must be >= 1");
    const double density =
        (n + 1) * std::ldexp(1.0, -(n + 1)) / static_cast<double>(n);
    return density * static_cast<double>(length);
}

LnSeries ln_series(const Bitstream& b, int n_max, Symbol symbol) {
    if (b.empty()) throw EmptyInput("ln_series: empty bitstream");
    if (n_max < 1) throw InvalidDetectLength("ln_series: n_max must be >= 1");

    const bool want = symbol_bit(symbol);
    std::vector<std::uint64_t> units(static_cast<std::size_t>(n_max), 0);
    for_each_run(b, [&](bool v, std::uint64_t r) {
        if (v != want) return;
        const auto top = std::min<std::uint64_t>(r, static_cast<std::uint64_t>(n_max));
        for (std::uint64_t n = 1; n <= top; ++n) units[n - 1] += r;
    });

    LnSeries series;
    const auto len = static_cast<double>(b.size());
    series.l.resize(units.size());
    for (std::size_t i = 0; i < units.size(); ++i)
        series.l[i] = static_cast<double>(units[i]) / len; // count*n/len == units/len
    if (n_max >= 2) {
        series.l_prime.resize(units.size() - 1);
        for (std::size_t i = 1; i < units.size(); ++i) {
            if (series.l[i - 1] != 0.0)
                series.l_prime[i - 1] = series.l[i] / series.l[i - 1];
        }
    }
    return series;
}

FlsResult run_fls(const Bitstream& b, const FlsConfig& config) {
    if (config.n_set.empty()) throw InvalidConfig("run_fls: n_set is empty");
    for (int n : config.n_set)
        if (n < 1) throw InvalidConfig("run_fls: detect lengths must be >= 1");
    if (config.symbols.empty()) throw InvalidConfig("run_fls: symbols is empty");
    if (config.mc_replicas < 2)
        throw InvalidConfig("run_fls: mc_replicas must be >= 2");
    if (!(config.z_threshold > 0.0))
        throw InvalidConfig("run_fls: z_threshold must be > 0");
    if (b.size() < 64)
        throw InsufficientBits("run_fls: need at least 64 bits");

    FlsConfig cfg = config;
    cfg.n_set = normalized_n_set(config.n_set);
    std::vector<Symbol> symbols = config.symbols;
    std::sort(symbols.begin(), symbols.end(),
              [](Symbol a, Symbol b2) { return static_cast<int>(a) < static_cast<int>(b2); });
    symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
    cfg.symbols = symbols;

    const std::size_t len = b.size();
    const std::size_t n_count = cfg.n_set.size();

    LineTally device_h(cfg.n_set);
    for_each_run(b, [&](bool v, std::uint64_t r) { device_h.add_run(v, r); });

    LineTally device_v(cfg.n_set);
    {
        const Bitstream seq = vertical_sequence(b);
        for_each_run(seq, [&](bool v, std::uint64_t r) { device_v.add_run(v, r); });
    }

    // Monte Carlo scale calibration: horizontal counts over same-length
    // uniform bitstreams, replica seeds derived deterministically.
    const auto replicas = static_cast<std::size_t>(cfg.mc_replicas);
    std::vector<std::vector<double>> replica_counts(2 * n_count);
    for (auto& v : replica_counts) v.reserve(replicas);
    for (std::size_t rep = 0; rep < replicas; ++rep) {
        const Bitstream rb = random_bitstream(len, derive_seed(cfg.seed, rep));
        LineTally tally(cfg.n_set);
        for_each_run(rb, [&](bool v, std::uint64_t r) { tally.add_run(v, r); });
        for (std::size_t ni = 0; ni < n_count; ++ni) {
            for (int si = 0; si < 2; ++si) {
                const auto sym = si == 0 ? Symbol::zero : Symbol::one;
                replica_counts[2 * ni + si].push_back(
                    static_cast<double>(tally.units(sym, ni)) / cfg.n_set[ni]);
            }
        }
    }

    const double sqrt2 = std::sqrt(2.0);
    FlsResult result;
    result.config = cfg;
    result.pass = true;
    for (Symbol sym : cfg.symbols) {
        for (std::size_t ni = 0; ni < n_count; ++ni) {
            const int n = cfg.n_set[ni];
            FlsEntry e;
            e.symbol = sym;
            e.n = n;
            e.horizontal = LineCount{sym, n, Orientation::horizontal,
                                     device_h.units(sym, ni)};
            e.vertical = LineCount{sym, n, Orientation::vertical,
                                   device_v.units(sym, ni)};
            e.expected = expected_lines(n, len);

            // sample standard deviation of the replica horizontal counts
            const auto& counts = replica_counts[2 * ni + (sym == Symbol::one ? 1 : 0)];
            double mean = 0.0;
            for (double c : counts) mean += c;
            mean /= static_cast<double>(counts.size());
            double ss = 0.0;
            for (double c : counts) ss += (c - mean) * (c - mean);
            e.mc_sigma = std::sqrt(ss / static_cast<double>(counts.size() - 1));

            e.z_h = safe_z(e.horizontal.count() - e.expected, e.mc_sigma);
            e.z_v = safe_z(e.vertical.count() - e.expected, e.mc_sigma);
            e.z_symmetry = safe_z(e.horizontal.count() - e.vertical.count(),
                                  e.mc_sigma * sqrt2);
            if (!(std::abs(e.z_h) <= cfg.z_threshold) ||
                !(std::abs(e.z_v) <= cfg.z_threshold) ||
                !(std::abs(e.z_symmetry) <= cfg.z_threshold))
                result.pass = false;
            result.entries.push_back(e);
        }
    }
    return result;
}

} // namespace flskit
