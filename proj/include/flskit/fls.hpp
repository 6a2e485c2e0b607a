#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "flskit/bitstream.hpp"

namespace flskit {

enum class Symbol : std::uint8_t { zero = 0, one = 1 };

inline bool symbol_bit(Symbol s) { return s == Symbol::one; }

/// Grid cell: a real bit or a "nothing" padding cell.
enum class Cell : std::uint8_t { zero = 0, one = 1, nothing = 2 };

inline Cell cell_from_bit(bool bit) { return bit ? Cell::one : Cell::zero; }

enum class Orientation : std::uint8_t { horizontal, vertical };

/// Square grid of cells, row-major. Padding cells produced by stack() form a
/// suffix; a rotated square may hold them anywhere.
struct PaddedSquare {
    std::size_t side = 0;
    std::vector<Cell> cells; // side * side entries, row-major
    std::size_t real_bits = 0;

    Cell at(std::size_t row, std::size_t col) const {
        return cells[row * side + col];
    }
};

/// Fractional line-count result for one (symbol, detect length, orientation).
/// Counts are exact multiples of 1/n; `units` is the integer numerator, i.e.
/// the total number of bits belonging to counted runs.
struct LineCount {
    Symbol symbol = Symbol::zero;
    int detect_length = 1;
    Orientation orientation = Orientation::horizontal;
    std::uint64_t units = 0;

    double count() const {
        return static_cast<double>(units) / static_cast<double>(detect_length);
    }
};

/// L_n = count*n / bitstream length for n = 1..n_max, and the successive
/// ratios L'_n = L_n / L_{n-1} (absent where the divisor is zero).
struct LnSeries {
    std::vector<double> l;                        // l[i] holds L_{i+1}
    std::vector<std::optional<double>> l_prime;   // l_prime[i] holds L'_{i+2}

    double l_at(int n) const { return l[static_cast<std::size_t>(n) - 1]; }
    std::optional<double> l_prime_at(int n) const {
        return l_prime[static_cast<std::size_t>(n) - 2];
    }
};

struct FlsConfig {
    std::vector<int> n_set = {1, 2, 3, 4, 5, 6, 7, 8};
    std::vector<Symbol> symbols = {Symbol::zero, Symbol::one};
    int mc_replicas = 100;
    std::uint64_t seed = 1;
    double z_threshold = 4.0;
};

struct FlsEntry {
    Symbol symbol = Symbol::zero;
    int n = 1;
    LineCount horizontal;
    LineCount vertical;
    double expected = 0.0;
    double mc_sigma = 0.0;
    double z_h = 0.0;
    double z_v = 0.0;
    double z_symmetry = 0.0;
};

struct FlsResult {
    std::vector<FlsEntry> entries; // ordered by (symbol, n)
    bool pass = false;
    FlsConfig config;
};

/// Smallest square capacity that holds L bits: ceil(sqrt(L))^2.
std::uint64_t pad_length(std::uint64_t length);

/// Folds the bitstream row-major into a ceil(sqrt(len)) square, padding the
/// tail with nothing cells.
PaddedSquare stack(const Bitstream& b);

/// 90-degree counterclockwise rotation: out[r][c] = in[c][m-1-r].
PaddedSquare rotate_ccw(const PaddedSquare& s);

/// Row-major read of the grid, nothing cells kept in place.
std::vector<Cell> unstack(const PaddedSquare& s);

/// Fractional line count over a cell sequence. Nothing cells are transparent:
/// they are dropped before run decomposition, so cells on either side of a
/// nothing gap are adjacent. Each maximal run of `symbol` of length r >= n
/// contributes r/n.
double count_lines(std::span<const Cell> cells, Symbol symbol, int n);

/// Same, but returning the exact numerator (sum of qualifying run lengths).
std::uint64_t count_line_units(std::span<const Cell> cells, Symbol symbol, int n);

/// Linear left-to-right scan of the raw bitstream; runs may cross the row
/// boundaries of the stacked view.
LineCount count_horizontal(const Bitstream& b, Symbol symbol, int n);

/// Columns of the stacked square read right-to-left, each top-to-bottom, as
/// one linear sequence (equals count_lines over unstack(rotate_ccw(stack(b)))).
LineCount count_vertical(const Bitstream& b, Symbol symbol, int n);

/// Expected fractional line count for one symbol at detect length n in a
/// uniform random bitstream of `length` bits: (n+1) / (2^(n+1) * n) * length.
double expected_lines(int n, std::uint64_t length);

/// Horizontal L_n and L'_n series for n = 1..n_max.
LnSeries ln_series(const Bitstream& b, int n_max, Symbol symbol);

/// Full fractional-line-symmetry test. For every (symbol, n) the horizontal
/// and vertical counts are compared against expected_lines and against each
/// other; the scale sigma comes from Monte Carlo over mc_replicas uniform
/// bitstreams of the same length (replica seeds derived from config.seed).
FlsResult run_fls(const Bitstream& b, const FlsConfig& config);

} // namespace flskit
