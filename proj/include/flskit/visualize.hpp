#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "flskit/fls.hpp"

namespace flskit {

using Rgb = std::array<std::uint8_t, 3>;

// Fixed palette: one = white, zero = black, nothing = grey; horizontal line
// highlight blue, vertical line highlight red.
inline constexpr Rgb kColorOne{255, 255, 255};
inline constexpr Rgb kColorZero{0, 0, 0};
inline constexpr Rgb kColorNothing{128, 128, 128};
inline constexpr Rgb kColorHorizontalLine{0, 0, 255};
inline constexpr Rgb kColorVerticalLine{255, 0, 0};

struct OverlaySpec {
    Symbol symbol = Symbol::zero;
    int detect_length = 1;
    Orientation orientation = Orientation::horizontal;
};

struct RenderSpec {
    int scale = 1; // pixels per cell
    std::optional<OverlaySpec> overlay;
};

/// Binary P6 pixmap of the square: "P6\n<w> <h>\n255\n" plus RGB triples,
/// row-major; each cell becomes a scale x scale block. Byte-exact for fixed
/// inputs.
std::vector<std::uint8_t> render_square(const PaddedSquare& s,
                                        const RenderSpec& spec);

/// Stacked render of b with every cell belonging to a counted line (including
/// fractional extensions) recolored blue (horizontal) or red (vertical).
/// Nothing cells spanned by a line stay grey.
std::vector<std::uint8_t> render_line_overlay(const Bitstream& b, Symbol symbol,
                                              int n, Orientation orientation,
                                              const RenderSpec& spec);

} // namespace flskit
