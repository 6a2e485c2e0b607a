#include "flskit/visualize.hpp"

#include <string>

namespace flskit {

namespace {

Rgb cell_color(Cell c) {
    switch (c) {
    case Cell::zero: return kColorZero;
    case Cell::one: return kColorOne;
    default: return kColorNothing;
    }
}

std::vector<std::uint8_t> paint(const PaddedSquare& s, int scale,
                                const std::vector<std::uint8_t>* highlight,
                                Rgb highlight_color) {
    if (scale < 1) throw InvalidConfig("render: scale must be >= 1");
    const std::size_t m = s.side;
    const std::size_t dim = m * static_cast<std::size_t>(scale);

    const std::string header =
        "P6\n" + std::to_string(dim) + " " + std::to_string(dim) + "\n255\n";
    std::vector<std::uint8_t> out;
    out.reserve(header.size() + dim * dim * 3);
    out.insert(out.end(), header.begin(), header.end());

    std::vector<std::uint8_t> row(dim * 3);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < m; ++c) {
            const std::size_t idx = r * m + c;
            const Rgb rgb = (highlight && (*highlight)[idx])
                                ? highlight_color
                                : cell_color(s.cells[idx]);
            for (int k = 0; k < scale; ++k) {
                const std::size_t px = (c * scale + k) * 3;
                row[px] = rgb[0];
                row[px + 1] = rgb[1];
                row[px + 2] = rgb[2];
            }
        }
        for (int k = 0; k < scale; ++k) out.insert(out.end(), row.begin(), row.end());
    }
    return out;
}

} // namespace

std::vector<std::uint8_t> render_square(const PaddedSquare& s,
                                        const RenderSpec& spec) {
    return paint(s, spec.scale, nullptr, kColorZero);
}

std::vector<std::uint8_t> render_line_overlay(const Bitstream& b, Symbol symbol,
                                              int n, Orientation orientation,
                                              const RenderSpec& spec) {
    if (n < 1)
        throw InvalidDetectLength("render_line_overlay: detect length must be >= 1");
    const PaddedSquare square = stack(b);
    std::vector<std::uint8_t> highlight(square.cells.size(), 0);
    const bool want = symbol_bit(symbol);
    const auto threshold = static_cast<std::uint64_t>(n);

    if (orientation == Orientation::horizontal) {
        // cell index == bit index for the row-major stacked view
        std::size_t pos = 0;
        for_each_run(b, [&](bool v, std::uint64_t r) {
            if (v == want && r >= threshold)
                for (std::uint64_t k = 0; k < r; ++k) highlight[pos + k] = 1;
            pos += r;
        });
    } else {
        // column read, right to left, top to bottom, real bits only
        const std::size_t m = square.side;
        std::vector<std::size_t> order;
        order.reserve(b.size());
        for (std::size_t c = m; c-- > 0;)
            for (std::size_t r = 0; r < m; ++r)
                if (const std::size_t idx = r * m + c; idx < b.size())
                    order.push_back(idx);
        std::size_t i = 0;
        while (i < order.size()) {
            const bool v = b.get(order[i]);
            std::size_t j = i + 1;
            while (j < order.size() && b.get(order[j]) == v) ++j;
            if (v == want && j - i >= threshold)
                for (std::size_t k = i; k < j; ++k) highlight[order[k]] = 1;
            i = j;
        }
    }

    const Rgb color = orientation == Orientation::horizontal ? kColorHorizontalLine
                                                             : kColorVerticalLine;
    return paint(square, spec.scale, &highlight, color);
}

} // namespace flskit
