#include "prox/tilemap.hpp"

#include "prox/adjacency.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace prox::tilemap {

namespace {

struct Tile {
    const char* code;
    int col;
    int row;
};

// Fixed tile-grid layout, roughly geographic.
constexpr Tile kTiles[] = {
    {"AK", 0, 0},  {"ME", 11, 0},
    {"VT", 10, 1}, {"NH", 11, 1},
    {"WA", 1, 2},  {"MT", 2, 2},  {"ND", 3, 2},  {"MN", 4, 2},  {"WI", 5, 2},
    {"MI", 7, 2},  {"NY", 9, 2},  {"MA", 10, 2}, {"RI", 11, 2},
    {"OR", 1, 3},  {"ID", 2, 3},  {"SD", 3, 3},  {"IA", 4, 3},  {"IL", 5, 3},
    {"IN", 6, 3},  {"OH", 7, 3},  {"PA", 8, 3},  {"NJ", 9, 3},  {"CT", 10, 3},
    {"CA", 1, 4},  {"NV", 2, 4},  {"WY", 3, 4},  {"NE", 4, 4},  {"MO", 5, 4},
    {"KY", 6, 4},  {"WV", 7, 4},  {"VA", 8, 4},  {"MD", 9, 4},  {"DE", 10, 4},
    {"AZ", 2, 5},  {"UT", 3, 5},  {"CO", 4, 5},  {"KS", 5, 5},  {"TN", 6, 5},
    {"NC", 7, 5},  {"SC", 8, 5},  {"DC", 9, 5},
    {"NM", 3, 6},  {"OK", 4, 6},  {"AR", 5, 6},  {"MS", 6, 6},  {"AL", 7, 6},
    {"GA", 8, 6},
    {"TX", 4, 7},  {"LA", 5, 7},  {"FL", 8, 7},
    {"HI", 0, 8},
};

constexpr int kCell = 44;
constexpr int kGap = 4;
constexpr int kCols = 12;
constexpr int kRows = 9;
constexpr int kMargin = 10;
constexpr int kTitleBand = 28;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string shade(double value, double max_value) {
    const double t = max_value > 0.0 ? std::clamp(value / max_value, 0.0, 1.0) : 0.0;
    const auto lerp = [t](int from, int to) {
        return static_cast<int>(std::lround(from + (to - from) * t));
    };
    char buf[32];
    std::snprintf(buf, sizeof(buf), "rgb(%d,%d,%d)", lerp(247, 8), lerp(251, 48),
                  lerp(255, 107));
    return buf;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

} // namespace

std::string render_svg(const std::map<std::string, double>& values,
                       const RenderOptions& options) {
    for (const auto& [code, value] : values) {
        if (!adjacency::is_state_code(code))
            throw std::invalid_argument("render_svg: unknown state code '" + code + "'");
        if (!std::isfinite(value) || value < 0.0)
            throw std::invalid_argument("render_svg: bad value for " + code);
    }

    double max_value = 0.0;
    for (const auto& [code, value] : values)
        max_value = std::max(max_value, value);

    const int width = 2 * kMargin + kCols * kCell + (kCols - 1) * kGap;
    const int height = kTitleBand + 2 * kMargin + kRows * kCell + (kRows - 1) * kGap;

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    if (!options.header_comment.empty())
        svg << "<!--\n" << escape_xml(options.header_comment) << "-->\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<desc>State tile map. Shade ramp: linear, rgb(247,251,255) at 0 to "
           "rgb(8,48,107) at max value "
        << fmt(max_value) << ".</desc>\n";
    if (!options.title.empty())
        svg << "<text x=\"" << kMargin << "\" y=\"20\" font-family=\"sans-serif\" "
            << "font-size=\"16\">" << escape_xml(options.title) << "</text>\n";
    if (options.warning_empty)
        svg << "<text x=\"" << width - kMargin << "\" y=\"20\" text-anchor=\"end\" "
            << "font-family=\"sans-serif\" font-size=\"12\" fill=\"rgb(180,30,30)\">"
            << "warning: no nonzero values</text>\n";

    for (const Tile& tile : kTiles) {
        const auto it = values.find(tile.code);
        const double value = it == values.end() ? 0.0 : it->second;
        const int x = kMargin + tile.col * (kCell + kGap);
        const int y = kTitleBand + kMargin + tile.row * (kCell + kGap);
        svg << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << kCell
            << "\" height=\"" << kCell << "\" fill=\"" << shade(value, max_value)
            << "\" stroke=\"rgb(120,120,120)\" stroke-width=\"1\"><title>" << tile.code
            << " " << fmt(value) << "</title></rect>\n";
        const bool dark = max_value > 0.0 && value / max_value > 0.55;
        svg << "<text x=\"" << x + kCell / 2 << "\" y=\"" << y + kCell / 2 + 5
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" fill=\""
            << (dark ? "rgb(255,255,255)" : "rgb(40,40,40)") << "\">" << tile.code
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace prox::tilemap
