#ifndef PROX_TILEMAP_HPP
#define PROX_TILEMAP_HPP

#include <map>
#include <string>

// Self-contained SVG tile-grid map of the 51 units (50 states + DC), one
// square per state, shaded by value. Output is byte-deterministic for a
// given input map.

namespace prox::tilemap {

struct RenderOptions {
    std::string title;
    std::string header_comment; // embedded verbatim in a leading XML comment
    bool warning_empty = false; // annotate an all-zero map
};

// values: state code -> share in [0, 1]; missing states render as zero.
// Shade ramp (documented in the SVG header): linear from white rgb(247,251,255)
// at 0 to dark blue rgb(8,48,107) at the maximum value in the map.
std::string render_svg(const std::map<std::string, double>& values,
                       const RenderOptions& options = {});

} // namespace prox::tilemap

#endif
