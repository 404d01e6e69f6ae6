#pragma once

#include <string>

#include "report_io.hpp"

namespace ncphase {

// Standalone SVG: one rect per cell, linear three-stop colour ramp between the
// grid minimum and maximum, axis labels from the column names, and a colour bar.
std::string render_heatmap_svg(const Grid2D& g, const std::string& title);

}  // namespace ncphase
