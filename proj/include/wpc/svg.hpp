#pragma once

#include <string>

#include "wpc/chart.hpp"

namespace wpc {

// Static SVG renderings: points, evolving Phase I limits, frozen Phase II
// limits, dashed divider at the last Phase I sample. Signalling points are
// drawn filled red.
void render_chart_svg(const std::string& path, const ChartRun& run,
                      const std::string& title);

void render_beta_svg(const std::string& path, const ChartRun& run,
                     const std::string& title);

// Ratio chart plus the ratio densities at k = 0 and at the end of Phase I,
// drawn as an inset panel.
void render_ratio_svg(const std::string& path, const RatioRun& run,
                      const std::string& title);

} // namespace wpc
