#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dicke/types.hpp"

namespace dicke {

// Static SVG renderers.  Plots are derived from already-computed tables
// only, so headless runs never load a graphics stack; skipping --render
// changes nothing but the image files.

// Linear-color heatmap of value(i, k) over (xs[k], ys[i]) cell centers.
// When `contour_zero` is set the zero level is traced explicitly (marching
// squares on the cell-center lattice) on top of the color map.
void render_heatmap(const std::filesystem::path& path,
                    const std::vector<double>& xs,
                    const std::vector<double>& ys, const Mat& value,
                    const std::string& x_label, const std::string& y_label,
                    const std::string& title, bool contour_zero);

struct LineSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

void render_line_plot(const std::filesystem::path& path,
                      const std::vector<LineSeries>& series,
                      const std::string& x_label, const std::string& y_label,
                      const std::string& title);

}  // namespace dicke
