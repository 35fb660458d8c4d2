#pragma once

#include <string>
#include <utility>
#include <vector>

namespace liquilens {

// Minimal deterministic SVG line charts: fixed canvas, linear axes, nice-step
// ticks, legend. Identical input always renders identical bytes.

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (x, y)
  std::string color;  // empty = pick from the default palette
  bool draw_line = true;
  bool draw_markers = false;
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
};

// Charts are stacked vertically on one canvas.
std::string render_svg(const std::vector<Chart>& charts, int width = 800, int height = 600);

void write_svg_file(const std::string& path, const std::vector<Chart>& charts, int width = 800,
                    int height = 600);

}  // namespace liquilens
