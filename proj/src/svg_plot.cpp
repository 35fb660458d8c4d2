#include "liquilens/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace liquilens {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v, const char* spec = "%.2f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string tick_label(double v) { return num(v, "%.6g"); }

std::string escape(const std::string& s) {
  std::string out;
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

struct Range {
  double lo, hi;
};

Range data_range(const std::vector<PlotSeries>& series, bool y_axis) {
  double lo = 0.0, hi = 0.0;
  bool any = false;
  for (const PlotSeries& s : series)
    for (const auto& [x, y] : s.points) {
      const double v = y_axis ? y : x;
      if (!any) {
        lo = hi = v;
        any = true;
      } else {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
  if (!any) return {0.0, 1.0};
  if (lo == hi) return {lo - 1.0, hi + 1.0};
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

double nice_step(double range, int target) {
  const double raw = range / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  const double step = norm < 1.5 ? 1.0 : norm < 3.0 ? 2.0 : norm < 7.0 ? 5.0 : 10.0;
  return step * mag;
}

}  // namespace

std::string render_svg(const std::vector<Chart>& charts, int width, int height) {
  if (charts.empty()) throw std::domain_error("render_svg needs at least one chart");
  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
         "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) +
         " " + std::to_string(height) + "\">\n";
  svg += "<rect width=\"" + std::to_string(width) + "\" height=\"" + std::to_string(height) +
         "\" fill=\"white\"/>\n";

  const double band = static_cast<double>(height) / static_cast<double>(charts.size());
  for (size_t ci = 0; ci < charts.size(); ++ci) {
    const Chart& chart = charts[ci];
    const double top = band * static_cast<double>(ci);
    const double ml = 72.0, mr = 24.0, mt = 34.0, mb = 48.0;
    const double x0 = ml, x1 = static_cast<double>(width) - mr;
    const double y0 = top + band - mb, y1 = top + mt;  // y grows downward in SVG

    const Range xr = data_range(chart.series, false);
    const Range yr = data_range(chart.series, true);
    const auto sx = [&](double x) { return x0 + (x - xr.lo) / (xr.hi - xr.lo) * (x1 - x0); };
    const auto sy = [&](double y) { return y0 + (y - yr.lo) / (yr.hi - yr.lo) * (y1 - y0); };

    svg += "<text x=\"" + num((x0 + x1) / 2.0) + "\" y=\"" + num(top + 18.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
           escape(chart.title) + "</text>\n";

    // axes
    svg += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(x1) + "\" y2=\"" +
           num(y0) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(x0) + "\" y2=\"" +
           num(y1) + "\" stroke=\"black\"/>\n";

    const double xs = nice_step(xr.hi - xr.lo, 5);
    for (double t = std::ceil(xr.lo / xs) * xs; t <= xr.hi + 1e-9 * xs; t += xs) {
      svg += "<line x1=\"" + num(sx(t)) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(sx(t)) +
             "\" y2=\"" + num(y0 + 5.0) + "\" stroke=\"black\"/>\n";
      svg += "<text x=\"" + num(sx(t)) + "\" y=\"" + num(y0 + 18.0) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
             tick_label(t) + "</text>\n";
    }
    const double ys = nice_step(yr.hi - yr.lo, 5);
    for (double t = std::ceil(yr.lo / ys) * ys; t <= yr.hi + 1e-9 * ys; t += ys) {
      svg += "<line x1=\"" + num(x0 - 5.0) + "\" y1=\"" + num(sy(t)) + "\" x2=\"" + num(x0) +
             "\" y2=\"" + num(sy(t)) + "\" stroke=\"black\"/>\n";
      svg += "<text x=\"" + num(x0 - 8.0) + "\" y=\"" + num(sy(t) + 4.0) +
             "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
             tick_label(t) + "</text>\n";
    }
    svg += "<text x=\"" + num((x0 + x1) / 2.0) + "\" y=\"" + num(y0 + 36.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
           escape(chart.x_label) + "</text>\n";
    svg += "<text x=\"" + num(x0 - 52.0) + "\" y=\"" + num((y0 + y1) / 2.0) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 " +
           num(x0 - 52.0) + " " + num((y0 + y1) / 2.0) + ")\">" + escape(chart.y_label) +
           "</text>\n";

    for (size_t si = 0; si < chart.series.size(); ++si) {
      const PlotSeries& s = chart.series[si];
      const std::string color =
          s.color.empty() ? kPalette[si % (sizeof kPalette / sizeof *kPalette)] : s.color;
      if (s.draw_line && s.points.size() > 1) {
        std::string pts;
        for (const auto& [x, y] : s.points) pts += num(sx(x)) + "," + num(sy(y)) + " ";
        svg += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color +
               "\" stroke-width=\"1.5\"/>\n";
      }
      if (s.draw_markers)
        for (const auto& [x, y] : s.points)
          svg += "<circle cx=\"" + num(sx(x)) + "\" cy=\"" + num(sy(y)) + "\" r=\"3\" fill=\"" +
                 color + "\"/>\n";
      // legend entry
      const double ly = y1 + 14.0 + 16.0 * static_cast<double>(si);
      svg += "<line x1=\"" + num(x1 - 150.0) + "\" y1=\"" + num(ly - 4.0) + "\" x2=\"" +
             num(x1 - 126.0) + "\" y2=\"" + num(ly - 4.0) + "\" stroke=\"" + color +
             "\" stroke-width=\"2\"/>\n";
      svg += "<text x=\"" + num(x1 - 120.0) + "\" y=\"" + num(ly) +
             "\" font-family=\"sans-serif\" font-size=\"11\">" + escape(s.label) + "</text>\n";
    }
  }
  svg += "</svg>\n";
  return svg;
}

void write_svg_file(const std::string& path, const std::vector<Chart>& charts, int width,
                    int height) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << render_svg(charts, width, height);
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace liquilens
