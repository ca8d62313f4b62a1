#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "subradiance/io.hpp"

namespace subradiance {

/// One plotted series: points plus styling.
struct SvgSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
  std::string color = "#1f77b4";
  bool markers = false;  // scatter symbols in addition to the polyline
};

struct SvgPlotSpec {
  std::string title;
  std::string x_label, y_label;
  bool log_x = false, log_y = false;
  int width = 640, height = 440;
};

namespace detail {

inline std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace detail

/// Tiny self-contained line/scatter plot, no external resources. Points with
/// nonpositive coordinates on a log axis are skipped.
inline void write_svg_plot(const std::filesystem::path& path, const SvgPlotSpec& spec,
                           const std::vector<SvgSeries>& series) {
  auto tx = [&](double x) { return spec.log_x ? std::log10(x) : x; };
  auto ty = [&](double y) { return spec.log_y ? std::log10(y) : y; };
  auto usable = [&](double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y)) return false;
    if (spec.log_x && !(x > 0.0)) return false;
    if (spec.log_y && !(y > 0.0)) return false;
    return true;
  };

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      if (!usable(x, y)) continue;
      xmin = std::min(xmin, tx(x));
      xmax = std::max(xmax, tx(x));
      ymin = std::min(ymin, ty(y));
      ymax = std::max(ymax, ty(y));
    }
  if (xmin > xmax) {
    xmin = 0.0;
    xmax = 1.0;
  }
  if (ymin > ymax) {
    ymin = 0.0;
    ymax = 1.0;
  }
  if (xmax - xmin < 1e-12) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (ymax - ymin < 1e-12) {
    ymin -= 0.5;
    ymax += 0.5;
  }

  const double ml = 70, mr = 20, mt = 40, mb = 50;
  const double pw = spec.width - ml - mr, ph = spec.height - mt - mb;
  auto px = [&](double x) { return ml + (tx(x) - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return mt + ph - (ty(y) - ymin) / (ymax - ymin) * ph; };

  std::ofstream os = open_output(path);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width
     << "\" height=\"" << spec.height << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw
     << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"#555\"/>\n"
     << "<text x=\"" << spec.width / 2 << "\" y=\"22\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"14\">"
     << spec.title << "</text>\n";

  // axis ticks: 5 per axis, labeled in data units
  for (int t = 0; t <= 4; ++t) {
    const double fx = xmin + (xmax - xmin) * t / 4.0;
    const double fy = ymin + (ymax - ymin) * t / 4.0;
    const double gx = ml + pw * t / 4.0;
    const double gy = mt + ph - ph * t / 4.0;
    const double label_x = spec.log_x ? std::pow(10.0, fx) : fx;
    const double label_y = spec.log_y ? std::pow(10.0, fy) : fy;
    os << "<line x1=\"" << detail::svg_num(gx) << "\" y1=\"" << mt + ph
       << "\" x2=\"" << detail::svg_num(gx) << "\" y2=\"" << mt + ph + 5
       << "\" stroke=\"#555\"/>\n"
       << "<text x=\"" << detail::svg_num(gx) << "\" y=\"" << mt + ph + 18
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
       << format_double(label_x) << "</text>\n"
       << "<line x1=\"" << ml - 5 << "\" y1=\"" << detail::svg_num(gy) << "\" x2=\""
       << ml << "\" y2=\"" << detail::svg_num(gy) << "\" stroke=\"#555\"/>\n"
       << "<text x=\"" << ml - 8 << "\" y=\"" << detail::svg_num(gy + 3)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
       << format_double(label_y) << "</text>\n";
  }
  os << "<text x=\"" << spec.width / 2 << "\" y=\"" << spec.height - 10
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
     << spec.x_label << "</text>\n"
     << "<text x=\"16\" y=\"" << spec.height / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        "transform=\"rotate(-90 16 "
     << spec.height / 2 << ")\">" << spec.y_label << "</text>\n";

  int legend_row = 0;
  for (const auto& s : series) {
    std::string poly;
    for (const auto& [x, y] : s.points) {
      if (!usable(x, y)) continue;
      poly += detail::svg_num(px(x)) + "," + detail::svg_num(py(y)) + " ";
    }
    if (!poly.empty())
      os << "<polyline points=\"" << poly << "\" fill=\"none\" stroke=\"" << s.color
         << "\" stroke-width=\"1.5\"/>\n";
    if (s.markers)
      for (const auto& [x, y] : s.points) {
        if (!usable(x, y)) continue;
        os << "<circle cx=\"" << detail::svg_num(px(x)) << "\" cy=\""
           << detail::svg_num(py(y)) << "\" r=\"2.5\" fill=\"none\" stroke=\""
           << s.color << "\"/>\n";
      }
    os << "<text x=\"" << ml + 10 << "\" y=\"" << mt + 16 + 14 * legend_row
       << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" << s.color << "\">"
       << s.label << "</text>\n";
    ++legend_row;
  }
  os << "</svg>\n";
}

}  // namespace subradiance
