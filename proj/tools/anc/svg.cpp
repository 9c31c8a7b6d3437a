#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace anc_cli {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 520.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 780.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 460.0;

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

}  // namespace

std::string render_smoother_svg(const std::vector<CurveSeries>& series,
                                const std::vector<double>& design_points,
                                const std::string& x_label,
                                const std::string& y_label) {
  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min;
  double y_min = x_min;
  double y_max = -x_min;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.y[i])) continue;
      x_min = std::min(x_min, s.x[i]);
      x_max = std::max(x_max, s.x[i]);
      y_min = std::min(y_min, s.y[i]);
      y_max = std::max(y_max, s.y[i]);
    }
  }
  if (!std::isfinite(x_min)) {
    x_min = 0.0;
    x_max = 1.0;
  }
  if (!std::isfinite(y_min)) {
    y_min = 0.0;
    y_max = 1.0;
  }
  if (x_max == x_min) {
    x_min -= 1.0;
    x_max += 1.0;
  }
  if (y_max == y_min) {
    y_min -= 1.0;
    y_max += 1.0;
  }
  const double y_pad = 0.05 * (y_max - y_min);
  y_min -= y_pad;
  y_max += y_pad;

  auto sx = [&](double x) {
    return kLeft + (x - x_min) / (x_max - x_min) * (kRight - kLeft);
  };
  auto sy = [&](double y) {
    return kBottom - (y - y_min) / (y_max - y_min) * (kBottom - kTop);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight
      << "\">\n";
  svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";

  // Axes with end ticks.
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kBottom << "\" x2=\"" << kRight
      << "\" y2=\"" << kBottom << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
      << "\" y2=\"" << kBottom << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double fx = x_min + (x_max - x_min) * t / 4.0;
    const double fy = y_min + (y_max - y_min) * t / 4.0;
    svg << "<line x1=\"" << sx(fx) << "\" y1=\"" << kBottom << "\" x2=\"" << sx(fx)
        << "\" y2=\"" << kBottom + 6 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << sx(fx) << "\" y=\"" << kBottom + 22
        << "\" font-size=\"12\" text-anchor=\"middle\">" << fmt(fx) << "</text>\n";
    svg << "<line x1=\"" << kLeft - 6 << "\" y1=\"" << sy(fy) << "\" x2=\"" << kLeft
        << "\" y2=\"" << sy(fy) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << kLeft - 10 << "\" y=\"" << sy(fy) + 4
        << "\" font-size=\"12\" text-anchor=\"end\">" << fmt(fy) << "</text>\n";
  }
  svg << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"" << kHeight - 10
      << "\" font-size=\"14\" text-anchor=\"middle\">" << x_label << "</text>\n";
  svg << "<text x=\"18\" y=\"" << (kTop + kBottom) / 2
      << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << (kTop + kBottom) / 2 << ")\">" << y_label << "</text>\n";

  for (double xd : design_points) {
    svg << "<line x1=\"" << sx(xd) << "\" y1=\"" << kTop << "\" x2=\"" << sx(xd)
        << "\" y2=\"" << kBottom
        << "\" stroke=\"#999999\" stroke-dasharray=\"2,4\"/>\n";
  }

  double legend_y = kTop + 10.0;
  for (const auto& s : series) {
    // Break the polyline wherever the fit is absent.
    std::ostringstream points;
    bool open = false;
    auto flush = [&]() {
      const std::string body = points.str();
      if (open && !body.empty()) {
        svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\""
            << (s.dashed ? " stroke-dasharray=\"7,4\"" : "") << " points=\"" << body
            << "\"/>\n";
      }
      points.str("");
      points.clear();
      open = false;
    };
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.y[i])) {
        flush();
        continue;
      }
      points << sx(s.x[i]) << "," << sy(s.y[i]) << " ";
      open = true;
    }
    flush();

    svg << "<line x1=\"" << kRight - 150 << "\" y1=\"" << legend_y << "\" x2=\""
        << kRight - 110 << "\" y2=\"" << legend_y << "\" stroke=\"" << s.color
        << "\" stroke-width=\"2\"" << (s.dashed ? " stroke-dasharray=\"7,4\"" : "")
        << "/>\n";
    svg << "<text x=\"" << kRight - 104 << "\" y=\"" << legend_y + 4
        << "\" font-size=\"13\">" << s.label << "</text>\n";
    legend_y += 18.0;
  }

  for (const auto& s : series) {
    for (const auto& [mx, my] : s.markers) {
      if (!std::isfinite(my)) continue;
      svg << "<circle cx=\"" << sx(mx) << "\" cy=\"" << sy(my) << "\" r=\"4\" fill=\""
          << s.color << "\"/>\n";
    }
  }

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace anc_cli
