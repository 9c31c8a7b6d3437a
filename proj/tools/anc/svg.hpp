#pragma once

#include <string>
#include <vector>

namespace anc_cli {

struct CurveSeries {
  std::string label;
  std::string color;
  bool dashed = false;
  std::vector<double> x;
  std::vector<double> y;  // NaN marks a gap in the curve
  std::vector<std::pair<double, double>> markers;  // filled circles (design points)
};

// Smoother figure: the fitted curves of both groups over the comparable
// covariate range with the design points marked by vertical guides.
std::string render_smoother_svg(const std::vector<CurveSeries>& series,
                                const std::vector<double>& design_points,
                                const std::string& x_label,
                                const std::string& y_label);

}  // namespace anc_cli
