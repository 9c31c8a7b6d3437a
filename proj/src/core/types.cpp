#include "core/types.hpp"

#include <cmath>
#include <sstream>

#include "core/errors.hpp"

namespace rancova {

void EstimatorSpec::validate() const {
  if (kind == Kind::trimmed_mean) {
    if (!(param >= 0.0) || !(param < 0.5)) {
      fail(errc::invalid_argument, "estimator",
           "trimming proportion must lie in [0, 0.5), got " + std::to_string(param));
    }
  } else {
    if (!(param > 0.0) || !(param < 1.0)) {
      fail(errc::invalid_argument, "estimator",
           "quantile must lie in (0, 1), got " + std::to_string(param));
    }
  }
}

std::string EstimatorSpec::label() const {
  std::ostringstream out;
  out << (kind == Kind::trimmed_mean ? "trimmed:" : "quantile:") << param;
  return out.str();
}

void PairedSample::validate(const char* stage) const {
  if (x.size() != y.size()) {
    fail(errc::invalid_argument, stage, "covariate and outcome lengths differ");
  }
  if (x.empty()) {
    fail(errc::invalid_argument, stage, "sample is empty");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
      fail(errc::invalid_argument, stage,
           "non-finite value at row " + std::to_string(i));
    }
  }
}

void SmootherConfig::validate() const {
  if (!(span > 0.0) || !std::isfinite(span)) {
    fail(errc::invalid_argument, "config", "span must be positive and finite");
  }
  if (min_neighbors < 2) {
    fail(errc::invalid_argument, "config", "min_neighbors must be at least 2");
  }
  if (!quartile_points && num_points != 5) {
    fail(errc::invalid_argument, "config",
         "only 5 design points are supported (or 3 via quartile_points)");
  }
}

}  // namespace rancova
