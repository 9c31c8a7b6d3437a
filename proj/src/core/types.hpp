#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace rancova {

// Location functional applied inside covariate neighborhoods: either a
// gamma-trimmed mean or the Harrell-Davis estimate of the q-th quantile.
struct EstimatorSpec {
  enum class Kind { trimmed_mean, hd_quantile };

  Kind kind = Kind::trimmed_mean;
  double param = 0.2;  // gamma for trimmed_mean, q for hd_quantile

  static EstimatorSpec trimmed(double gamma) { return {Kind::trimmed_mean, gamma}; }
  static EstimatorSpec quantile(double q) { return {Kind::hd_quantile, q}; }

  void validate() const;
  std::string label() const;  // e.g. "trimmed:0.2", "quantile:0.5"
};

// One group's (covariate, outcome) observations. Core entry points expect
// cleaned data: equal lengths, all values finite.
struct PairedSample {
  std::vector<double> x;
  std::vector<double> y;

  std::size_t size() const noexcept { return x.size(); }
  void validate(const char* stage = "ingestion") const;
};

struct SmootherConfig {
  double span = 1.0;          // neighborhood half-width in MADN units
  int min_neighbors = 12;     // comparability floor per group
  int num_points = 5;         // design points (5, or 3 with quartile_points)
  bool quartile_points = false;       // pick the three quartiles of group 1's x
  // Global-test resampling scheme. Default: neighborhoods are fixed from the
  // observed data and each design point's outcomes are resampled
  // independently. The paired alternative resamples n_j whole-group pairs
  // and rebuilds neighborhoods (and MADN, unless frozen) per resample; it
  // spreads the cloud and makes the test markedly more conservative.
  bool paired_bootstrap = false;
  bool freeze_madn = false;           // paired scheme keeps the original MADN
  bool comparability_warn_only = false;  // downgrade failed point checks to warnings

  int effective_num_points() const noexcept { return quartile_points ? 3 : num_points; }
  void validate() const;
};

// The covariate values at which the two groups are compared. source_indices
// are positions in group 1's ascending-sorted covariates; empty in
// quartile-points mode where values need not be observed covariates.
struct DesignPoints {
  std::vector<double> values;
  std::vector<std::size_t> source_indices;

  std::size_t size() const noexcept { return values.size(); }
};

}  // namespace rancova
