#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "core/types.hpp"

namespace rancova {

// Location and scale estimators plus the two-sample trimmed-mean test that
// every higher layer builds on. All functions copy their input before
// sorting; none mutate arguments or hold shared state.

// Mean of the order statistics Z_(g+1)..Z_(n-g), g = floor(gamma * n).
double trimmed_mean(std::span<const double> z, double gamma);

// Sample variance (divisor n-1) after pulling the g smallest values up to
// Z_(g+1) and the g largest down to Z_(n-g).
double winsorized_variance(std::span<const double> z, double gamma);

struct YuenResult {
  double statistic = 0.0;
  double degrees_of_freedom = 0.0;
  double p_value = 1.0;
  double estimate_diff = 0.0;  // trimmed mean of z1 minus trimmed mean of z2
  double ci_low = 0.0;
  double ci_high = 0.0;
};

// Welch-style comparison of two trimmed means with Satterthwaite degrees of
// freedom and a two-sided 1-alpha confidence interval for the difference.
// Requires each effective size n_j - 2*floor(gamma*n_j) >= 2.
YuenResult yuen_test(std::span<const double> z1, std::span<const double> z2,
                     double gamma, double alpha);

// Beta(a,b) cell probabilities v_i = P((i-1)/n <= U <= i/n) with
// a = (n+1)q and b = (n+1)(1-q); nonnegative and summing to one.
std::vector<double> hd_weights(std::size_t n, double q);

// Quantile estimate as the v-weighted average of all order statistics.
double harrell_davis(std::span<const double> z, double q);

// Dispatch on the configured location functional.
double apply_estimator(std::span<const double> z, const EstimatorSpec& spec);

// Sample median; even lengths average the two central order statistics.
double median(std::span<const double> z);

// Median absolute deviation from the median, and its normal-consistent
// rescaling MADN = MAD / 0.6745.
double mad(std::span<const double> z);
double madn(std::span<const double> z);

// Lower and upper quartiles by the ideal-fourths rule (requires n >= 4).
std::pair<double, double> ideal_fourths(std::span<const double> z);

// Indices of values outside [Q1 - 1.5*IQR, Q3 + 1.5*IQR], quartiles per
// ideal_fourths. Requires n >= 4.
std::vector<std::size_t> boxplot_outlier_indices(std::span<const double> z);

// Precomputes Harrell-Davis weight rows up to a maximum sample size so the
// bootstrap loops can estimate from presorted buffers without re-deriving
// Beta probabilities. Read-only after construction, safe to share across
// threads. For trimmed means it is a thin wrapper.
class LocationEstimator {
 public:
  LocationEstimator(const EstimatorSpec& spec, std::size_t max_n);

  const EstimatorSpec& spec() const noexcept { return spec_; }

  // z must already be sorted ascending and nonempty, with z.size() <= max_n.
  double estimate_sorted(std::span<const double> z) const;

  // Sorts buf in place, then estimates.
  double estimate(std::vector<double>& buf) const;

  // Bootstrap resamples with fewer neighbors than this cannot be estimated
  // and force a redraw.
  bool neighborhood_large_enough(std::size_t n) const noexcept;

 private:
  EstimatorSpec spec_;
  std::vector<std::vector<double>> weights_;  // weights_[n] for hd_quantile
};

}  // namespace rancova
