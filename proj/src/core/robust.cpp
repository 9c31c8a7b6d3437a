#include "core/robust.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "core/errors.hpp"
#include "core/special.hpp"

namespace rancova {

namespace {

constexpr double kMadNormalConsistency = 0.6745;

void check_trim(std::span<const double> z, double gamma, const char* stage) {
  if (z.empty()) fail(errc::invalid_argument, stage, "input is empty");
  if (!(gamma >= 0.0) || !(gamma < 0.5)) {
    fail(errc::invalid_argument, stage,
         "trimming proportion must lie in [0, 0.5), got " + std::to_string(gamma));
  }
}

std::vector<double> sorted_copy(std::span<const double> z) {
  std::vector<double> v(z.begin(), z.end());
  std::stable_sort(v.begin(), v.end());
  return v;
}

double trimmed_mean_sorted(std::span<const double> z, double gamma) {
  const std::size_t n = z.size();
  const auto g = static_cast<std::size_t>(std::floor(gamma * static_cast<double>(n)));
  double sum = 0.0;
  for (std::size_t i = g; i < n - g; ++i) sum += z[i];
  return sum / static_cast<double>(n - 2 * g);
}

double median_sorted(std::span<const double> z) {
  const std::size_t n = z.size();
  const std::size_t mid = n / 2;
  if (n % 2 == 1) return z[mid];
  return 0.5 * (z[mid - 1] + z[mid]);
}

}  // namespace

double trimmed_mean(std::span<const double> z, double gamma) {
  check_trim(z, gamma, "trimmed-mean");
  const auto v = sorted_copy(z);
  return trimmed_mean_sorted(v, gamma);
}

double winsorized_variance(std::span<const double> z, double gamma) {
  check_trim(z, gamma, "winsorized-variance");
  const std::size_t n = z.size();
  if (n < 2) fail(errc::invalid_argument, "winsorized-variance", "need at least two values");

  auto v = sorted_copy(z);
  const auto g = static_cast<std::size_t>(std::floor(gamma * static_cast<double>(n)));
  for (std::size_t i = 0; i < g; ++i) {
    v[i] = v[g];
    v[n - 1 - i] = v[n - 1 - g];
  }
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double value : v) {
    const double d = value - mean;
    ss += d * d;
  }
  return ss / static_cast<double>(n - 1);
}

YuenResult yuen_test(std::span<const double> z1, std::span<const double> z2,
                     double gamma, double alpha) {
  check_trim(z1, gamma, "yuen");
  check_trim(z2, gamma, "yuen");
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    fail(errc::invalid_argument, "yuen", "alpha must lie in (0,1)");
  }

  const std::size_t n1 = z1.size();
  const std::size_t n2 = z2.size();
  const auto g1 = static_cast<std::size_t>(std::floor(gamma * static_cast<double>(n1)));
  const auto g2 = static_cast<std::size_t>(std::floor(gamma * static_cast<double>(n2)));
  const std::size_t h1 = n1 - 2 * g1;
  const std::size_t h2 = n2 - 2 * g2;
  if (h1 < 2 || h2 < 2) {
    fail(errc::insufficient_data, "yuen",
         "effective sample size after trimming must be at least 2 (h1=" +
             std::to_string(h1) + ", h2=" + std::to_string(h2) + ")");
  }

  const double tm1 = trimmed_mean(z1, gamma);
  const double tm2 = trimmed_mean(z2, gamma);
  const double d1 = winsorized_variance(z1, gamma) * static_cast<double>(n1 - 1) /
                    (static_cast<double>(h1) * static_cast<double>(h1 - 1));
  const double d2 = winsorized_variance(z2, gamma) * static_cast<double>(n2 - 1) /
                    (static_cast<double>(h2) * static_cast<double>(h2 - 1));

  YuenResult result;
  result.estimate_diff = tm1 - tm2;
  const double se = std::sqrt(d1 + d2);

  if (se == 0.0) {
    // Both winsorized samples are constant; the difference is exact.
    result.statistic = result.estimate_diff == 0.0
                           ? 0.0
                           : std::copysign(std::numeric_limits<double>::infinity(),
                                           result.estimate_diff);
    result.degrees_of_freedom = static_cast<double>(h1 + h2 - 2);
    result.p_value = result.estimate_diff == 0.0 ? 1.0 : 0.0;
    result.ci_low = result.ci_high = result.estimate_diff;
    return result;
  }

  const double df = (d1 + d2) * (d1 + d2) /
                    (d1 * d1 / static_cast<double>(h1 - 1) +
                     d2 * d2 / static_cast<double>(h2 - 1));
  result.statistic = result.estimate_diff / se;
  result.degrees_of_freedom = df;
  result.p_value = student_t_two_sided_p(result.statistic, df);
  const double tcrit = student_t_two_sided_quantile(alpha, df);
  result.ci_low = result.estimate_diff - tcrit * se;
  result.ci_high = result.estimate_diff + tcrit * se;
  return result;
}

std::vector<double> hd_weights(std::size_t n, double q) {
  if (n == 0) fail(errc::invalid_argument, "hd-weights", "n must be positive");
  if (!(q > 0.0) || !(q < 1.0)) {
    fail(errc::invalid_argument, "hd-weights",
         "quantile must lie in (0,1), got " + std::to_string(q));
  }
  const auto dn = static_cast<double>(n);
  const double a = (dn + 1.0) * q;
  const double b = (dn + 1.0) * (1.0 - q);

  std::vector<double> weights(n);
  double prev = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const double cdf = i == n ? 1.0
                              : regularized_incomplete_beta(
                                    static_cast<double>(i) / dn, a, b);
    weights[i - 1] = std::max(0.0, cdf - prev);
    prev = cdf;
  }
  return weights;
}

double harrell_davis(std::span<const double> z, double q) {
  if (z.empty()) fail(errc::invalid_argument, "harrell-davis", "input is empty");
  const auto v = sorted_copy(z);
  const auto weights = hd_weights(v.size(), q);
  double estimate = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) estimate += weights[i] * v[i];
  return estimate;
}

double apply_estimator(std::span<const double> z, const EstimatorSpec& spec) {
  spec.validate();
  return spec.kind == EstimatorSpec::Kind::trimmed_mean ? trimmed_mean(z, spec.param)
                                                        : harrell_davis(z, spec.param);
}

double median(std::span<const double> z) {
  if (z.empty()) fail(errc::invalid_argument, "median", "input is empty");
  const auto v = sorted_copy(z);
  return median_sorted(v);
}

double mad(std::span<const double> z) {
  if (z.empty()) fail(errc::invalid_argument, "mad", "input is empty");
  const double m = median(z);
  std::vector<double> dev(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) dev[i] = std::fabs(z[i] - m);
  std::stable_sort(dev.begin(), dev.end());
  return median_sorted(dev);
}

double madn(std::span<const double> z) { return mad(z) / kMadNormalConsistency; }

std::pair<double, double> ideal_fourths(std::span<const double> z) {
  if (z.size() < 4) {
    fail(errc::insufficient_data, "ideal-fourths", "need at least 4 values");
  }
  const auto v = sorted_copy(z);
  const auto n = static_cast<double>(v.size());
  const auto j = static_cast<std::size_t>(std::floor(n / 4.0 + 5.0 / 12.0));
  const double frac = n / 4.0 + 5.0 / 12.0 - static_cast<double>(j);
  const double q1 = (1.0 - frac) * v[j - 1] + frac * v[j];
  const std::size_t k = v.size() - j + 1;  // mirror position, 1-based
  const double q3 = (1.0 - frac) * v[k - 1] + frac * v[k - 2];
  return {q1, q3};
}

std::vector<std::size_t> boxplot_outlier_indices(std::span<const double> z) {
  if (z.size() < 4) {
    fail(errc::insufficient_data, "boxplot", "need at least 4 values");
  }
  const auto [q1, q3] = ideal_fourths(z);
  const double iqr = q3 - q1;
  const double lo = q1 - 1.5 * iqr;
  const double hi = q3 + 1.5 * iqr;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] < lo || z[i] > hi) out.push_back(i);
  }
  return out;
}

LocationEstimator::LocationEstimator(const EstimatorSpec& spec, std::size_t max_n)
    : spec_(spec) {
  spec_.validate();
  if (spec_.kind == EstimatorSpec::Kind::hd_quantile) {
    weights_.resize(max_n + 1);
    for (std::size_t n = 1; n <= max_n; ++n) weights_[n] = hd_weights(n, spec_.param);
  }
}

double LocationEstimator::estimate_sorted(std::span<const double> z) const {
  if (spec_.kind == EstimatorSpec::Kind::trimmed_mean) {
    return trimmed_mean_sorted(z, spec_.param);
  }
  const auto& w = weights_[z.size()];
  double estimate = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) estimate += w[i] * z[i];
  return estimate;
}

double LocationEstimator::estimate(std::vector<double>& buf) const {
  std::stable_sort(buf.begin(), buf.end());
  return estimate_sorted(buf);
}

bool LocationEstimator::neighborhood_large_enough(std::size_t n) const noexcept {
  if (spec_.kind == EstimatorSpec::Kind::trimmed_mean) {
    const auto g = static_cast<std::size_t>(
        std::floor(spec_.param * static_cast<double>(n)));
    return n >= std::max<std::size_t>(2, 2 * g + 1);
  }
  return n >= 2;
}

}  // namespace rancova
