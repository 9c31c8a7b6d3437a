#include "core/pointwise.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/errors.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"
#include "core/robust.hpp"
#include "core/smoother.hpp"

namespace rancova {

namespace {

struct NeighborhoodOutcomes {
  std::vector<double> y1, y2;
  std::size_t n1 = 0, n2 = 0;
};

NeighborhoodOutcomes gather(const PairedSample& s1, const PairedSample& s2, double x0,
                            const SmootherConfig& cfg, double madn1, double madn2) {
  NeighborhoodOutcomes out;
  for (std::size_t i : neighborhood(s1.x, x0, cfg.span, madn1)) out.y1.push_back(s1.y[i]);
  for (std::size_t i : neighborhood(s2.x, x0, cfg.span, madn2)) out.y2.push_back(s2.y[i]);
  out.n1 = out.y1.size();
  out.n2 = out.y2.size();
  if (out.n1 < 2 || out.n2 < 2) {
    fail(errc::insufficient_data, "pointwise",
         "fewer than two neighbors at design point " + std::to_string(x0));
  }
  return out;
}

void apply_hochberg(MethodWResult& result) {
  std::vector<double> p_values;
  p_values.reserve(result.points.size());
  for (const auto& pt : result.points) p_values.push_back(pt.p_value);
  const auto reject = hochberg_adjust(p_values, result.alpha);
  for (std::size_t k = 0; k < result.points.size(); ++k) {
    result.points[k].reject_adjusted = reject[k];
  }
}

bool all_equal(std::span<const double> v) {
  return std::adjacent_find(v.begin(), v.end(),
                            [](double a, double b) { return a != b; }) == v.end();
}

}  // namespace

std::vector<bool> hochberg_adjust(std::span<const double> p_values, double alpha) {
  if (p_values.empty()) {
    fail(errc::invalid_argument, "hochberg", "no p-values supplied");
  }
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    fail(errc::invalid_argument, "hochberg", "alpha must lie in (0,1)");
  }
  for (double p : p_values) {
    if (!(p >= 0.0) || !(p <= 1.0)) {
      fail(errc::invalid_argument, "hochberg", "p-values must lie in [0,1]");
    }
  }

  const std::size_t m = p_values.size();
  std::vector<double> sorted(p_values.begin(), p_values.end());
  std::stable_sort(sorted.begin(), sorted.end());

  double threshold = -1.0;
  for (std::size_t k = m; k >= 1; --k) {
    if (sorted[k - 1] <= alpha / static_cast<double>(m - k + 1)) {
      threshold = sorted[k - 1];
      break;
    }
  }

  std::vector<bool> reject(m, false);
  if (threshold >= 0.0) {
    for (std::size_t i = 0; i < m; ++i) reject[i] = p_values[i] <= threshold;
  }
  return reject;
}

MethodWResult anc_w_trimmed(const PairedSample& s1, const PairedSample& s2,
                            const DesignPoints& points, double gamma, double alpha,
                            const SmootherConfig& cfg) {
  s1.validate();
  s2.validate();
  if (points.size() == 0) fail(errc::invalid_argument, "pointwise", "no design points");

  const double madn1 = madn(s1.x);
  const double madn2 = madn(s2.x);

  MethodWResult result;
  result.method = MethodWResult::Method::yuen;
  result.alpha = alpha;

  for (double x0 : points.values) {
    const auto local = gather(s1, s2, x0, cfg, madn1, madn2);
    const YuenResult yuen = yuen_test(local.y1, local.y2, gamma, alpha);
    MethodWPoint pt;
    pt.x = x0;
    pt.n1 = local.n1;
    pt.n2 = local.n2;
    pt.estimate1 = trimmed_mean(local.y1, gamma);
    pt.estimate2 = trimmed_mean(local.y2, gamma);
    pt.delta = yuen.estimate_diff;
    pt.p_value = yuen.p_value;
    pt.ci_low = yuen.ci_low;
    pt.ci_high = yuen.ci_high;
    result.points.push_back(pt);
  }

  apply_hochberg(result);
  return result;
}

MethodWResult anc_w_quantile(const PairedSample& s1, const PairedSample& s2,
                             const DesignPoints& points, double q, double alpha,
                             const SmootherConfig& cfg, int num_boot,
                             std::uint64_t seed, int threads) {
  s1.validate();
  s2.validate();
  if (points.size() == 0) fail(errc::invalid_argument, "pointwise", "no design points");
  if (num_boot < 100) {
    fail(errc::invalid_argument, "pointwise", "percentile bootstrap needs B >= 100");
  }
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    fail(errc::invalid_argument, "pointwise", "alpha must lie in (0,1)");
  }

  const double madn1 = madn(s1.x);
  const double madn2 = madn(s2.x);

  MethodWResult result;
  result.method = MethodWResult::Method::percentile_bootstrap;
  result.alpha = alpha;
  result.points.resize(points.size());
  std::vector<std::vector<std::string>> warnings(points.size());

  const auto B = static_cast<std::size_t>(num_boot);
  const EstimatorSpec spec = EstimatorSpec::quantile(q);

  parallel_for(points.size(), threads, [&](std::size_t k) {
    const double x0 = points.values[k];
    const auto local = gather(s1, s2, x0, cfg, madn1, madn2);
    const LocationEstimator estimator(spec, std::max(local.n1, local.n2));

    MethodWPoint pt;
    pt.x = x0;
    pt.n1 = local.n1;
    pt.n2 = local.n2;
    {
      std::vector<double> buf = local.y1;
      pt.estimate1 = estimator.estimate(buf);
      buf = local.y2;
      pt.estimate2 = estimator.estimate(buf);
    }
    pt.delta = pt.estimate1 - pt.estimate2;

    if (all_equal(local.y1) && all_equal(local.y2)) {
      warnings[k].push_back("degenerate neighborhood at x=" + std::to_string(x0) +
                            ": outcomes are constant, bootstrap is uninformative");
    }

    Rng rng(derive_seed(seed, rng_stream::pointwise, k));
    std::vector<double> deltas(B);
    std::vector<double> buf1(local.n1), buf2(local.n2);
    for (std::size_t b = 0; b < B; ++b) {
      for (std::size_t i = 0; i < local.n1; ++i) buf1[i] = local.y1[rng.next_index(local.n1)];
      for (std::size_t i = 0; i < local.n2; ++i) buf2[i] = local.y2[rng.next_index(local.n2)];
      deltas[b] = estimator.estimate(buf1) - estimator.estimate(buf2);
    }

    std::size_t below = 0, above = 0, zero = 0;
    for (double d : deltas) {
      if (d < 0.0) {
        ++below;
      } else if (d > 0.0) {
        ++above;
      } else {
        ++zero;
      }
    }
    const double lo = static_cast<double>(below) + 0.5 * static_cast<double>(zero);
    const double hi = static_cast<double>(above) + 0.5 * static_cast<double>(zero);
    pt.p_value = std::min(1.0, 2.0 * std::min(lo, hi) / static_cast<double>(B));

    std::stable_sort(deltas.begin(), deltas.end());
    const auto cut = static_cast<std::size_t>(
        std::floor(alpha / 2.0 * static_cast<double>(B)));
    pt.ci_low = deltas[std::min(cut, B - 1)];
    pt.ci_high = deltas[B - 1 - std::min(cut, B - 1)];

    result.points[k] = pt;
  });

  for (auto& w : warnings) {
    for (auto& msg : w) result.warnings.push_back(std::move(msg));
  }
  apply_hochberg(result);
  return result;
}

}  // namespace rancova
