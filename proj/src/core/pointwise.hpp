#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "core/types.hpp"

namespace rancova {

// Pointwise alternative to the global test: one two-sample test per design
// point with the familywise error rate controlled by Hochberg's step-up rule.

// Hochberg step-up adjustment: order the p-values ascending, find the largest
// k with p_(k) <= alpha / (m - k + 1), and reject every hypothesis whose
// p-value is <= p_(k). Tied p-values share the same fate.
std::vector<bool> hochberg_adjust(std::span<const double> p_values, double alpha);

struct MethodWPoint {
  double x = 0.0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  double estimate1 = 0.0;
  double estimate2 = 0.0;
  double delta = 0.0;
  double p_value = 1.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  bool reject_adjusted = false;
};

struct MethodWResult {
  enum class Method { yuen, percentile_bootstrap };

  Method method = Method::yuen;
  double alpha = 0.05;
  // Per-point intervals are at level 1-alpha individually, not jointly.
  bool ci_adjusted = false;
  std::vector<MethodWPoint> points;
  std::vector<std::string> warnings;

  std::string method_name() const {
    return method == Method::yuen ? "yuen" : "percentile-bootstrap";
  }
};

// Trimmed means: Yuen's test on the neighborhood outcomes at each design
// point, Hochberg across points.
MethodWResult anc_w_trimmed(const PairedSample& s1, const PairedSample& s2,
                            const DesignPoints& points, double gamma, double alpha,
                            const SmootherConfig& cfg);

// Quantiles: percentile bootstrap within each design point's neighborhoods
// (num_boot resamples per point), two-sided p-value with ties at zero split
// evenly, Hochberg across points. Deterministic for a fixed seed.
MethodWResult anc_w_quantile(const PairedSample& s1, const PairedSample& s2,
                             const DesignPoints& points, double q, double alpha,
                             const SmootherConfig& cfg, int num_boot,
                             std::uint64_t seed, int threads);

}  // namespace rancova
