#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/types.hpp"

namespace rancova {

// Running-interval smoother: neighborhoods, comparability, design-point
// selection, and fitted curves.

// Indices i with |xs[i] - x0| <= span * madn_x (closed interval). A zero
// MADN admits exact matches only.
std::vector<std::size_t> neighborhood(std::span<const double> xs, double x0,
                                      double span, double madn_x);

std::size_t neighborhood_count(std::span<const double> xs, double x0, double span,
                               double madn_x);

// Convenience overload computing MADN from the sample's covariates.
std::size_t neighborhood_count(const PairedSample& sample, double x0,
                               const SmootherConfig& cfg);

// Both groups have at least cfg.min_neighbors covariates near x0.
bool comparable(const PairedSample& s1, const PairedSample& s2, double x0,
                const SmootherConfig& cfg);

struct DesignSelection {
  DesignPoints points;
  std::vector<std::string> warnings;
};

// Scan group 1's sorted covariates for the extreme values where the groups
// are comparable, place the interior points by index halving, and verify
// comparability at every returned point (error, or warning when
// cfg.comparability_warn_only is set). With cfg.quartile_points the three
// quartiles of group 1's covariates are used instead.
DesignSelection select_design_points(const PairedSample& s1, const PairedSample& s2,
                                     const SmootherConfig& cfg);

// Location estimate over the neighborhood's outcomes; absent when fewer than
// two neighbors exist.
std::optional<double> fitted_value(const PairedSample& sample, double x0,
                                   const EstimatorSpec& spec, const SmootherConfig& cfg);

// fitted_value at each grid point.
std::vector<std::optional<double>> smoother_curve(const PairedSample& sample,
                                                  std::span<const double> grid,
                                                  const EstimatorSpec& spec,
                                                  const SmootherConfig& cfg);

}  // namespace rancova
