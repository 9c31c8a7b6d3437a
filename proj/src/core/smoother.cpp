#include "core/smoother.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "core/errors.hpp"
#include "core/robust.hpp"

namespace rancova {

namespace {

bool within(double xi, double x0, double span, double madn_x) {
  return std::fabs(xi - x0) <= span * madn_x;
}

std::string format_point(double x) {
  std::ostringstream out;
  out << x;
  return out.str();
}

}  // namespace

std::vector<std::size_t> neighborhood(std::span<const double> xs, double x0,
                                      double span, double madn_x) {
  if (!(span > 0.0)) fail(errc::invalid_argument, "neighborhood", "span must be positive");
  if (!(madn_x >= 0.0)) fail(errc::invalid_argument, "neighborhood", "MADN must be nonnegative");
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (within(xs[i], x0, span, madn_x)) idx.push_back(i);
  }
  return idx;
}

std::size_t neighborhood_count(std::span<const double> xs, double x0, double span,
                               double madn_x) {
  if (!(span > 0.0)) fail(errc::invalid_argument, "neighborhood", "span must be positive");
  if (!(madn_x >= 0.0)) fail(errc::invalid_argument, "neighborhood", "MADN must be nonnegative");
  std::size_t count = 0;
  for (double xi : xs) {
    if (within(xi, x0, span, madn_x)) ++count;
  }
  return count;
}

std::size_t neighborhood_count(const PairedSample& sample, double x0,
                               const SmootherConfig& cfg) {
  return neighborhood_count(sample.x, x0, cfg.span, madn(sample.x));
}

bool comparable(const PairedSample& s1, const PairedSample& s2, double x0,
                const SmootherConfig& cfg) {
  const auto m = static_cast<std::size_t>(cfg.min_neighbors);
  return neighborhood_count(s1, x0, cfg) >= m && neighborhood_count(s2, x0, cfg) >= m;
}

DesignSelection select_design_points(const PairedSample& s1, const PairedSample& s2,
                                     const SmootherConfig& cfg) {
  s1.validate();
  s2.validate();
  cfg.validate();

  DesignSelection selection;
  const double madn1 = madn(s1.x);
  const double madn2 = madn(s2.x);
  const auto m = static_cast<std::size_t>(cfg.min_neighbors);

  auto counts_at = [&](double x0) {
    return std::pair<std::size_t, std::size_t>{
        neighborhood_count(s1.x, x0, cfg.span, madn1),
        neighborhood_count(s2.x, x0, cfg.span, madn2)};
  };

  if (cfg.quartile_points) {
    if (s1.size() < 4) {
      fail(errc::insufficient_data, "design-points",
           "quartile points need at least 4 covariates in group 1");
    }
    const auto [q1, q3] = ideal_fourths(s1.x);
    selection.points.values = {q1, median(s1.x), q3};
  } else {
    std::vector<double> xs1(s1.x.begin(), s1.x.end());
    std::stable_sort(xs1.begin(), xs1.end());
    const std::size_t n1 = xs1.size();

    std::vector<bool> ok(n1);
    for (std::size_t i = 0; i < n1; ++i) {
      const auto [c1, c2] = counts_at(xs1[i]);
      ok[i] = c1 >= m && c2 >= m;
    }

    std::size_t i1 = 0;
    while (i1 < n1 && !ok[i1]) ++i1;
    if (i1 == n1) {
      fail(errc::not_comparable, "design-points",
           "no covariate value has at least " + std::to_string(m) +
               " neighbors in both groups");
    }
    std::size_t i5 = n1 - 1;
    while (!ok[i5]) --i5;

    if (i5 - i1 < 4) {
      fail(errc::insufficient_data, "design-points",
           "fewer than 5 sorted covariate positions between the first and last "
           "comparable values");
    }

    const std::size_t i3 = (i1 + i5) / 2;
    const std::size_t i2 = (i1 + i3) / 2;
    const std::size_t i4 = (i3 + i5) / 2;
    selection.points.source_indices = {i1, i2, i3, i4, i5};
    for (std::size_t idx : selection.points.source_indices) {
      selection.points.values.push_back(xs1[idx]);
    }

    const auto distinct = std::set<double>(selection.points.values.begin(),
                                           selection.points.values.end());
    if (distinct.size() < selection.points.values.size()) {
      selection.warnings.push_back(
          "design points are not all distinct (tied covariate values)");
    }
  }

  std::vector<std::string> failing;
  for (double x0 : selection.points.values) {
    const auto [c1, c2] = counts_at(x0);
    if (c1 < m || c2 < m) {
      failing.push_back(format_point(x0) + " (N1=" + std::to_string(c1) +
                        ", N2=" + std::to_string(c2) + ")");
    }
  }
  if (!failing.empty()) {
    std::string detail = "design points fail the comparability rule: ";
    for (std::size_t i = 0; i < failing.size(); ++i) {
      if (i > 0) detail += ", ";
      detail += failing[i];
    }
    if (cfg.comparability_warn_only) {
      selection.warnings.push_back(detail);
    } else {
      fail(errc::not_comparable, "design-points", detail);
    }
  }

  return selection;
}

std::optional<double> fitted_value(const PairedSample& sample, double x0,
                                   const EstimatorSpec& spec, const SmootherConfig& cfg) {
  const auto idx = neighborhood(sample.x, x0, cfg.span, madn(sample.x));
  if (idx.size() < 2) return std::nullopt;
  std::vector<double> ys;
  ys.reserve(idx.size());
  for (std::size_t i : idx) ys.push_back(sample.y[i]);
  return apply_estimator(ys, spec);
}

std::vector<std::optional<double>> smoother_curve(const PairedSample& sample,
                                                  std::span<const double> grid,
                                                  const EstimatorSpec& spec,
                                                  const SmootherConfig& cfg) {
  std::vector<std::optional<double>> fits;
  fits.reserve(grid.size());
  const double scale = madn(sample.x);
  for (double x0 : grid) {
    const auto idx = neighborhood(sample.x, x0, cfg.span, scale);
    if (idx.size() < 2) {
      fits.emplace_back(std::nullopt);
      continue;
    }
    std::vector<double> ys;
    ys.reserve(idx.size());
    for (std::size_t i : idx) ys.push_back(sample.y[i]);
    fits.emplace_back(apply_estimator(ys, spec));
  }
  return fits;
}

}  // namespace rancova
